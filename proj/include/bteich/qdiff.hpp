/*
 * Copyright 2026 the bteich authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy at http://www.apache.org/licenses/LICENSE-2.0
 */
#pragma once

#include <Eigen/Dense>

#include "bteich/canmetric.hpp"
#include "bteich/quadrature.hpp"
#include "bteich/surface.hpp"

namespace bteich {

/// Holomorphic quadratic differential as coefficients against the fixed basis:
/// torus: {dz^2}; genus g >= 2 (hyperelliptic): {x^j dx^2/y^2, j = 0..2g-4}...
/// for genus 2 the monomial basis {dx^2/y^2, x dx^2/y^2, x^2 dx^2/y^2}
/// (dimension 3g-3 = 3).
struct QuadDiff {
    Eigen::VectorXcd coeffs;
};

/// dimension of QD(Sigma): 1 for the torus, 3g-3 for genus g >= 2
int qd_dimension(const SurfaceModel& model);

/// chart coefficient of basis element j at p (the dz^2 coefficient in
/// p's chart; includes the chart Jacobian factor (dx/dz)^2).
cplx qd_basis_value(const SurfaceModel& model, int j, const SurfacePoint& p);

cplx qd_value(const SurfaceModel& model, const QuadDiff& phi, const SurfacePoint& p);

/// L2-Bergman inner product <phi, psi> = int phi conj(psi) / rho_B
cplx bergman_inner(const QuadDiff& phi, const QuadDiff& psi, const SurfaceModel& model,
                   const CanonicalMetric& rho, const QuadratureGrid& grid);

/// Gram matrix of the full basis under the Bergman pairing
CMat bergman_gram(const SurfaceModel& model, const CanonicalMetric& rho,
                  const QuadratureGrid& grid);

/// L1 norm int |phi| over the surface (|phi| integrates as an area density)
double l1_norm(const QuadDiff& phi, const SurfaceModel& model, const QuadratureGrid& grid);

/// max over probe points of |dbar phi| / max |phi|, estimated by circle
/// averages of the chart coefficient (machine-zero for holomorphic input).
double dbar_residual(const QuadDiff& phi, const SurfaceModel& model,
                     const QuadratureGrid& grid);

/// overload for sampled chart data: values F(p_i) at the probe points with a
/// user-supplied evaluator (used for Hopf fields sampled from maps).
double dbar_residual_sampled(const SurfaceModel& model,
                             const std::function<cplx(const SurfacePoint&)>& value,
                             const std::vector<SurfacePoint>& probes, double probe_radius);

} // namespace bteich
