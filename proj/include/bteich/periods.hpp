/*
 * Copyright 2026 the bteich authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy at http://www.apache.org/licenses/LICENSE-2.0
 */
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bteich/surface.hpp"

namespace bteich {

using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;

/// Branch-cut system: branch points sorted (argument about the centroid,
/// ties by modulus; collinear configurations sorted along their common line),
/// consecutive points paired into straight cuts. Odd models get a final cut
/// from the last point towards infinity.
struct CutSystem {
    std::vector<cplx> sorted;            ///< sorted branch points
    std::vector<std::pair<cplx, cplx>> pairs; ///< finite cuts
    bool odd = false;
    cplx ray_org{0, 0}, ray_dir{1, 0};   ///< infinity cut (odd models)

    int ncuts() const { return int(pairs.size()) + (odd ? 1 : 0); }
    /// interior point of cut `idx` at fraction f (ray: distance f * scale)
    cplx point_on(int idx, double f, double scale) const;
    /// transversal crossing counts of a closed polyline against every cut
    std::vector<int> cross_counts(const std::vector<cplx>& poly, double far_len) const;
};

CutSystem make_cut_system(const SurfaceModel& model);

/// A closed analytic contour in the x-plane, with the starting y-branch fixed
/// by the principal-product reference at the start point.
struct Contour {
    cplx center, axis;  ///< ellipse: center + axis*(a cos th + i b sin th)
    double a = 1, b = 1;
    cplx at(double t) const;      // t in [0,1)
    cplx velocity(double t) const;
};

struct HomologyBasis {
    CutSystem cuts;
    std::vector<Contour> a_cycles, b_cycles;
    std::vector<int> b_orientation; ///< +-1 applied after the symmetry fix
};

HomologyBasis homology_basis(const SurfaceModel& model);

struct AbelianBasis {
    // normalized forms omega_j = sum_k C(k,j) x^k dx / y (hyperelliptic)
    // or omega = dz (torus, C = [1]).
    CMat C;
    int genus = 1;
};

struct PeriodMatrix {
    CMat omega;
    int genus = 1;
};

/// integrate the raw forms x^k dx/y, k=0..g-1, along a contour with
/// analytic continuation of y; panels doubled until converged.
Eigen::VectorXcd integrate_raw_periods(const SurfaceModel& model, const Contour& c,
                                       int genus, int panels);

/// Full period computation: raw A/B periods, normalization C = PA^{-1},
/// Omega = PB * PA^{-1}, orientation fix, Riemann-relation validation.
struct PeriodData {
    AbelianBasis basis;
    PeriodMatrix pm;
    HomologyBasis homology;
    CMat PA, PB; ///< raw period matrices of x^k dx/y
    double normalization_residual = 0; ///< max |int_{A_i} omega_j - delta_ij|
    double symmetry_error = 0;
    double refine_drift = 0; ///< max |Omega - Omega(half panels)|
};

PeriodData period_matrix(const SurfaceModel& model);

} // namespace bteich
