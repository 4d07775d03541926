/*
 * Copyright 2026 the bteich authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy at http://www.apache.org/licenses/LICENSE-2.0
 */
#pragma once

#include <functional>
#include <memory>

#include "bteich/periods.hpp"
#include "bteich/surface.hpp"

namespace bteich {

/// Value and first two chart derivatives of a conformal density rho |dz|^2.
struct DensityJet {
    double rho = 0;
    cplx rho_z{0, 0};
    cplx rho_zz{0, 0};
    double rho_zzb = 0; ///< d^2 rho / dz dzbar (real for real rho)
};

/// Canonical (Bergman) metric of a surface model, rho_B = sum_{ij}
/// (Im Omega)^{-1}_{ij} omega_i conj(omega_j), normalized so the total area
/// equals the genus. Evaluation is per chart with analytic derivatives.
class CanonicalMetric {
public:
    CanonicalMetric(SurfaceModel model, AbelianBasis basis, PeriodMatrix pm);

    /// convenience: computes the period data internally
    static CanonicalMetric of(const SurfaceModel& model);

    const SurfaceModel& model() const { return model_; }
    const CMat& omega() const { return omega_; }
    const CMat& normalization() const { return C_; }
    const RMat& im_omega_inv() const { return Minv_; }

    /// chart coefficients of the normalized Abelian basis and two derivatives
    void basis_jet(const SurfacePoint& p, Eigen::VectorXcd& F, Eigen::VectorXcd& F1,
                   Eigen::VectorXcd& F2) const;

    double rho(const SurfacePoint& p) const;
    DensityJet jet(const SurfacePoint& p) const;
    double curvature(const SurfacePoint& p) const;

    /// rebuild with an explicit (Im Omega)^{-1}; used by the basis-independence
    /// checks that transform (C, Omega) under a symplectic change of cycles.
    CanonicalMetric with_data(CMat C, CMat omega) const;

private:
    SurfaceModel model_;
    CMat C_;
    CMat omega_;
    RMat Minv_;
};

/// Smooth plane diffeomorphism moving branch points: identity outside
/// radius-R disks, the prescribed translation near each branch point,
/// bump-blended in between. Lifts to the double covers.
class BranchMarking {
public:
    BranchMarking(const SurfaceModel& base, std::vector<cplx> displacement);

    const SurfaceModel& base() const { return base_; }
    const std::vector<cplx>& displacement() const { return disp_; }
    std::vector<cplx> moved_branch_points() const;

    cplx map(cplx x) const;   ///< Phi(x)
    cplx dz(cplx x) const;    ///< d Phi / dx (Wirtinger)
    cplx dzb(cplx x) const;   ///< d Phi / d xbar
    double jacobian(cplx x) const { return std::norm(dz(x)) - std::norm(dzb(x)); }

private:
    SurfaceModel base_;
    std::vector<cplx> disp_;
    std::vector<double> radius_;
};

/// A conformal-or-area density on a surface. Canonical and pulled-back
/// densities carry exact curvature; custom densities fall back to finite
/// differences of log rho in the chart.
class MetricDensity {
public:
    static MetricDensity canonical(std::shared_ptr<const CanonicalMetric> cm);
    /// pullback of `target` under the marking; eval() is the *area* density
    /// on the base surface (integrates to the genus).
    static MetricDensity pulled_back(std::shared_ptr<const BranchMarking> marking,
                                     std::shared_ptr<const CanonicalMetric> target);
    static MetricDensity custom(const SurfaceModel& model,
                                std::function<double(const SurfacePoint&)> fn);

    double eval(const SurfacePoint& p) const;
    double curvature(const SurfacePoint& p) const;
    const SurfaceModel& model() const { return *model_; }
    bool is_canonical() const { return cm_ != nullptr && marking_ == nullptr; }
    const CanonicalMetric& canonical_metric() const { return *cm_; }

private:
    std::shared_ptr<const SurfaceModel> model_;
    std::shared_ptr<const CanonicalMetric> cm_;
    std::shared_ptr<const BranchMarking> marking_;
    std::function<double(const SurfacePoint&)> fn_;
};

double gaussian_curvature(const MetricDensity& density, const SurfacePoint& p);

} // namespace bteich
