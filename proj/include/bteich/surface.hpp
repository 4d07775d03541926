/*
 * Copyright 2026 the bteich authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy at http://www.apache.org/licenses/LICENSE-2.0
 */
#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "bteich/errors.hpp"

namespace bteich {

using cplx = std::complex<double>;

enum class SurfaceKind { FlatTorus, Hyperelliptic };

/// Chart atlas of a surface model.
///
/// FlatTorus: a single TorusPlane chart, coordinate z in the universal cover C,
/// lattice generated by 1 and tau.
///
/// Hyperelliptic y^2 = prod(x - b_k): Base charts are the two sheets over the
/// x-plane (coordinate x); BranchDisk charts use u with x = b_k + u^2 and cover
/// both sheets near a finite branch point; the charts at infinity use
/// u = 1/(x - c) per sheet (even degree) or v with v^2 = 1/(x - c) covering
/// both sheets (odd degree), c the branch-point centroid.
struct ChartId {
    enum Kind : int { TorusPlane = 0, Base = 1, BranchDisk = 2, InfEven = 3, InfOdd = 4 };
    Kind kind = TorusPlane;
    int index = 0; ///< branch-point index for BranchDisk
    int sheet = 0; ///< sheet tag for Base / InfEven

    friend bool operator==(const ChartId& a, const ChartId& b) {
        return a.kind == b.kind && a.index == b.index && a.sheet == b.sheet;
    }
};

struct SurfacePoint {
    ChartId chart;
    cplx z{0.0, 0.0};
};

/// Coefficients of a polynomial, ascending powers. Small degrees only.
struct Poly {
    std::vector<cplx> c;
    cplx operator()(cplx x) const {
        cplx r = 0;
        for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
        return r;
    }
    Poly derivative() const {
        Poly d;
        for (size_t i = 1; i < c.size(); ++i) d.c.push_back(double(i) * c[i]);
        if (d.c.empty()) d.c.push_back(0.0);
        return d;
    }
    static Poly from_roots(const std::vector<cplx>& roots);
    /// divide by (x - r); remainder discarded (r must be a root).
    Poly deflate(cplx r) const;
};

class SurfaceModel {
public:
    static SurfaceModel torus(cplx tau);
    static SurfaceModel hyperelliptic(std::vector<cplx> branch_points);

    SurfaceKind kind() const { return kind_; }
    int genus() const;
    bool is_torus() const { return kind_ == SurfaceKind::FlatTorus; }
    bool odd_degree() const { return kind_ == SurfaceKind::Hyperelliptic && branch_.size() % 2 == 1; }

    cplx tau() const { return tau_; }
    const std::vector<cplx>& branch_points() const { return branch_; }

    // hyperelliptic geometry
    cplx centroid() const { return centroid_; }
    double scale() const { return scale_; }
    /// min distance from branch point k to the other branch points
    double branch_gap(int k) const { return gap_[k]; }
    /// radius (in x) of the branch disk chart around b_k
    double branch_chart_radius(int k) const { return 0.45 * gap_[k]; }
    /// |x - c| beyond which the infinity charts are in use
    double inf_chart_radius() const;

    const Poly& p() const { return p_; }       ///< prod (x - b_k)
    const Poly& dp() const { return dp_; }
    const Poly& d2p() const { return d2p_; }
    const Poly& q(int k) const { return q_[k]; }   ///< p / (x - b_k)
    const Poly& dq(int k) const { return dq_[k]; }
    const Poly& d2q(int k) const { return d2q_[k]; }
    /// W(u) = prod (1 - (b_k - c) u), so p(c + 1/u) = u^{-n} W(u)
    const Poly& W() const { return W_; }
    const Poly& dW() const { return dW_; }
    const Poly& d2W() const { return d2W_; }

    /// x-coordinate of a point (any chart except TorusPlane); infinity maps to
    /// nullopt when the chart coordinate is exactly 0.
    std::optional<cplx> base_coord(const SurfacePoint& p) const;

    /// chart coordinate of the plane point x in chart `c` (Base charts return x).
    cplx chart_coord_of_base(cplx x, const ChartId& c) const;

    /// derivative dx/dz of the chart-to-base transition at the point
    cplx dbase_dchart(const SurfacePoint& p) const;

    /// principal-product branch of sqrt(p(x)); sheet s carries y = (-1)^s y_ref.
    cplx y_ref(cplx x) const;

    bool operator==(const SurfaceModel& o) const {
        return kind_ == o.kind_ && tau_ == o.tau_ && branch_ == o.branch_;
    }

private:
    SurfaceModel() = default;
    void finalize();

    SurfaceKind kind_ = SurfaceKind::FlatTorus;
    cplx tau_{0.0, 1.0};
    std::vector<cplx> branch_;
    cplx centroid_{0, 0};
    double scale_ = 1.0;
    std::vector<double> gap_;
    Poly p_, dp_, d2p_;
    std::vector<Poly> q_, dq_, d2q_;
    Poly W_, dW_, d2W_;
};

} // namespace bteich
