/*
 * Copyright 2026 the bteich authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy at http://www.apache.org/licenses/LICENSE-2.0
 */
#include "bteich/surface.hpp"

#include <algorithm>
#include <cmath>

namespace bteich {

Poly Poly::from_roots(const std::vector<cplx>& roots) {
    Poly p;
    p.c = {1.0};
    for (cplx r : roots) {
        p.c.push_back(0.0);
        for (size_t i = p.c.size(); i-- > 1;) p.c[i] = p.c[i - 1];
        p.c[0] = 0.0;
        for (size_t i = 0; i + 1 < p.c.size(); ++i) p.c[i] -= r * p.c[i + 1];
    }
    return p;
}

Poly Poly::deflate(cplx r) const {
    // synthetic division by (x - r)
    Poly out;
    out.c.assign(c.size() - 1, 0.0);
    cplx carry = c.back();
    for (size_t i = c.size() - 1; i-- > 0;) {
        out.c[i] = carry;
        carry = c[i] + r * carry;
    }
    return out;
}

SurfaceModel SurfaceModel::torus(cplx tau) {
    if (!(tau.imag() > 0.0))
        throw ValidationError("flat torus requires Im(tau) > 0");
    SurfaceModel m;
    m.kind_ = SurfaceKind::FlatTorus;
    m.tau_ = tau;
    return m;
}

SurfaceModel SurfaceModel::hyperelliptic(std::vector<cplx> branch_points) {
    const size_t n = branch_points.size();
    if (n < 5)
        throw ValidationError("hyperelliptic model needs at least 5 branch points (genus >= 2)");
    double sc = 0.0;
    for (cplx b : branch_points) sc = std::max(sc, std::abs(b));
    sc = std::max(sc, 1.0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (std::abs(branch_points[i] - branch_points[j]) < 1e-12 * sc)
                throw ValidationError("branch points must be pairwise distinct");
    SurfaceModel m;
    m.kind_ = SurfaceKind::Hyperelliptic;
    m.branch_ = std::move(branch_points);
    m.finalize();
    return m;
}

void SurfaceModel::finalize() {
    const size_t n = branch_.size();
    centroid_ = 0.0;
    for (cplx b : branch_) centroid_ += b;
    centroid_ /= double(n);
    scale_ = 1e-30;
    for (cplx b : branch_) scale_ = std::max(scale_, std::abs(b - centroid_));
    gap_.resize(n);
    for (size_t i = 0; i < n; ++i) {
        double g = 1e300;
        for (size_t j = 0; j < n; ++j)
            if (j != i) g = std::min(g, std::abs(branch_[i] - branch_[j]));
        gap_[i] = g;
    }
    p_ = Poly::from_roots(branch_);
    dp_ = p_.derivative();
    d2p_ = dp_.derivative();
    q_.resize(n);
    dq_.resize(n);
    d2q_.resize(n);
    for (size_t k = 0; k < n; ++k) {
        q_[k] = p_.deflate(branch_[k]);
        dq_[k] = q_[k].derivative();
        d2q_[k] = dq_[k].derivative();
    }
    std::vector<cplx> wroots;
    for (cplx b : branch_) {
        // W(u) = prod(1 - (b-c)u): root at 1/(b-c); build from coefficient recurrence instead
        (void)b;
    }
    // W via direct expansion: prod (1 - a_k u)
    W_.c = {1.0};
    for (cplx b : branch_) {
        cplx a = b - centroid_;
        Poly next;
        next.c.assign(W_.c.size() + 1, 0.0);
        for (size_t i = 0; i < W_.c.size(); ++i) {
            next.c[i] += W_.c[i];
            next.c[i + 1] -= a * W_.c[i];
        }
        W_ = next;
    }
    dW_ = W_.derivative();
    d2W_ = dW_.derivative();
}

int SurfaceModel::genus() const {
    if (kind_ == SurfaceKind::FlatTorus) return 1;
    return int((branch_.size() - 1) / 2);
}

double SurfaceModel::inf_chart_radius() const {
    return 2.0 * scale_ + 1.0;
}

cplx SurfaceModel::y_ref(cplx x) const {
    cplx s = 1.0;
    for (cplx b : branch_) s *= std::sqrt(x - b);
    return s;
}

std::optional<cplx> SurfaceModel::base_coord(const SurfacePoint& p) const {
    switch (p.chart.kind) {
        case ChartId::Base:
            return p.z;
        case ChartId::BranchDisk:
            return branch_[p.chart.index] + p.z * p.z;
        case ChartId::InfEven:
            if (p.z == cplx(0.0)) return std::nullopt;
            return centroid_ + 1.0 / p.z;
        case ChartId::InfOdd:
            if (p.z == cplx(0.0)) return std::nullopt;
            return centroid_ + 1.0 / (p.z * p.z);
        default:
            throw ChartMismatch("torus chart has no base coordinate");
    }
}

cplx SurfaceModel::chart_coord_of_base(cplx x, const ChartId& c) const {
    switch (c.kind) {
        case ChartId::Base:
            return x;
        case ChartId::BranchDisk:
            return std::sqrt(x - branch_[c.index]);
        case ChartId::InfEven:
            return 1.0 / (x - centroid_);
        case ChartId::InfOdd:
            return std::sqrt(1.0 / (x - centroid_));
        default:
            throw ChartMismatch("torus chart");
    }
}

cplx SurfaceModel::dbase_dchart(const SurfacePoint& p) const {
    switch (p.chart.kind) {
        case ChartId::TorusPlane:
            return 1.0;
        case ChartId::Base:
            return 1.0;
        case ChartId::BranchDisk:
            return 2.0 * p.z;
        case ChartId::InfEven:
            return -1.0 / (p.z * p.z);
        case ChartId::InfOdd:
            return -2.0 / (p.z * p.z * p.z);
    }
    return 1.0;
}

} // namespace bteich
