/*
 * Copyright 2026 the bteich authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy at http://www.apache.org/licenses/LICENSE-2.0
 */
#include "bteich/qdiff.hpp"

#include <cmath>
#include <numbers>

namespace bteich {

int qd_dimension(const SurfaceModel& model) {
    if (model.is_torus()) return 1;
    return 3 * model.genus() - 3;
}

// Hyperelliptic basis: x^j dx^2/y^2 for j = 0..2g-2, then x^m dx^2/y for
// m = 0..g-4+1 (present only when g >= 3). All are holomorphic including at
// infinity; the dbar_residual check certifies this numerically per model.
cplx qd_basis_value(const SurfaceModel& model, int j, const SurfacePoint& p) {
    if (model.is_torus()) {
        if (j != 0) throw ValidationError("torus QD basis has a single element");
        return 1.0;
    }
    const int g = model.genus();
    const cplx c = model.centroid();
    const bool second_kind = j > 2 * g - 2;
    const int m = second_kind ? j - (2 * g - 1) : j;
    switch (p.chart.kind) {
        case ChartId::Base: {
            cplx x = p.z;
            if (!second_kind) return std::pow(x, m) / model.p()(x);
            cplx y = model.y_ref(x);
            if (p.chart.sheet) y = -y;
            return std::pow(x, m) / y;
        }
        case ChartId::BranchDisk: {
            int k = p.chart.index;
            cplx u = p.z;
            cplx x = model.branch_points()[k] + u * u;
            if (!second_kind) return 4.0 * std::pow(x, m) / model.q(k)(x);
            cplx s = std::sqrt(model.q(k)(x));
            return 4.0 * u * std::pow(x, m) / s;
        }
        case ChartId::InfEven: {
            cplx u = p.z;
            cplx A = c * u + 1.0;
            if (!second_kind)
                return std::pow(A, m) * std::pow(u, 2 * g - 2 - m) / model.W()(u);
            cplx root = std::sqrt(model.W()(u));
            double sign = p.chart.sheet ? -1.0 : 1.0;
            return sign * std::pow(A, m) * std::pow(u, g - 3 - m) / root;
        }
        case ChartId::InfOdd: {
            cplx v = p.z;
            cplx A = c * v * v + 1.0;
            cplx Wv = model.W()(v * v);
            if (!second_kind) return 4.0 * std::pow(A, m) * std::pow(v, 4 * g - 4 - 2 * m) / Wv;
            return 4.0 * std::pow(A, m) * std::pow(v, 2 * g - 5 - 2 * m) / std::sqrt(Wv);
        }
        default:
            throw ChartMismatch("QD basis: invalid chart for this model");
    }
}

cplx qd_value(const SurfaceModel& model, const QuadDiff& phi, const SurfacePoint& p) {
    cplx v = 0;
    for (int j = 0; j < phi.coeffs.size(); ++j)
        if (phi.coeffs(j) != cplx(0.0)) v += phi.coeffs(j) * qd_basis_value(model, j, p);
    return v;
}

cplx bergman_inner(const QuadDiff& phi, const QuadDiff& psi, const SurfaceModel& model,
                   const CanonicalMetric& rho, const QuadratureGrid& grid) {
    if (!(rho.model() == model)) throw ModelMismatch("metric belongs to a different model");
    if (phi.coeffs.size() != qd_dimension(model) || psi.coeffs.size() != qd_dimension(model))
        throw ModelMismatch("QuadDiff dimension does not match the model");
    auto re = integrate(grid, [&](const SurfacePoint& p) {
        cplx a = qd_value(model, phi, p), b = qd_value(model, psi, p);
        return (a * std::conj(b)).real() / rho.rho(p);
    });
    auto im = integrate(grid, [&](const SurfacePoint& p) {
        cplx a = qd_value(model, phi, p), b = qd_value(model, psi, p);
        return (a * std::conj(b)).imag() / rho.rho(p);
    });
    return {re, im};
}

CMat bergman_gram(const SurfaceModel& model, const CanonicalMetric& rho,
                  const QuadratureGrid& grid) {
    const int d = qd_dimension(model);
    CMat G(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j <= i; ++j) {
            QuadDiff a, b;
            a.coeffs = Eigen::VectorXcd::Zero(d);
            b.coeffs = Eigen::VectorXcd::Zero(d);
            a.coeffs(i) = 1.0;
            b.coeffs(j) = 1.0;
            G(i, j) = bergman_inner(a, b, model, rho, grid);
            G(j, i) = std::conj(G(i, j));
        }
    return G;
}

double l1_norm(const QuadDiff& phi, const SurfaceModel& model, const QuadratureGrid& grid) {
    if (phi.coeffs.size() != qd_dimension(model))
        throw ModelMismatch("QuadDiff dimension does not match the model");
    return integrate(grid,
                     [&](const SurfacePoint& p) { return std::abs(qd_value(model, phi, p)); });
}

namespace {

/// |dbar f| at z0 from N uniform samples on a circle of radius r:
/// the e^{+i theta} Fourier mode of f picks out the dzbar coefficient.
cplx circle_dbar(const std::function<cplx(cplx)>& f, cplx z0, double r, int N = 32) {
    cplx acc = 0;
    for (int k = 0; k < N; ++k) {
        double th = 2.0 * std::numbers::pi * k / N;
        acc += f(z0 + std::polar(r, th)) * std::polar(1.0, th);
    }
    return acc / double(N) / r;
}

} // namespace

double dbar_residual(const QuadDiff& phi, const SurfaceModel& model, const QuadratureGrid& grid) {
    // probe a subsample of grid nodes; in each node's chart run the circle test
    double maxd = 0, maxf = 0;
    const size_t stride = std::max<size_t>(1, grid.nodes.size() / 400);
    for (size_t i = 0; i < grid.nodes.size(); i += stride) {
        const SurfacePoint& p = grid.nodes[i];
        double r = 0.05;
        if (p.chart.kind == ChartId::Base) {
            // keep the probe circle away from branch points
            double d = 1e300;
            for (cplx b : model.branch_points()) d = std::min(d, std::abs(p.z - b));
            if (d < 0.3) continue;
            r = std::min(0.2, 0.25 * d);
        } else if (p.chart.kind != ChartId::TorusPlane) {
            r = 0.2 * std::max(1e-3, std::abs(p.z));
            if (std::abs(p.z) < 1e-3) r = 1e-3;
        }
        auto f = [&](cplx z) { return qd_value(model, phi, {p.chart, z}); };
        cplx db = circle_dbar(f, p.z, r);
        maxd = std::max(maxd, std::abs(db));
        maxf = std::max(maxf, std::abs(f(p.z)));
    }
    return maxf > 0 ? maxd / maxf : 0.0;
}

double dbar_residual_sampled(const SurfaceModel& model,
                             const std::function<cplx(const SurfacePoint&)>& value,
                             const std::vector<SurfacePoint>& probes, double probe_radius) {
    (void)model;
    double maxd = 0, maxf = 0;
    for (const auto& p : probes) {
        auto f = [&](cplx z) { return value({p.chart, z}); };
        cplx db = circle_dbar(f, p.z, probe_radius);
        maxd = std::max(maxd, std::abs(db));
        maxf = std::max(maxf, std::abs(f(p.z)));
    }
    return maxf > 0 ? maxd / maxf : 0.0;
}

} // namespace bteich
