/*
 * Copyright 2026 the bteich authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy at http://www.apache.org/licenses/LICENSE-2.0
 */
#include "bteich/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "bteich/quadrules.hpp"

namespace bteich {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kQ = 8; // Gauss-Legendre nodes per panel direction

struct Panels1D {
    std::vector<double> nodes, weights;
};

Panels1D gl_panels(const std::vector<double>& breaks, int q) {
    const auto& gl = gauss_legendre(q);
    Panels1D out;
    for (size_t k = 0; k + 1 < breaks.size(); ++k) {
        double a = breaks[k], b = breaks[k + 1];
        for (int i = 0; i < q; ++i) {
            out.nodes.push_back(0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i]);
            out.weights.push_back(0.5 * (b - a) * gl.weights[i]);
        }
    }
    return out;
}

std::vector<double> uniform_breaks(double a, double b, int n) {
    std::vector<double> out(n + 1);
    for (int i = 0; i <= n; ++i) out[i] = a + (b - a) * i / n;
    return out;
}

/// distance from origin to an axis-aligned square boundary (half-width a)
/// in direction phi
double square_halfwidth(double phi, double a) {
    return a / std::max(std::abs(std::cos(phi)), std::abs(std::sin(phi)));
}

/// polar region r <= rmax(theta), rmax smooth inside each of `nsec` sectors;
/// per sector: tensor GL panels in (scaled radius) x angle.
template <typename RmaxFn, typename Emit>
void sector_nodes(const RmaxFn& rmax, int nsec, int nr_pan, int nth_pan, const Emit& emit) {
    const auto& gl = gauss_legendre(kQ);
    for (int sec = 0; sec < nsec; ++sec) {
        double t0 = kTwoPi * sec / nsec, t1 = kTwoPi * (sec + 1) / nsec;
        Panels1D th = gl_panels(uniform_breaks(t0, t1, nth_pan), kQ);
        Panels1D sr = gl_panels(uniform_breaks(0.0, 1.0, nr_pan), kQ);
        for (size_t a = 0; a < th.nodes.size(); ++a) {
            double R = rmax(th.nodes[a]);
            for (size_t r = 0; r < sr.nodes.size(); ++r) {
                double rad = sr.nodes[r] * R;
                cplx u = std::polar(rad, th.nodes[a]);
                double w = sr.weights[r] * sr.nodes[r] * R * R * th.weights[a];
                emit(u, w);
            }
        }
    }
    (void)gl;
}

QuadratureGrid torus_grid(const SurfaceModel& m, int n) {
    QuadratureGrid g;
    const cplx tau = m.tau();
    const double w = tau.imag() / double(n) / double(n);
    g.nodes.reserve(size_t(n) * n);
    g.weights.reserve(size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx z = (i + 0.5) / double(n) + (j + 0.5) / double(n) * tau;
            g.nodes.push_back({{ChartId::TorusPlane, 0, 0}, z});
            g.weights.push_back(w);
        }
    return g;
}

QuadratureGrid hyperelliptic_grid(const SurfaceModel& m, int n) {
    QuadratureGrid g;
    const auto& bp = m.branch_points();
    const cplx c = m.centroid();
    const int nb = int(bp.size());

    std::vector<double> half(nb);
    for (int k = 0; k < nb; ++k) half[k] = 0.3 * m.branch_gap(k);
    double R = 1.35 * m.scale() + 0.75 * *std::max_element(half.begin(), half.end());
    for (int k = 0; k < nb; ++k)
        R = std::max(R, std::abs(bp[k] - c) + 1.5 * half[k]);

    const int nr_pan = std::max(2, n / 16);
    const int nth_pan = std::max(1, n / 32);

    // branch squares in u-charts
    for (int k = 0; k < nb; ++k) {
        double a = half[k];
        sector_nodes(
            [a](double phi) { return std::sqrt(square_halfwidth(2 * phi, a)); }, 8, nr_pan,
            nth_pan, [&](cplx u, double w) {
                g.nodes.push_back({{ChartId::BranchDisk, k, 0}, u});
                g.weights.push_back(w);
            });
    }

    // exterior of the big square, inversion charts
    if (!m.odd_degree()) {
        for (int sheet = 0; sheet < 2; ++sheet) {
            sector_nodes(
                [R](double phi) { return 1.0 / square_halfwidth(std::numbers::pi - phi, R); }, 8,
                nr_pan, nth_pan, [&](cplx u, double w) {
                    g.nodes.push_back({{ChartId::InfEven, 0, sheet}, u});
                    g.weights.push_back(w);
                });
        }
    } else {
        sector_nodes(
            [R](double phi) { return 1.0 / std::sqrt(square_halfwidth(-2 * phi, R)); }, 16, nr_pan,
            nth_pan, [&](cplx v, double w) {
                g.nodes.push_back({{ChartId::InfOdd, 0, 0}, v});
                g.weights.push_back(w);
            });
    }

    // bulk: big square minus branch squares, conforming tensor panels, 2 sheets
    auto make_breaks = [&](bool imag_axis) {
        std::set<double> b{-R, R};
        for (int k = 0; k < nb; ++k) {
            double v = imag_axis ? (bp[k] - c).imag() : (bp[k] - c).real();
            for (double e : {v - half[k], v + half[k]})
                if (e > -R && e < R) b.insert(e);
        }
        std::vector<double> raw(b.begin(), b.end());
        std::vector<double> out{raw.front()};
        double hmax = 2.0 * R / std::max(8, n / 8);
        for (size_t i = 0; i + 1 < raw.size(); ++i) {
            int nsub = std::max(1, int(std::ceil((raw[i + 1] - raw[i]) / hmax)));
            for (int s = 1; s <= nsub; ++s)
                out.push_back(raw[i] + (raw[i + 1] - raw[i]) * s / nsub);
        }
        return out;
    };
    Panels1D px = gl_panels(make_breaks(false), kQ);
    Panels1D py = gl_panels(make_breaks(true), kQ);
    for (size_t iy = 0; iy < py.nodes.size(); ++iy)
        for (size_t ix = 0; ix < px.nodes.size(); ++ix) {
            cplx x = c + cplx(px.nodes[ix], py.nodes[iy]);
            bool hole = false;
            for (int k = 0; k < nb && !hole; ++k)
                hole = std::abs((x - bp[k]).real()) < half[k] && std::abs((x - bp[k]).imag()) < half[k];
            if (hole) continue;
            double w = px.weights[ix] * py.weights[iy];
            for (int sheet = 0; sheet < 2; ++sheet) {
                g.nodes.push_back({{ChartId::Base, 0, sheet}, x});
                g.weights.push_back(w);
            }
        }
    return g;
}

} // namespace

QuadratureGrid build_quadrature(const SurfaceModel& model, int resolution) {
    if (resolution < 8) throw ResolutionTooLow("quadrature resolution must be >= 8");
    if (model.is_torus()) return torus_grid(model, resolution);
    return hyperelliptic_grid(model, resolution);
}

double integrate(const QuadratureGrid& grid,
                 const std::function<double(const SurfacePoint&)>& density) {
    // pairwise summation for an evaluation-order-independent result
    const size_t n = grid.nodes.size();
    std::vector<double> terms(n);
    for (size_t i = 0; i < n; ++i) {
        double v = density(grid.nodes[i]) * grid.weights[i];
        if (!std::isfinite(v)) throw NonFiniteDensity("density evaluated to a non-finite value");
        terms[i] = v;
    }
    std::function<double(size_t, size_t)> sum = [&](size_t lo, size_t hi) -> double {
        if (hi - lo <= 8) {
            double s = 0;
            for (size_t i = lo; i < hi; ++i) s += terms[i];
            return s;
        }
        size_t mid = lo + (hi - lo) / 2;
        return sum(lo, mid) + sum(mid, hi);
    };
    return n ? sum(0, n) : 0.0;
}

} // namespace bteich
