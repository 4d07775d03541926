/*
 * Copyright 2026 the bteich authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy at http://www.apache.org/licenses/LICENSE-2.0
 */
#include "bteich/periods.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bteich/quadrules.hpp"

namespace bteich {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double seg_dist(cplx z, cplx a, cplx b) {
    cplx ab = b - a;
    double t = std::clamp((std::conj(ab) * (z - a)).real() / std::norm(ab), 0.0, 1.0);
    return std::abs(z - (a + t * ab));
}

int seg_cross_count(const std::vector<cplx>& poly, cplx a, cplx b) {
    int n = 0;
    cplx d = b - a;
    for (size_t i = 0; i + 1 < poly.size(); ++i) {
        double s1 = ((poly[i] - a) / d).imag();
        double s2 = ((poly[i + 1] - a) / d).imag();
        if (s1 * s2 < 0.0) {
            double t = s1 / (s1 - s2);
            double u = ((poly[i] + t * (poly[i + 1] - poly[i]) - a) / d).real();
            if (u > 0.0 && u < 1.0) ++n;
        }
    }
    return n;
}

bool segments_intersect(cplx a1, cplx b1, cplx a2, cplx b2) {
    auto cross = [](cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); };
    double d1 = cross(b1 - a1, a2 - a1), d2 = cross(b1 - a1, b2 - a1);
    double d3 = cross(b2 - a2, a1 - a2), d4 = cross(b2 - a2, b1 - a2);
    return d1 * d2 < 0 && d3 * d4 < 0;
}

} // namespace

cplx CutSystem::point_on(int idx, double f, double scale) const {
    if (idx < int(pairs.size())) {
        auto [a, b] = pairs[idx];
        return a + f * (b - a);
    }
    return ray_org + ray_dir * f * scale;
}

std::vector<int> CutSystem::cross_counts(const std::vector<cplx>& poly, double far_len) const {
    std::vector<int> out;
    for (auto& [a, b] : pairs) out.push_back(seg_cross_count(poly, a, b));
    if (odd) out.push_back(seg_cross_count(poly, ray_org, ray_org + ray_dir * far_len));
    return out;
}

CutSystem make_cut_system(const SurfaceModel& model) {
    const auto& bp = model.branch_points();
    const cplx c = model.centroid();
    const double scale = model.scale();
    std::vector<cplx> s(bp);

    // collinear configurations: sort along the common line
    cplx dir = 0.0;
    double best = 0.0;
    for (cplx b : bp) {
        if (std::abs(b - c) > best) {
            best = std::abs(b - c);
            dir = (b - c) / std::abs(b - c);
        }
    }
    bool collinear = true;
    for (cplx b : bp)
        if (std::abs(((b - c) / dir).imag()) > 1e-12 * std::max(1.0, scale)) collinear = false;

    if (collinear) {
        std::sort(s.begin(), s.end(), [&](cplx a, cplx b) {
            return ((a - c) / dir).real() < ((b - c) / dir).real();
        });
    } else {
        std::sort(s.begin(), s.end(), [&](cplx a, cplx b) {
            auto key = [&](cplx z) {
                cplx d = z - c;
                double ang = std::abs(d) > 0 ? std::arg(d) : 0.0;
                if (ang < 0) ang += kTwoPi;
                return std::make_pair(ang, std::abs(d));
            };
            return key(a) < key(b);
        });
    }

    CutSystem cs;
    cs.sorted = s;
    cs.odd = s.size() % 2 == 1;
    for (size_t i = 0; i + 1 < s.size(); i += 2) cs.pairs.emplace_back(s[i], s[i + 1]);
    if (cs.odd) {
        cs.ray_org = s.back();
        cplx d = s.back() - c;
        cs.ray_dir = std::abs(d) > 1e-14 * scale ? d / std::abs(d) : cplx(1, 0);
    }

    // degeneracy checks: crossing cuts, or a branch point on a foreign cut
    const double tol = 1e-9 * std::max(1.0, scale);
    const double far = 4.0 * scale + 4.0;
    std::vector<std::pair<cplx, cplx>> segs(cs.pairs);
    if (cs.odd) segs.emplace_back(cs.ray_org, cs.ray_org + cs.ray_dir * far);
    for (size_t i = 0; i < segs.size(); ++i)
        for (size_t j = i + 1; j < segs.size(); ++j)
            if (segments_intersect(segs[i].first, segs[i].second, segs[j].first, segs[j].second))
                throw DegenerateCuts("branch cuts intersect");
    for (cplx b : bp)
        for (auto& [a0, b0] : segs) {
            if (std::abs(b - a0) < tol || std::abs(b - b0) < tol) continue;
            if (seg_dist(b, a0, b0) < tol)
                throw DegenerateCuts("branch point lies on a foreign cut");
        }
    return cs;
}

cplx Contour::at(double t) const {
    double th = kTwoPi * t;
    return center + axis * cplx(a * std::cos(th), b * std::sin(th));
}

cplx Contour::velocity(double t) const {
    double th = kTwoPi * t;
    return axis * cplx(-a * std::sin(th), b * std::cos(th)) * kTwoPi;
}

namespace {

std::vector<cplx> sample_contour(const Contour& c, int n, double t0) {
    std::vector<cplx> poly(n + 1);
    for (int i = 0; i <= n; ++i) poly[i] = c.at(t0 + double(i) / n);
    return poly;
}

double min_branch_dist(const std::vector<cplx>& poly, const std::vector<cplx>& bp) {
    double d = 1e300;
    for (cplx z : poly)
        for (cplx b : bp) d = std::min(d, std::abs(z - b));
    return d;
}

} // namespace

HomologyBasis homology_basis(const SurfaceModel& model) {
    if (model.is_torus())
        throw ChartMismatch("homology_basis contours are defined for hyperelliptic models");
    HomologyBasis hb;
    hb.cuts = make_cut_system(model);
    const auto& bp = model.branch_points();
    const int g = model.genus();
    const double scale = model.scale();
    const double far = 4.0 * scale + 4.0;

    for (int i = 0; i < g; ++i) {
        auto [a, b] = hb.cuts.pairs[i];
        cplx m = 0.5 * (a + b);
        double L = std::abs(b - a);
        cplx e = (b - a) / L;
        double dmin = 1e300;
        for (cplx z : bp) {
            if (std::abs(z - a) < 1e-14 || std::abs(z - b) < 1e-14) continue;
            dmin = std::min({dmin, seg_dist(z, a, b)});
        }
        double delta = 0.5 * dmin;
        double mu = std::min(std::asinh(2 * delta / L), std::acosh(1 + 2 * delta / L));
        Contour ell{m, e, 0.5 * L * std::cosh(mu), 0.5 * L * std::sinh(mu)};
        // validate: encircles exactly its own two branch points
        auto poly = sample_contour(ell, 720, 0.125);
        auto cc = hb.cuts.cross_counts(poly, far);
        for (int k = 0; k < hb.cuts.ncuts(); ++k)
            if (cc[k] != 0) throw DegenerateCuts("A-cycle contour crosses a cut");
        hb.a_cycles.push_back(ell);
    }

    const int ref = hb.cuts.ncuts() - 1;
    for (int i = 0; i < g; ++i) {
        bool found = false;
        for (double fi : {0.5, 0.35, 0.65, 0.25, 0.75}) {
            for (double fr : {0.5, 0.35, 0.65, 0.25, 0.75}) {
                for (double sag : {0.25, 0.15, 0.4, 0.6, 0.8}) {
                    cplx qi = hb.cuts.point_on(i, fi, scale);
                    cplx qr = hb.cuts.point_on(ref, fr, scale);
                    double L = std::abs(qr - qi);
                    if (L < 1e-12) continue;
                    cplx e = (qr - qi) / L;
                    Contour cand{0.5 * (qi + qr), e, 0.5 * L, sag * L};
                    auto poly = sample_contour(cand, 720, 0.125);
                    auto cc = hb.cuts.cross_counts(poly, far);
                    bool ok = true;
                    for (int k = 0; k < hb.cuts.ncuts(); ++k) {
                        int want = (k == i || k == ref) ? 1 : 0;
                        if (cc[k] != want) ok = false;
                    }
                    if (ok && min_branch_dist(poly, bp) > 0.05 * L) {
                        hb.b_cycles.push_back(cand);
                        found = true;
                    }
                    if (found) break;
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) throw DegenerateCuts("no valid B-cycle contour found");
    }
    hb.b_orientation.assign(g, 1);
    return hb;
}

Eigen::VectorXcd integrate_raw_periods(const SurfaceModel& model, const Contour& c,
                                       int genus, int panels) {
    const auto& gl = gauss_legendre(12);
    const int nseed = std::max(800, 16 * panels);
    // dense continuation of y along the contour
    std::vector<cplx> yseed(nseed + 1);
    std::vector<cplx> xs(nseed + 1);
    for (int i = 0; i <= nseed; ++i) xs[i] = c.at(double(i) / nseed);
    yseed[0] = model.y_ref(xs[0]);
    for (int i = 1; i <= nseed; ++i) {
        cplx r = std::sqrt(model.p()(xs[i]));
        yseed[i] = (std::abs(r - yseed[i - 1]) <= std::abs(-r - yseed[i - 1])) ? r : -r;
    }
    if (std::abs(yseed[nseed] - yseed[0]) > 1e-8 * std::max(1.0, std::abs(yseed[0])))
        throw QuadratureFailure("cycle does not close on the surface");

    Eigen::VectorXcd tot = Eigen::VectorXcd::Zero(genus);
    for (int kpan = 0; kpan < panels; ++kpan) {
        double t0 = double(kpan) / panels, t1 = double(kpan + 1) / panels;
        for (size_t q = 0; q < gl.nodes.size(); ++q) {
            double t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * gl.nodes[q];
            cplx x = c.at(t);
            cplx dx = c.velocity(t);
            int si = std::clamp(int(t * nseed + 0.5), 0, nseed);
            cplx y = std::sqrt(model.p()(x));
            if (std::abs(y - yseed[si]) > std::abs(-y - yseed[si])) y = -y;
            cplx w = gl.weights[q] * 0.5 * (t1 - t0) * dx / y;
            cplx xp = 1.0;
            for (int k = 0; k < genus; ++k) {
                tot[k] += w * xp;
                xp *= x;
            }
        }
    }
    return tot;
}

PeriodData period_matrix(const SurfaceModel& model) {
    PeriodData out;
    if (model.is_torus()) {
        out.basis.C = CMat::Ones(1, 1);
        out.basis.genus = 1;
        out.pm.omega = CMat::Constant(1, 1, model.tau());
        out.pm.genus = 1;
        return out;
    }
    const int g = model.genus();
    out.homology = homology_basis(model);
    auto raw = [&](const Contour& c, int panels) {
        return integrate_raw_periods(model, c, g, panels);
    };

    CMat PA(g, g), PB(g, g), PA2(g, g), PB2(g, g);
    int panels = 48;
    const int max_panels = 1536;
    double drift = 1e300;
    while (true) {
        for (int i = 0; i < g; ++i) {
            PA.row(i) = raw(out.homology.a_cycles[i], panels).transpose();
            PB.row(i) = raw(out.homology.b_cycles[i], panels).transpose();
            PA2.row(i) = raw(out.homology.a_cycles[i], 2 * panels).transpose();
            PB2.row(i) = raw(out.homology.b_cycles[i], 2 * panels).transpose();
        }
        CMat Om1 = PB * PA.inverse();
        CMat Om2 = PB2 * PA2.inverse();
        drift = (Om1 - Om2).cwiseAbs().maxCoeff();
        if (drift < 1e-10 || panels >= max_panels) break;
        panels *= 2;
    }
    if (drift > 1e-6)
        throw QuadratureFailure("period integrals did not converge under panel refinement");

    out.PA = PA2;
    out.PB = PB2;
    CMat C = PA2.inverse();
    CMat Om = PB2 * C;

    // orientation fix: a consistent construction can come out with the
    // whole symplectic pairing negated, which flips Im(Omega).
    double sym = (Om - Om.transpose()).cwiseAbs().maxCoeff();
    if (sym > 1e-6 * std::max(1.0, Om.cwiseAbs().maxCoeff()) && g == 2) {
        for (auto signs : {std::pair{1, -1}, std::pair{-1, 1}}) {
            CMat D = CMat::Zero(g, g);
            D(0, 0) = signs.first;
            D(1, 1) = signs.second;
            CMat Omt = D * Om;
            if ((Omt - Omt.transpose()).cwiseAbs().maxCoeff() < 1e-6) {
                Om = Omt;
                out.homology.b_orientation = {signs.first, signs.second};
                break;
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (Om.imag() + Om.imag().transpose()));
    if (es.eigenvalues()(0) < 0) {
        Om = -Om;
        for (auto& s : out.homology.b_orientation) s = -s;
    }

    out.basis.C = C;
    out.basis.genus = g;
    out.pm.omega = Om;
    out.pm.genus = g;
    out.refine_drift = drift;
    out.symmetry_error = (Om - Om.transpose()).cwiseAbs().maxCoeff();

    // normalization residual: int_{A_i} omega_j = (PA * C)_{ij} = delta
    CMat I = PA2 * C;
    out.normalization_residual = (I - CMat::Identity(g, g)).cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<RMat> es2(0.5 * (Om.imag() + Om.imag().transpose()));
    if (es2.eigenvalues()(0) <= 0)
        throw QuadratureFailure("Im(Omega) is not positive definite");
    if (out.symmetry_error > 1e-6 * std::max(1.0, Om.cwiseAbs().maxCoeff()))
        throw QuadratureFailure("period matrix failed the symmetry check");
    return out;
}

} // namespace bteich
