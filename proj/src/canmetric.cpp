/*
 * Copyright 2026 the bteich authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy at http://www.apache.org/licenses/LICENSE-2.0
 */
#include "bteich/canmetric.hpp"

#include <cmath>
#include <numbers>

namespace bteich {

namespace {

/// jet of F = N / sqrt(D) given jets of N and D (branch of the root is a
/// constant factor and is irrelevant to the hermitian forms built from F).
void sqrt_quotient_jet(cplx N, cplx N1, cplx N2, cplx D, cplx D1, cplx D2, cplx root,
                       cplx& F, cplx& F1, cplx& F2) {
    F = N / root;
    F1 = (N1 - 0.5 * N * D1 / D) / root;
    F2 = (N2 - N1 * D1 / D + N * (0.75 * D1 * D1 / (D * D) - 0.5 * D2 / D)) / root;
}

} // namespace

CanonicalMetric::CanonicalMetric(SurfaceModel model, AbelianBasis basis, PeriodMatrix pm)
    : model_(std::move(model)), C_(std::move(basis.C)), omega_(std::move(pm.omega)) {
    RMat im = 0.5 * (omega_.imag() + omega_.imag().transpose());
    Minv_ = im.inverse();
}

CanonicalMetric CanonicalMetric::of(const SurfaceModel& model) {
    PeriodData pd = period_matrix(model);
    return CanonicalMetric(model, pd.basis, pd.pm);
}

CanonicalMetric CanonicalMetric::with_data(CMat C, CMat omega) const {
    return CanonicalMetric(model_, AbelianBasis{std::move(C), int(C_.cols())},
                           PeriodMatrix{std::move(omega), int(omega_.rows())});
}

void CanonicalMetric::basis_jet(const SurfacePoint& p, Eigen::VectorXcd& F,
                                Eigen::VectorXcd& F1, Eigen::VectorXcd& F2) const {
    const int g = model_.genus();
    F.resize(g);
    F1.resize(g);
    F2.resize(g);
    if (model_.is_torus()) {
        F(0) = 1.0;
        F1(0) = 0.0;
        F2(0) = 0.0;
        return;
    }
    // normalized numerators N_i(x) = sum_k C(k,i) x^k and derivatives
    auto numer = [&](cplx x, Eigen::VectorXcd& N, Eigen::VectorXcd& N1, Eigen::VectorXcd& N2) {
        Eigen::VectorXcd mono(g), dmono(g), d2mono(g);
        cplx xp = 1.0;
        for (int k = 0; k < g; ++k) {
            mono(k) = xp;
            dmono(k) = k == 0 ? cplx(0) : double(k) * std::pow(x, k - 1);
            d2mono(k) = k <= 1 ? cplx(0) : double(k) * double(k - 1) * std::pow(x, k - 2);
            xp *= x;
        }
        N = C_.transpose() * mono;
        N1 = C_.transpose() * dmono;
        N2 = C_.transpose() * d2mono;
    };

    switch (p.chart.kind) {
        case ChartId::Base: {
            cplx x = p.z;
            Eigen::VectorXcd N, N1, N2;
            numer(x, N, N1, N2);
            cplx pv = model_.p()(x), p1 = model_.dp()(x), p2 = model_.d2p()(x);
            cplx y = model_.y_ref(x);
            if (p.chart.sheet) y = -y;
            for (int i = 0; i < g; ++i)
                sqrt_quotient_jet(N(i), N1(i), N2(i), pv, p1, p2, y, F(i), F1(i), F2(i));
            return;
        }
        case ChartId::BranchDisk: {
            const int k = p.chart.index;
            cplx u = p.z;
            cplx x = model_.branch_points()[k] + u * u;
            Eigen::VectorXcd N, N1, N2;
            numer(x, N, N1, N2);
            cplx qv = model_.q(k)(x), q1 = model_.dq(k)(x), q2 = model_.d2q(k)(x);
            cplx s = std::sqrt(qv); // continuous branch within the disk chart
            for (int i = 0; i < g; ++i) {
                cplx T = 2.0 * N1(i) - N(i) * q1 / qv;
                cplx T1 = 2.0 * N2(i) - N1(i) * q1 / qv - N(i) * q2 / qv + N(i) * q1 * q1 / (qv * qv);
                F(i) = 2.0 * N(i) / s;
                F1(i) = (2.0 * u / s) * T;
                F2(i) = (2.0 / s) * (T + 2.0 * u * u * T1 - u * u * (q1 / qv) * T);
            }
            return;
        }
        case ChartId::InfEven: {
            cplx u = p.z;
            const cplx c = model_.centroid();
            // P_i(u) = sum_k C(k,i) (c u + 1)^k u^{g-1-k}
            Eigen::VectorXcd P = Eigen::VectorXcd::Zero(g), P1 = P, P2 = P;
            for (int k = 0; k < g; ++k) {
                cplx A = c * u + 1.0;
                int m = g - 1 - k;
                cplx t = std::pow(A, k) * std::pow(u, m);
                cplx t1 = double(k) * c * (k > 0 ? std::pow(A, k - 1) : 0.0) * std::pow(u, m) +
                          double(m) * std::pow(A, k) * (m > 0 ? std::pow(u, m - 1) : 0.0);
                cplx t2 = double(k) * double(k - 1) * c * c * (k > 1 ? std::pow(A, k - 2) : 0.0) * std::pow(u, m) +
                          2.0 * double(k) * c * double(m) * (k > 0 && m > 0 ? std::pow(A, k - 1) * std::pow(u, m - 1) : 0.0) +
                          double(m) * double(m - 1) * std::pow(A, k) * (m > 1 ? std::pow(u, m - 2) : 0.0);
                for (int i = 0; i < g; ++i) {
                    P(i) += C_(k, i) * t;
                    P1(i) += C_(k, i) * t1;
                    P2(i) += C_(k, i) * t2;
                }
            }
            cplx Wv = model_.W()(u), W1 = model_.dW()(u), W2 = model_.d2W()(u);
            cplx root = std::sqrt(Wv);
            double sign = p.chart.sheet ? 1.0 : -1.0;
            for (int i = 0; i < g; ++i) {
                sqrt_quotient_jet(P(i), P1(i), P2(i), Wv, W1, W2, root, F(i), F1(i), F2(i));
                F(i) *= sign;
                F1(i) *= sign;
                F2(i) *= sign;
            }
            return;
        }
        case ChartId::InfOdd: {
            cplx v = p.z;
            const cplx c = model_.centroid();
            // Q_i(v) = -2 sum_k C(k,i) (c v^2 + 1)^k v^{2(g-1-k)}
            Eigen::VectorXcd Q = Eigen::VectorXcd::Zero(g), Q1 = Q, Q2 = Q;
            for (int k = 0; k < g; ++k) {
                cplx A = c * v * v + 1.0;
                int m = 2 * (g - 1 - k);
                cplx Ak = std::pow(A, k);
                cplx Akm1 = k > 0 ? std::pow(A, k - 1) : cplx(0);
                cplx Akm2 = k > 1 ? std::pow(A, k - 2) : cplx(0);
                cplx vm = std::pow(v, m);
                cplx vm1 = m > 0 ? std::pow(v, m - 1) : cplx(0);
                cplx vm2 = m > 1 ? std::pow(v, m - 2) : cplx(0);
                cplx t = Ak * vm;
                cplx t1 = double(k) * 2.0 * c * v * Akm1 * vm + double(m) * Ak * vm1;
                cplx t2 = double(k) * 2.0 * c * Akm1 * vm + double(k) * double(k - 1) * 4.0 * c * c * v * v * Akm2 * vm +
                          2.0 * double(k) * 2.0 * c * v * Akm1 * double(m) * vm1 +
                          double(m) * double(m - 1) * Ak * vm2;
                for (int i = 0; i < g; ++i) {
                    Q(i) += -2.0 * C_(k, i) * t;
                    Q1(i) += -2.0 * C_(k, i) * t1;
                    Q2(i) += -2.0 * C_(k, i) * t2;
                }
            }
            cplx v2 = v * v;
            cplx Wv = model_.W()(v2);
            cplx W1 = model_.dW()(v2) * 2.0 * v;
            cplx W2 = model_.d2W()(v2) * 4.0 * v2 + model_.dW()(v2) * 2.0;
            cplx root = std::sqrt(Wv);
            for (int i = 0; i < g; ++i)
                sqrt_quotient_jet(Q(i), Q1(i), Q2(i), Wv, W1, W2, root, F(i), F1(i), F2(i));
            return;
        }
        default:
            throw ChartMismatch("canonical density: invalid chart for this model");
    }
}

namespace {
cplx herm(const RMat& A, const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    return (a.transpose() * A * b.conjugate())(0);
}
} // namespace

double CanonicalMetric::rho(const SurfacePoint& p) const {
    if (model_.is_torus()) return Minv_(0, 0);
    Eigen::VectorXcd F, F1, F2;
    basis_jet(p, F, F1, F2);
    return herm(Minv_, F, F).real();
}

DensityJet CanonicalMetric::jet(const SurfacePoint& p) const {
    DensityJet j;
    if (model_.is_torus()) {
        j.rho = Minv_(0, 0);
        return j;
    }
    Eigen::VectorXcd F, F1, F2;
    basis_jet(p, F, F1, F2);
    j.rho = herm(Minv_, F, F).real();
    j.rho_z = herm(Minv_, F1, F);
    j.rho_zz = herm(Minv_, F2, F);
    j.rho_zzb = herm(Minv_, F1, F1).real();
    return j;
}

double CanonicalMetric::curvature(const SurfacePoint& p) const {
    if (model_.is_torus()) return 0.0;
    Eigen::VectorXcd F, F1, F2;
    basis_jet(p, F, F1, F2);
    double uu = herm(Minv_, F, F).real();
    double vv = herm(Minv_, F1, F1).real();
    cplx uv = herm(Minv_, F, F1);
    return -2.0 * (vv * uu - std::norm(uv)) / (uu * uu * uu);
}

BranchMarking::BranchMarking(const SurfaceModel& base, std::vector<cplx> displacement)
    : base_(base), disp_(std::move(displacement)) {
    const auto& bp = base_.branch_points();
    if (disp_.size() != bp.size())
        throw ValidationError("marking displacement size must match branch point count");
    radius_.resize(bp.size());
    for (size_t k = 0; k < bp.size(); ++k) radius_[k] = 0.45 * base_.branch_gap(k);
    auto moved = moved_branch_points();
    for (size_t i = 0; i < moved.size(); ++i)
        for (size_t j = i + 1; j < moved.size(); ++j)
            if (std::abs(moved[i] - moved[j]) < 0.05 * std::min(base_.branch_gap(int(i)), base_.branch_gap(int(j))))
                throw BranchCollision("marking would collide branch points");
}

std::vector<cplx> BranchMarking::moved_branch_points() const {
    std::vector<cplx> out(base_.branch_points());
    for (size_t k = 0; k < out.size(); ++k) out[k] += disp_[k];
    return out;
}

namespace {
// C-infinity radial bump: 1 at r=0, 0 for r>=1.
double bump(double r) {
    if (r >= 1.0) return 0.0;
    if (r <= 0.0) return 1.0;
    auto h = [](double t) { return t > 0 ? std::exp(-1.0 / t) : 0.0; };
    double t = r * r;
    return h(1.0 - t) / (h(1.0 - t) + h(t));
}
double dbump(double r) { // d bump / dr
    const double h = 1e-6;
    return (bump(r + h) - bump(r - h)) / (2 * h);
}
} // namespace

cplx BranchMarking::map(cplx x) const {
    cplx out = x;
    const auto& bp = base_.branch_points();
    for (size_t k = 0; k < bp.size(); ++k) {
        double r = std::abs(x - bp[k]) / radius_[k];
        if (r < 1.0) out += disp_[k] * bump(r);
    }
    return out;
}

cplx BranchMarking::dz(cplx x) const {
    cplx out = 1.0;
    const auto& bp = base_.branch_points();
    for (size_t k = 0; k < bp.size(); ++k) {
        cplx d = x - bp[k];
        double r = std::abs(d) / radius_[k];
        if (r < 1.0 && r > 0.0)
            out += disp_[k] * dbump(r) * std::conj(d) / (2.0 * std::abs(d) * radius_[k]);
    }
    return out;
}

cplx BranchMarking::dzb(cplx x) const {
    cplx out = 0.0;
    const auto& bp = base_.branch_points();
    for (size_t k = 0; k < bp.size(); ++k) {
        cplx d = x - bp[k];
        double r = std::abs(d) / radius_[k];
        if (r < 1.0 && r > 0.0)
            out += disp_[k] * dbump(r) * d / (2.0 * std::abs(d) * radius_[k]);
    }
    return out;
}

MetricDensity MetricDensity::canonical(std::shared_ptr<const CanonicalMetric> cm) {
    MetricDensity d;
    d.model_ = std::make_shared<SurfaceModel>(cm->model());
    d.cm_ = std::move(cm);
    return d;
}

MetricDensity MetricDensity::pulled_back(std::shared_ptr<const BranchMarking> marking,
                                         std::shared_ptr<const CanonicalMetric> target) {
    MetricDensity d;
    d.model_ = std::make_shared<SurfaceModel>(marking->base());
    d.marking_ = std::move(marking);
    d.cm_ = std::move(target);
    return d;
}

MetricDensity MetricDensity::custom(const SurfaceModel& model,
                                    std::function<double(const SurfacePoint&)> fn) {
    MetricDensity d;
    d.model_ = std::make_shared<SurfaceModel>(model);
    d.fn_ = std::move(fn);
    return d;
}

double MetricDensity::eval(const SurfacePoint& p) const {
    if (fn_) return fn_(p);
    if (!marking_) return cm_->rho(p);
    // pulled-back area density: rho'(Phi(x)) Jac(Phi) |dx/dz|^2 in p's chart,
    // with the evaluation of rho' done in a well-conditioned target chart.
    const SurfaceModel& tgt = cm_->model();
    auto xopt = model_->base_coord(p);
    if (!xopt) {
        // point over infinity: the marking is the identity there
        SurfacePoint q{p.chart, p.z};
        return cm_->rho(q);
    }
    cplx x = *xopt;
    cplx xi = marking_->map(x);
    double jac = marking_->jacobian(x);
    double dxdz = std::norm(model_->dbase_dchart(p));
    // choose target chart: branch disk if close to a moved branch point
    const auto& tb = tgt.branch_points();
    for (size_t k = 0; k < tb.size(); ++k) {
        if (std::abs(xi - tb[k]) < 0.9 * tgt.branch_chart_radius(int(k))) {
            SurfacePoint q{{ChartId::BranchDisk, int(k), 0}, std::sqrt(xi - tb[k])};
            double rho_u = cm_->rho(q);
            // rho_x = rho_u |du/dx|^2 = rho_u / (4 |u|^2)
            double rx = rho_u / (4.0 * std::norm(q.z));
            return rx * jac * dxdz;
        }
    }
    SurfacePoint q{{ChartId::Base, 0, 0}, xi};
    return cm_->rho(q) * jac * dxdz;
}

double MetricDensity::curvature(const SurfacePoint& p) const {
    if (cm_ && !marking_) return cm_->curvature(p);
    if (cm_ && marking_) {
        auto xopt = model_->base_coord(p);
        if (!xopt) return cm_->curvature({p.chart, p.z});
        cplx xi = marking_->map(*xopt);
        const SurfaceModel& tgt = cm_->model();
        const auto& tb = tgt.branch_points();
        for (size_t k = 0; k < tb.size(); ++k)
            if (std::abs(xi - tb[k]) < 0.9 * tgt.branch_chart_radius(int(k)))
                return cm_->curvature({{ChartId::BranchDisk, int(k), 0}, std::sqrt(xi - tb[k])});
        return cm_->curvature({{ChartId::Base, 0, 0}, xi});
    }
    // custom density: finite differences of log rho in the chart
    const double h = 1e-4;
    auto lr = [&](cplx dzs) {
        SurfacePoint q{p.chart, p.z + dzs};
        double v = fn_(q);
        if (!(v > 0.0) || !std::isfinite(v))
            throw NumericalDifferentiationFailure("stencil left the chart or density not positive");
        return std::log(v);
    };
    double lap = (lr(h) + lr(-h) + lr(cplx(0, h)) + lr(cplx(0, -h)) - 4.0 * lr(0)) / (h * h);
    return -0.5 * lap / fn_(p);
}

double gaussian_curvature(const MetricDensity& density, const SurfacePoint& p) {
    return density.curvature(p);
}

} // namespace bteich
