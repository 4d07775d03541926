/*
 * Copyright 2026 the bteich authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy at http://www.apache.org/licenses/LICENSE-2.0
 */
#include "bteich/quadrules.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace bteich {

namespace {

GaussRule compute_gl(int n) {
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1 - x * x) * dp * dp);
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

} // namespace

const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gl(n)).first;
    return it->second;
}

const TriRule& tri_rule_deg4() {
    static const TriRule r = [] {
        TriRule t;
        const double a = 0.816847572980459, b = 0.091576213509771;
        const double c = 0.108103018168070, d = 0.445948490915965;
        const double w1 = 0.109951743655322, w2 = 0.223381589678011;
        double bary[6][3] = {{a, b, b}, {b, a, b}, {b, b, a}, {c, d, d}, {d, c, d}, {d, d, c}};
        double w[6] = {w1, w1, w1, w2, w2, w2};
        for (int i = 0; i < 6; ++i) {
            for (int j = 0; j < 3; ++j) t.bary[i][j] = bary[i][j];
            t.w[i] = w[i];
        }
        return t;
    }();
    return r;
}

} // namespace bteich
