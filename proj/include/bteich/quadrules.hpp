/*
 * Copyright 2026 the bteich authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy at http://www.apache.org/licenses/LICENSE-2.0
 */
#pragma once

#include <vector>

namespace bteich {

struct GaussRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

/// Gauss-Legendre nodes/weights (Newton on Legendre polynomials), cached per n.
const GaussRule& gauss_legendre(int n);

/// Strang 6-point triangle rule, degree 4. Barycentric coordinates and weights
/// normalized to sum 1 on the reference triangle.
struct TriRule {
    static constexpr int n = 6;
    double bary[6][3];
    double w[6];
};
const TriRule& tri_rule_deg4();

} // namespace bteich
