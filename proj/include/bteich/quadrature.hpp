/*
 * Copyright 2026 the bteich authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy at http://www.apache.org/licenses/LICENSE-2.0
 */
#pragma once

#include <functional>
#include <vector>

#include "bteich/surface.hpp"

namespace bteich {

/// Nodes and positive weights for integrating area densities over the surface.
/// Densities are evaluated in the node's chart; weights are coordinate-area
/// weights, so sum_i w_i f(p_i) approximates the surface integral of f.
struct QuadratureGrid {
    std::vector<SurfacePoint> nodes;
    std::vector<double> weights;
};

/// Torus: uniform midpoint grid on the fundamental parallelogram.
/// Hyperelliptic: exact-region decomposition of the double cover — squares
/// around branch points in the u-chart (8-sector polar regions), the exterior
/// of a bounding square in the inversion chart, and a conforming tensor panel
/// grid on the remaining bulk, two sheets each.
QuadratureGrid build_quadrature(const SurfaceModel& model, int resolution);

double integrate(const QuadratureGrid& grid,
                 const std::function<double(const SurfacePoint&)>& density);

} // namespace bteich
