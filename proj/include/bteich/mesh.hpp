/*
 * Copyright 2026 the bteich authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy at http://www.apache.org/licenses/LICENSE-2.0
 */
#pragma once

#include <array>
#include <vector>

#include "bteich/periods.hpp"
#include "bteich/surface.hpp"

namespace bteich {

/// Triangulated closed surface.
///
/// Torus: uniform grid on the fundamental parallelogram with identified edges;
/// a single TorusPlane chart, per-face corner coordinates unwrapped to the
/// universal cover.
///
/// Hyperelliptic: two planar sheets over an annulus-with-holes glued along the
/// branch cuts, u-chart polar patches over each branch point (the branch point
/// is the patch center) and over infinity. Faces live in exactly one chart;
/// corner coordinates are cached per face.
struct TriangleMesh {
    SurfaceModel model = SurfaceModel::torus({0.0, 1.0});

    std::vector<ChartId> vchart;  ///< home chart per vertex
    std::vector<cplx> vpos;       ///< position in the home chart
    std::vector<std::array<int, 3>> faces;
    std::vector<ChartId> fchart;
    std::vector<std::array<cplx, 3>> fcoord; ///< corner coords in the face chart

    /// bank-pair gluings realized by construction (cut-vertex copies)
    std::vector<std::pair<int, int>> identifications;

    int num_vertices() const { return int(vchart.size()); }
    int num_faces() const { return int(faces.size()); }
    int euler_characteristic() const;
    /// true when every edge is shared by exactly two faces
    bool is_closed_manifold() const;

    /// x-plane coordinate of a vertex; nullopt over infinity
    std::optional<cplx> vertex_base_coord(int v) const;
};

TriangleMesh build_mesh(const SurfaceModel& model, int resolution);

} // namespace bteich
