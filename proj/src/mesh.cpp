/*
 * Copyright 2026 the bteich authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy at http://www.apache.org/licenses/LICENSE-2.0
 */
#include "bteich/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include <boost/polygon/voronoi.hpp>

namespace bteich {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int euler_of(const std::vector<std::array<int, 3>>& faces, int nv) {
    std::set<std::pair<int, int>> edges;
    for (const auto& f : faces)
        for (int i = 0; i < 3; ++i)
            edges.insert(std::minmax(f[i], f[(i + 1) % 3]));
    return nv - int(edges.size()) + int(faces.size());
}

// ---------- torus ----------

TriangleMesh torus_mesh(const SurfaceModel& m, int n) {
    TriangleMesh mesh;
    mesh.model = m;
    const cplx tau = m.tau();
    auto vid = [n](int i, int j) { return (i % n) * n + (j % n); };
    auto pos = [&](int i, int j) { return double(i) / n + double(j) / n * tau; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            mesh.vchart.push_back({ChartId::TorusPlane, 0, 0});
            mesh.vpos.push_back(pos(i, j));
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            // two triangles per cell; corner coords unwrapped (not reduced mod lattice)
            mesh.faces.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
            mesh.fcoord.push_back({pos(i, j), pos(i + 1, j), pos(i + 1, j + 1)});
            mesh.fchart.push_back({ChartId::TorusPlane, 0, 0});
            mesh.faces.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
            mesh.fcoord.push_back({pos(i, j), pos(i + 1, j + 1), pos(i, j + 1)});
            mesh.fchart.push_back({ChartId::TorusPlane, 0, 0});
        }
    return mesh;
}

// ---------- hyperelliptic ----------

struct PlanarPoint {
    cplx z;
    int cut = -1; ///< chain id when the point lies on a cut
};

double seg_clearance(cplx z, cplx a, cplx b) {
    cplx ab = b - a;
    double t = std::clamp((std::conj(ab) * (z - a)).real() / std::norm(ab), 0.0, 1.0);
    return std::abs(z - (a + t * ab));
}

/// Delaunay triangles of a planar point set via the boost voronoi diagram
/// (integer-snapped input, robust and deterministic).
std::vector<std::array<int, 3>> delaunay(const std::vector<cplx>& pts, double span) {
    using boost::polygon::voronoi_diagram;
    std::vector<boost::polygon::point_data<int>> ip;
    const double s = 1.6e8 / span;
    ip.reserve(pts.size());
    for (cplx z : pts)
        ip.emplace_back(int(std::llround(z.real() * s)), int(std::llround(z.imag() * s)));
    voronoi_diagram<double> vd;
    boost::polygon::construct_voronoi(ip.begin(), ip.end(), &vd);
    std::set<std::array<int, 3>> tris;
    for (const auto& vert : vd.vertices()) {
        // incident cells of a voronoi vertex = delaunay simplex (>=3 if cocircular)
        std::vector<int> cells;
        const auto* e = vert.incident_edge();
        const auto* start = e;
        do {
            cells.push_back(int(e->cell()->source_index()));
            e = e->rot_next();
        } while (e != start);
        for (size_t k = 1; k + 1 < cells.size(); ++k) {
            std::array<int, 3> t{cells[0], cells[k], cells[k + 1]};
            std::array<int, 3> key = t;
            std::sort(key.begin(), key.end());
            if (key[0] == key[1] || key[1] == key[2]) continue;
            // orient consistently ccw
            cplx a = pts[t[0]], b = pts[t[1]], c = pts[t[2]];
            if (((b - a) * std::conj(c - a)).imag() > 0) std::swap(t[1], t[2]);
            if (tris.count({key[0], key[1], key[2]}) == 0) {
                tris.insert({key[0], key[1], key[2]});
            }
        }
    }
    // rebuild oriented list from the unique key set using positions
    std::vector<std::array<int, 3>> out;
    for (auto key : tris) {
        cplx a = pts[key[0]], b = pts[key[1]], c = pts[key[2]];
        double orient = ((b - a) * std::conj(c - a)).imag();
        if (std::abs(orient) < 1e-18) continue;
        if (orient > 0)
            out.push_back({key[0], key[2], key[1]});
        else
            out.push_back(key);
    }
    return out;
}

int side_of(cplx z, cplx a, cplx b) {
    double s = ((z - a) / (b - a)).imag();
    return s > 0 ? 1 : -1;
}

struct HyperBuilder {
    const SurfaceModel& model;
    int res;
    TriangleMesh mesh;
    CutSystem cuts;

    cplx c;
    double scale, Rm, h_out, h_in;
    std::vector<double> rk;
    std::vector<int> nk;
    std::vector<std::vector<int>> bring; // planar ring indices per branch point
    std::vector<int> oring;
    std::vector<std::vector<int>> chains;
    std::vector<std::pair<cplx, cplx>> chain_seg;
    std::vector<cplx> P; // planar points
    std::vector<int> cut_of; // planar index -> chain id (-1 none)
    std::map<std::pair<int, int>, int> vid; // (planar, tag) -> surface vertex; tag: 0/1 sheet, 2/3 banks

    explicit HyperBuilder(const SurfaceModel& m, int r) : model(m), res(r), cuts(make_cut_system(m)) {
        mesh.model = m;
        c = m.centroid();
        scale = std::max(m.scale(), 1.0);
        Rm = 2.6 * scale + 1.0;
        h_out = 2.0 * Rm / res;
        h_in = 3.2 * scale / res;
    }

    int newv(ChartId ch, cplx pos) {
        mesh.vchart.push_back(ch);
        mesh.vpos.push_back(pos);
        return int(mesh.vpos.size()) - 1;
    }

    void add_face(ChartId ch, std::array<int, 3> f, std::array<cplx, 3> co) {
        mesh.faces.push_back(f);
        mesh.fchart.push_back(ch);
        mesh.fcoord.push_back(co);
    }

    void build_planar_points() {
        const auto& bp = model.branch_points();
        const int nbp = int(bp.size());
        rk.resize(nbp);
        nk.resize(nbp);
        // incident cut direction per branch point
        std::vector<cplx> inc(nbp);
        for (auto& [a, b] : cuts.pairs) {
            int ia = -1, ib = -1;
            for (int k = 0; k < nbp; ++k) {
                if (std::abs(bp[k] - a) < 1e-14) ia = k;
                if (std::abs(bp[k] - b) < 1e-14) ib = k;
            }
            inc[ia] = (b - a) / std::abs(b - a);
            inc[ib] = (a - b) / std::abs(a - b);
        }
        int iray = -1;
        if (cuts.odd) {
            for (int k = 0; k < nbp; ++k)
                if (std::abs(bp[k] - cuts.ray_org) < 1e-14) iray = k;
            inc[iray] = cuts.ray_dir;
        }
        // branch rings
        bring.assign(nbp, {});
        for (int k = 0; k < nbp; ++k) {
            rk[k] = 0.38 * model.branch_gap(k);
            int n = int(std::ceil(kTwoPi * rk[k] / h_in));
            n += (4 - n % 4) % 4;
            n = std::max(n, 12);
            nk[k] = n;
            double th0 = std::arg(inc[k]);
            for (int j = 0; j < n; ++j) {
                bring[k].push_back(int(P.size()));
                P.push_back(bp[k] + std::polar(rk[k], th0 + kTwoPi * j / n));
            }
        }
        // outer ring
        int nout = int(std::ceil(kTwoPi * Rm / h_out));
        nout += (4 - nout % 4) % 4;
        double th_out = cuts.odd ? std::arg(cuts.ray_dir) : 0.0;
        for (int j = 0; j < nout; ++j) {
            oring.push_back(int(P.size()));
            P.push_back(c + std::polar(Rm, th_out + kTwoPi * j / nout));
        }
        // cut chains between aligned ring vertices
        auto add_chain = [&](int v0, int v1, bool graded) {
            cplx p0 = P[v0], p1 = P[v1];
            double L = std::abs(p1 - p0);
            std::vector<int> ch{v0};
            if (!graded) {
                int n = std::max(1, int(std::ceil(L / h_in)));
                for (int j = 1; j < n; ++j) {
                    ch.push_back(int(P.size()));
                    P.push_back(p0 + (p1 - p0) * double(j) / n);
                }
            } else {
                double t = 0.0;
                while (true) {
                    double hloc = h_in + (h_out - h_in) * t;
                    t += hloc / L;
                    if (t >= 1.0 - 0.5 * h_out / L) break;
                    ch.push_back(int(P.size()));
                    P.push_back(p0 + (p1 - p0) * t);
                }
            }
            ch.push_back(v1);
            chains.push_back(ch);
            chain_seg.emplace_back(p0, p1);
        };
        for (size_t ci = 0; ci < cuts.pairs.size(); ++ci) {
            auto [a, b] = cuts.pairs[ci];
            int ia = -1, ib = -1;
            for (int k = 0; k < nbp; ++k) {
                if (std::abs(bp[k] - a) < 1e-14) ia = k;
                if (std::abs(bp[k] - b) < 1e-14) ib = k;
            }
            add_chain(bring[ia][0], bring[ib][0], false);
        }
        if (cuts.odd) add_chain(bring[iray][0], oring[0], true);

        // background: graded hex lattice with clearances
        auto local_h = [&](cplx z) {
            double d = std::abs(z - c);
            double t = std::clamp((d - 1.3 * scale) / (Rm - 1.3 * scale), 0.0, 1.0);
            return h_in + (h_out - h_in) * t;
        };
        double y = -Rm;
        int iy = 0;
        while (y < Rm) {
            double hrow = local_h(c + cplx(0, y));
            double x = -Rm + (iy % 2) * 0.5 * hrow;
            while (x < Rm) {
                cplx z = c + cplx(x, y);
                double hl = local_h(z);
                x += hl;
                if (std::abs(z - c) > Rm - 0.75 * hl) continue;
                bool ok = true;
                for (int k = 0; k < nbp && ok; ++k)
                    if (std::abs(z - bp[k]) < rk[k] + 0.75 * h_in) ok = false;
                for (auto& [sa, sb] : chain_seg) {
                    if (!ok) break;
                    cplx mid = 0.5 * (sa + sb);
                    if (seg_clearance(z, sa, sb) < 0.8 * local_h(mid)) ok = false;
                }
                if (ok) P.push_back(z);
            }
            y += 0.87 * hrow;
            ++iy;
        }
        cut_of.assign(P.size(), -1);
        for (size_t ci = 0; ci < chains.size(); ++ci)
            for (int v : chains[ci]) cut_of[v] = int(ci);
    }

    std::vector<std::array<int, 3>> planar_triangles() {
        auto tris = delaunay(P, 2.2 * Rm);
        const auto& bp = model.branch_points();
        std::vector<std::array<int, 3>> out;
        for (auto& t : tris) {
            cplx cen = (P[t[0]] + P[t[1]] + P[t[2]]) / 3.0;
            if (std::abs(cen - c) > Rm) continue;
            bool hole = false;
            for (size_t k = 0; k < bp.size() && !hole; ++k)
                if (std::abs(cen - bp[k]) < rk[k]) hole = true;
            if (!hole) out.push_back(t);
        }
        // verify the constrained chains and rings survived as edges
        std::set<std::pair<int, int>> edges;
        for (auto& t : out)
            for (int i = 0; i < 3; ++i) edges.insert(std::minmax(t[i], t[(i + 1) % 3]));
        for (auto& ch : chains)
            for (size_t i = 0; i + 1 < ch.size(); ++i)
                if (!edges.count(std::minmax(ch[i], ch[i + 1])))
                    throw ComputationError("mesh: cut chain edge missing from triangulation");
        for (auto& ring : bring)
            for (size_t j = 0; j < ring.size(); ++j)
                if (!edges.count(std::minmax(ring[j], ring[(j + 1) % ring.size()])))
                    throw ComputationError("mesh: branch ring edge missing from triangulation");
        for (size_t j = 0; j < oring.size(); ++j)
            if (!edges.count(std::minmax(oring[j], oring[(j + 1) % oring.size()])))
                throw ComputationError("mesh: outer ring edge missing from triangulation");
        return out;
    }

    int pick(int i, int copy, cplx cent) {
        if (cut_of[i] >= 0) {
            auto [a, b] = chain_seg[cut_of[i]];
            int s = side_of(cent, a, b);
            int bank = ((s > 0) == (copy == 0)) ? 2 : 3;
            return vid.at({i, bank});
        }
        return vid.at({i, copy});
    }

    void duplicate_planar(const std::vector<std::array<int, 3>>& tris) {
        std::set<int> used;
        for (auto& t : tris)
            for (int v : t) used.insert(v);
        for (int i : used) {
            if (cut_of[i] >= 0) {
                vid[{i, 2}] = newv({ChartId::Base, 0, 0}, P[i]);
                vid[{i, 3}] = newv({ChartId::Base, 0, 1}, P[i]);
            } else {
                vid[{i, 0}] = newv({ChartId::Base, 0, 0}, P[i]);
                vid[{i, 1}] = newv({ChartId::Base, 0, 1}, P[i]);
            }
        }
        for (auto& [key, a] : vid) {
            if (key.second == 2) mesh.identifications.emplace_back(a, vid.at({key.first, 3}));
        }
        for (auto& t : tris) {
            cplx cen = (P[t[0]] + P[t[1]] + P[t[2]]) / 3.0;
            for (int copy = 0; copy < 2; ++copy) {
                std::array<int, 3> f{pick(t[0], copy, cen), pick(t[1], copy, cen),
                                     pick(t[2], copy, cen)};
                add_face({ChartId::Base, 0, copy}, f, {P[t[0]], P[t[1]], P[t[2]]});
            }
        }
    }

    /// glued boundary walk of a branch disk / odd cap: ring[0] is the
    /// cut-aligned vertex; returns 2n surface vertices in order.
    std::vector<int> double_ring_walk(const std::vector<int>& ring) {
        std::vector<int> walk;
        auto [a, b] = chain_seg[cut_of[ring[0]]];
        for (int copy = 0; copy < 2; ++copy) {
            int s = side_of(P[ring[1]], a, b);
            int bank = ((s > 0) == (copy == 0)) ? 2 : 3;
            walk.push_back(vid.at({ring[0], bank}));
            for (size_t j = 1; j < ring.size(); ++j) walk.push_back(vid.at({ring[j], copy}));
        }
        return walk;
    }

    /// polar cap: boundary walk ids with chart coords uv, rings halved down to
    /// <= 8 then a center fan. Returns the center vertex id.
    int polar_cap(const std::vector<int>& walk, const std::vector<cplx>& uv, ChartId tag) {
        std::vector<int> prev = walk;
        std::vector<cplx> prev_uv = uv;
        // face corner coords for ring vertices come from uv (not vpos)
        auto cap_face = [&](int a0, int a1, int a2, cplx c0, cplx c1, cplx c2) {
            add_face(tag, {a0, a1, a2}, {c0, c1, c2});
        };
        int m = int(prev.size());
        double radius = std::abs(prev_uv[0]);
        while (m > 8 && m % 2 == 0) {
            int m2 = m / 2;
            radius *= 0.55;
            std::vector<int> cur(m2);
            std::vector<cplx> cur_uv(m2);
            for (int j = 0; j < m2; ++j) {
                cur_uv[j] = std::polar(radius, std::arg(prev_uv[2 * j]));
                cur[j] = newv(tag, cur_uv[j]);
            }
            for (int j = 0; j < m2; ++j) {
                int a0 = prev[2 * j], a1 = prev[(2 * j + 1) % m], a2 = prev[(2 * j + 2) % m];
                cplx c0 = prev_uv[2 * j], c1 = prev_uv[(2 * j + 1) % m], c2 = prev_uv[(2 * j + 2) % m];
                cap_face(a0, a1, cur[j], c0, c1, cur_uv[j]);
                cap_face(a1, a2, cur[(j + 1) % m2], c1, c2, cur_uv[(j + 1) % m2]);
                cap_face(a1, cur[(j + 1) % m2], cur[j], c1, cur_uv[(j + 1) % m2], cur_uv[j]);
            }
            prev = cur;
            prev_uv = cur_uv;
            m = m2;
        }
        int ctr = newv(tag, 0.0);
        for (int j = 0; j < m; ++j)
            cap_face(prev[j], prev[(j + 1) % m], ctr, prev_uv[j], prev_uv[(j + 1) % m], 0.0);
        return ctr;
    }

    void build_caps() {
        const auto& bp = model.branch_points();
        // branch disks
        for (size_t k = 0; k < bp.size(); ++k) {
            auto walk = double_ring_walk(bring[k]);
            int n = nk[k];
            double ru = std::sqrt(rk[k]);
            double th0 = std::arg(P[bring[k][0]] - bp[k]);
            std::vector<cplx> uv(2 * n);
            for (int idx = 0; idx < 2 * n; ++idx)
                uv[idx] = std::polar(ru, 0.5 * th0 + std::numbers::pi * idx / n);
            polar_cap(walk, uv, {ChartId::BranchDisk, int(k), 0});
        }
        // infinity
        int nout = int(oring.size());
        double th_out = cuts.odd ? std::arg(cuts.ray_dir) : 0.0;
        if (!model.odd_degree()) {
            for (int copy = 0; copy < 2; ++copy) {
                std::vector<int> ids(nout);
                std::vector<cplx> uv(nout);
                for (int j = 0; j < nout; ++j) {
                    int pi = oring[j];
                    ids[j] = cut_of[pi] >= 0 ? pick(pi, copy, P[pi]) : vid.at({pi, copy});
                    uv[j] = std::polar(1.0 / Rm, -(th_out + kTwoPi * j / nout));
                }
                polar_cap(ids, uv, {ChartId::InfEven, 0, copy});
            }
        } else {
            auto walk = double_ring_walk(oring);
            double rv = 1.0 / std::sqrt(Rm);
            std::vector<cplx> uv(2 * nout);
            for (int idx = 0; idx < 2 * nout; ++idx)
                uv[idx] = std::polar(rv, -0.5 * th_out - std::numbers::pi * idx / nout);
            polar_cap(walk, uv, {ChartId::InfOdd, 0, 0});
        }
    }

    TriangleMesh build() {
        build_planar_points();
        auto tris = planar_triangles();
        duplicate_planar(tris);
        build_caps();
        int chi = euler_of(mesh.faces, mesh.num_vertices());
        if (chi != 2 - 2 * model.genus())
            throw ComputationError("mesh: Euler characteristic check failed");
        if (!mesh.is_closed_manifold())
            throw ComputationError("mesh: non-manifold edge produced");
        return std::move(mesh);
    }
};

} // namespace

int TriangleMesh::euler_characteristic() const { return euler_of(faces, num_vertices()); }

bool TriangleMesh::is_closed_manifold() const {
    std::map<std::pair<int, int>, int> cnt;
    for (const auto& f : faces)
        for (int i = 0; i < 3; ++i) cnt[std::minmax(f[i], f[(i + 1) % 3])]++;
    for (auto& [e, n] : cnt)
        if (n != 2) return false;
    return true;
}

std::optional<cplx> TriangleMesh::vertex_base_coord(int v) const {
    if (model.is_torus()) return vpos[v];
    return model.base_coord({vchart[v], vpos[v]});
}

TriangleMesh build_mesh(const SurfaceModel& model, int resolution) {
    if (resolution < 8) throw ResolutionTooLow("mesh resolution must be >= 8");
    if (model.is_torus()) return torus_mesh(model, resolution);
    HyperBuilder b(model, resolution);
    return b.build();
}

} // namespace bteich
