/*
 * Copyright 2026 the bteich authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy at http://www.apache.org/licenses/LICENSE-2.0
 */
#include "bteich/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace bteich {

namespace {

json cplx_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError("expected complex number as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

// nlohmann prints doubles with enough digits for round trips only via
// serializer defaults since 3.x; force %.17g explicitly for stability.
void dump17(const json& j, std::ostream& os) {
    switch (j.type()) {
        case json::value_t::number_float: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
            os << buf;
            return;
        }
        case json::value_t::array: {
            os << '[';
            for (size_t i = 0; i < j.size(); ++i) {
                if (i) os << ',';
                dump17(j[i], os);
            }
            os << ']';
            return;
        }
        case json::value_t::object: {
            os << '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ',';
                first = false;
                os << json(it.key()).dump() << ':';
                dump17(it.value(), os);
            }
            os << '}';
            return;
        }
        default:
            os << j.dump();
    }
}

} // namespace

json model_to_json(const SurfaceModel& m) {
    json j;
    if (m.is_torus()) {
        j["kind"] = "torus";
        j["tau"] = cplx_to_json(m.tau());
    } else {
        j["kind"] = "hyperelliptic";
        json arr = json::array();
        for (cplx b : m.branch_points()) arr.push_back(cplx_to_json(b));
        j["branch_points"] = arr;
    }
    return j;
}

SurfaceModel model_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw ParseError("model JSON needs a string field 'kind'");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "torus") {
        if (!j.contains("tau")) throw ParseError("torus model needs field 'tau'");
        return SurfaceModel::torus(cplx_from_json(j["tau"]));
    }
    if (kind == "hyperelliptic") {
        if (!j.contains("branch_points") || !j["branch_points"].is_array())
            throw ParseError("hyperelliptic model needs array field 'branch_points'");
        std::vector<cplx> bp;
        for (const auto& e : j["branch_points"]) bp.push_back(cplx_from_json(e));
        return SurfaceModel::hyperelliptic(std::move(bp));
    }
    throw ParseError("unknown model kind '" + kind + "'");
}

SurfaceModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model file " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
    }
    return model_from_json(j);
}

json complex_matrix_to_json(const CMat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(cplx_to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json period_matrix_to_json(const PeriodMatrix& pm) {
    json j;
    j["omega"] = complex_matrix_to_json(pm.omega);
    j["genus"] = pm.genus;
    return j;
}

std::string dump_report(const json& j) {
    std::ostringstream os;
    dump17(j, os);
    os << '\n';
    return os.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ComputationError("cannot write " + tmp);
        out << contents;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw ComputationError("cannot rename into place: " + path);
}

} // namespace bteich
