/*
 * Copyright 2026 the bteich authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy at http://www.apache.org/licenses/LICENSE-2.0
 */
#pragma once

#include <string>

#include <json.hpp>

#include "bteich/periods.hpp"
#include "bteich/surface.hpp"

namespace bteich {

using json = nlohmann::json;

json model_to_json(const SurfaceModel& m);
SurfaceModel model_from_json(const json& j);
SurfaceModel load_model(const std::string& path);

json period_matrix_to_json(const PeriodMatrix& pm);
json complex_matrix_to_json(const CMat& m);

/// serialize with 17 significant digits (round-trip exact for doubles)
std::string dump_report(const json& j);

/// atomic write: temp file in the same directory, then rename
void write_file_atomic(const std::string& path, const std::string& contents);

} // namespace bteich
