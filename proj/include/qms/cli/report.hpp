// Copyright 2026 The qmsergo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include "qms/cli/config.hpp"

namespace qms::cli {

/// Finite doubles pass through; ±inf and NaN become the strings "inf", "-inf", "nan".
json number(double v);
json complex_value(cplx z);
json complex_list(const std::vector<cplx>& zs);
json real_list(const std::vector<double>& xs);
json real_list(const RealVector& xs);

/// Pretty-printed JSON with two-space indent, insertion key order and
/// floating-point values written with 17 significant digits.
std::string write_json(const json& doc);

/// ISO-8601 UTC time, second resolution.
std::string utc_timestamp();

}  // namespace qms::cli
