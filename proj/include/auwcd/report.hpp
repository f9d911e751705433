// Copyright 2026 The auwcd Authors.
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

#ifndef AUWCD_REPORT_HPP_
#define AUWCD_REPORT_HPP_

#include <string>

#include "auwcd/pipeline.hpp"

namespace auwcd::pipeline {

/// `metric,value` rows: metrics first, then the raw counts they derive from.
std::string report_csv(const EvaluationReport& report);
/// Config echo followed by an aligned metric table.
std::string report_table(const EvaluationReport& report);

/// One row per threshold; missing values are written as `nan`.
std::string sweep_csv(const SweepResult& sweep);
std::string sweep_table(const SweepResult& sweep);

}  // namespace auwcd::pipeline

#endif  // AUWCD_REPORT_HPP_
