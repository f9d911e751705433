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

#include "auwcd/report.hpp"

#include <cstdio>
#include <optional>
#include <utility>
#include <vector>

namespace auwcd::pipeline {

namespace {

std::string num(double v, const char* format = "%.12g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::string opt(const std::optional<double>& v, const char* format = "%.12g") {
  return v ? num(*v, format) : "nan";
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(s.begin(), width - s.size(), ' ');
  return s;
}

std::vector<std::pair<std::string, std::optional<double>>> metric_rows(
    const EvaluationReport& r) {
  std::vector<std::pair<std::string, std::optional<double>>> rows = {
      {"cd_precision", r.cd.precision},
      {"cd_recall", r.cd.recall},
      {"cd_f1", r.cd.f1},
      {"cd_oa", r.cd.oa},
  };
  if (r.seg) {
    rows.emplace_back("seg_precision", r.seg->precision);
    rows.emplace_back("seg_recall", r.seg->recall);
    rows.emplace_back("seg_f1", r.seg->f1);
    rows.emplace_back("seg_oa", r.seg->oa);
  }
  rows.emplace_back("pacc", r.pacc);
  rows.emplace_back("error_ratio", r.error_ratio);
  return rows;
}

}  // namespace

std::string report_csv(const EvaluationReport& report) {
  std::string out = "metric,value\n";
  for (const auto& [name, value] : metric_rows(report)) {
    out += name + "," + opt(value) + "\n";
  }
  const auto& c = report.cd_counts;
  const auto& s = report.seg_counts;
  const auto& p = report.points;
  const std::vector<std::pair<const char*, std::uint64_t>> counts = {
      {"cd_tp", c.tp},           {"cd_fp", c.fp},         {"cd_tn", c.tn},
      {"cd_fn", c.fn},           {"seg_tp", s.tp},        {"seg_fp", s.fp},
      {"seg_tn", s.tn},          {"seg_fn", s.fn},        {"points_p", p.p_total},
      {"points_n", p.n_total},   {"points_p_correct", p.p_correct},
      {"points_n_correct", p.n_correct}, {"tiles", report.tiles},
  };
  for (const auto& [name, value] : counts) {
    out += std::string(name) + "," + std::to_string(value) + "\n";
  }
  out += std::string("averaging,") + (report.macro ? "macro" : "micro") + "\n";
  return out;
}

std::string report_table(const EvaluationReport& report) {
  std::string out = "# configuration\n" + report.config_echo + "\n";
  out += std::string("# metrics (") + (report.macro ? "macro" : "micro") + ", " +
         std::to_string(report.tiles) + " tiles)\n";
  for (const auto& [name, value] : metric_rows(report)) {
    out += pad(name, 14) + "  " + pad(opt(value, "%.6f"), 10) + "\n";
  }
  return out;
}

std::string sweep_csv(const SweepResult& sweep) {
  std::string out =
      "threshold,cd_precision,cd_recall,cd_f1,cd_oa,seg_precision,seg_recall,seg_f1,"
      "seg_oa,pacc,error_ratio,points_p,points_n,points_p_correct,points_n_correct\n";
  for (const auto& row : sweep.rows) {
    const auto& r = row.report;
    const auto seg = r.seg.value_or(MetricSet{});
    out += num(row.threshold) + "," + num(r.cd.precision) + "," + num(r.cd.recall) + "," +
           num(r.cd.f1) + "," + num(r.cd.oa) + "," + num(seg.precision) + "," +
           num(seg.recall) + "," + num(seg.f1) + "," + num(seg.oa) + "," + opt(r.pacc) +
           "," + opt(r.error_ratio) + "," + std::to_string(r.points.p_total) + "," +
           std::to_string(r.points.n_total) + "," + std::to_string(r.points.p_correct) +
           "," + std::to_string(r.points.n_correct) + "\n";
  }
  return out;
}

std::string sweep_table(const SweepResult& sweep) {
  std::string out = "# configuration\n" + sweep.config_echo + "\n";
  const std::vector<std::string> heads = {"t",      "cd_f1",  "cd_rec", "cd_pre",
                                          "seg_f1", "seg_rec", "pacc",  "err_ratio"};
  for (const auto& h : heads) out += pad(h, 10);
  out += "\n";
  for (const auto& row : sweep.rows) {
    const auto& r = row.report;
    const auto seg = r.seg.value_or(MetricSet{});
    out += pad(num(row.threshold, "%.2f"), 10) + pad(num(r.cd.f1, "%.4f"), 10) +
           pad(num(r.cd.recall, "%.4f"), 10) + pad(num(r.cd.precision, "%.4f"), 10) +
           pad(num(seg.f1, "%.4f"), 10) + pad(num(seg.recall, "%.4f"), 10) +
           pad(opt(r.pacc, "%.4f"), 10) + pad(opt(r.error_ratio, "%.4f"), 10) + "\n";
  }
  return out;
}

}  // namespace auwcd::pipeline
