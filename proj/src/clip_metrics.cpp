// Copyright 2026 The nor-score Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "norscore/clip_metrics.hpp"

#include <algorithm>
#include <cstdio>

#include "norscore/error.hpp"
#include "norscore/text.hpp"

namespace norscore {

double accuracy(std::span<const ClipEvalRecord> records) {
  if (records.empty()) throw ValidationError("accuracy of an empty batch");
  const auto correct = std::count_if(
      records.begin(), records.end(),
      [](const ClipEvalRecord& r) { return r.true_label == r.predicted_label; });
  return static_cast<double>(correct) / static_cast<double>(records.size());
}

PrCurve pr_curve(std::span<const ClipEvalRecord> records, ClipClass positive) {
  struct Ranked {
    double score;
    bool positive;
  };
  std::vector<Ranked> ranked;
  ranked.reserve(records.size());
  std::size_t n_pos = 0;
  for (const auto& r : records) {
    if (!r.score) throw ValidationError("pr curve needs a score on every record");
    const double s = positive == ClipClass::investigate ? *r.score : 1.0 - *r.score;
    const bool is_pos = r.true_label == positive;
    n_pos += is_pos ? 1 : 0;
    ranked.push_back({s, is_pos});
  }
  if (n_pos == 0) {
    throw ValidationError("AP undefined: no positive records for class '" +
                          std::string(to_string(positive)) + "'");
  }
  if (n_pos == ranked.size()) {
    throw ValidationError("AP undefined: no negative records for class '" +
                          std::string(to_string(positive)) + "'");
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const Ranked& a, const Ranked& b) { return a.score > b.score; });

  PrCurve curve;
  std::size_t tp = 0;
  std::size_t fp = 0;
  double prev_recall = 0.0;
  for (std::size_t i = 0; i < ranked.size();) {
    const double threshold = ranked[i].score;
    for (; i < ranked.size() && ranked[i].score == threshold; ++i) {
      (ranked[i].positive ? tp : fp) += 1;
    }
    const double precision =
        static_cast<double>(tp) / static_cast<double>(tp + fp);
    const double recall = static_cast<double>(tp) / static_cast<double>(n_pos);
    curve.ap += (recall - prev_recall) * precision;
    prev_recall = recall;
    curve.points.push_back({threshold, precision, recall});
  }
  return curve;
}

ClipReport evaluate_clips(std::span<const ClipEvalRecord> records) {
  ClipReport report;
  report.n_records = records.size();
  report.accuracy = accuracy(records);
  report.n_correct = static_cast<std::size_t>(std::count_if(
      records.begin(), records.end(),
      [](const ClipEvalRecord& r) { return r.true_label == r.predicted_label; }));
  if (records.front().score) {
    auto curve = pr_curve(records, ClipClass::investigate);
    report.ap_investigate = curve.ap;
    report.ap_explore = pr_curve(records, ClipClass::explore).ap;
    report.curve = std::move(curve);
  }
  return report;
}

std::vector<ClipEvalRecord> parse_clip_eval_csv(std::string_view text) {
  const auto rows = text::read_csv(text);
  if (rows.empty()) throw ParseError("empty clip evaluation file", 1);
  const std::vector<std::string> expected{"video_id", "start_frame",
                                          "true_label", "pred_label", "score"};
  if (rows.front().fields != expected) {
    throw ParseError("expected header video_id,start_frame,true_label,"
                     "pred_label,score",
                     rows.front().line);
  }
  std::vector<ClipEvalRecord> out;
  std::size_t scored = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.fields.size() != expected.size()) {
      throw ParseError("expected 5 fields, got " +
                           std::to_string(row.fields.size()),
                       row.line);
    }
    ClipEvalRecord rec;
    rec.video_id = row.fields[0];
    auto start = text::parse_int(row.fields[1]);
    if (!start) throw ParseError("expected an integer", row.line, "start_frame");
    rec.start_frame = *start;
    auto t = parse_clip_class(row.fields[2]);
    if (!t) throw ParseError("unknown label '" + row.fields[2] + "'", row.line, "true_label");
    auto p = parse_clip_class(row.fields[3]);
    if (!p) throw ParseError("unknown label '" + row.fields[3] + "'", row.line, "pred_label");
    rec.true_label = *t;
    rec.predicted_label = *p;
    if (!row.fields[4].empty()) {
      rec.score = text::parse_double(row.fields[4]);
      if (!rec.score) throw ParseError("expected a number", row.line, "score");
      if (*rec.score < 0.0 || *rec.score > 1.0) {
        throw ValidationError("line " + std::to_string(row.line) +
                              ": score outside [0,1]");
      }
      ++scored;
    }
    out.push_back(std::move(rec));
  }
  if (out.empty()) throw ValidationError("clip evaluation file has no records");
  if (scored != 0 && scored != out.size()) {
    throw ValidationError("mixed scored and unscored records");
  }
  return out;
}

std::string clip_report_csv(const ClipReport& report) {
  std::string out = "metric,value\n";
  out += "n_records," + std::to_string(report.n_records) + "\n";
  out += "n_correct," + std::to_string(report.n_correct) + "\n";
  out += "accuracy," + text::format_double(report.accuracy) + "\n";
  out += "ap_investigate," + text::format_optional(report.ap_investigate) + "\n";
  out += "ap_explore," + text::format_optional(report.ap_explore) + "\n";
  return out;
}

std::string pr_curve_csv(const PrCurve& curve) {
  std::string out = "threshold,precision,recall\n";
  for (const auto& p : curve.points) {
    out += text::format_double(p.threshold) + "," +
           text::format_double(p.precision) + "," +
           text::format_double(p.recall) + "\n";
  }
  return out;
}

std::string clip_report_table(const ClipReport& report) {
  char buf[256];
  std::string out;
  std::snprintf(buf, sizeof buf, "clips            %zu\n", report.n_records);
  out += buf;
  std::snprintf(buf, sizeof buf, "accuracy         %.4f  (%zu correct)\n",
                report.accuracy, report.n_correct);
  out += buf;
  if (report.ap_investigate) {
    std::snprintf(buf, sizeof buf, "AP investigate   %.4f\nAP explore       %.4f\n",
                  *report.ap_investigate, *report.ap_explore);
    out += buf;
  } else {
    out += "AP               n/a (no scores)\n";
  }
  return out;
}

}  // namespace norscore
