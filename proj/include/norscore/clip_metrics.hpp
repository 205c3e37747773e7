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

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "norscore/clipper.hpp"

namespace norscore {

/// One classified clip. `score` is the confidence for `investigate`.
struct ClipEvalRecord {
  std::string video_id;
  Frame start_frame = 0;
  ClipClass true_label = ClipClass::explore;
  ClipClass predicted_label = ClipClass::explore;
  std::optional<double> score;
};

/// Fraction of records whose predicted label equals the true label. Throws
/// ValidationError on an empty batch.
double accuracy(std::span<const ClipEvalRecord> records);

struct PrPoint {
  double threshold;
  double precision;
  double recall;
};

/// One point per distinct score, thresholds descending (a record counts as
/// positive when score >= threshold). `ap` is the all-points step integral
/// sum_k (R_k - R_{k-1}) * P_k with R_0 = 0.
struct PrCurve {
  std::vector<PrPoint> points;
  double ap = 0.0;
};

/// Precision-recall curve for `positive`. Scores are read as confidence for
/// investigate, so the explore curve ranks by 1 - score. Throws
/// ValidationError when scores are missing or either class is absent.
PrCurve pr_curve(std::span<const ClipEvalRecord> records,
                 ClipClass positive = ClipClass::investigate);

struct ClipReport {
  std::size_t n_records = 0;
  std::size_t n_correct = 0;
  double accuracy = 0.0;
  /// AP with investigate as the positive class; absent without scores.
  std::optional<double> ap_investigate;
  std::optional<double> ap_explore;
  std::optional<PrCurve> curve;
};

ClipReport evaluate_clips(std::span<const ClipEvalRecord> records);

/// Reads `video_id,start_frame,true_label,pred_label,score`. The score
/// column may be blank on every row or on none.
std::vector<ClipEvalRecord> parse_clip_eval_csv(std::string_view text);

/// `metric,value` rows.
std::string clip_report_csv(const ClipReport& report);
/// `threshold,precision,recall` rows.
std::string pr_curve_csv(const PrCurve& curve);
std::string clip_report_table(const ClipReport& report);

}  // namespace norscore
