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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "norscore/annotation_io.hpp"

namespace norscore {

/// Which edge of a bout a latency is measured to.
enum class Latency { onset, offset };

enum class NorMetric { n, cd, me, lf, ll, ri };

inline constexpr std::array<NorMetric, 6> kNorMetrics{
    NorMetric::n,  NorMetric::cd, NorMetric::me,
    NorMetric::lf, NorMetric::ll, NorMetric::ri,
};

std::string_view to_string(NorMetric m) noexcept;
std::optional<Latency> parse_latency(std::string_view s) noexcept;

inline constexpr std::string_view kNoInvestigations = "no investigations";
inline constexpr std::string_view kSideAgnostic = "side-agnostic prediction";

/// Behavioral metrics of one trial. Durations and latencies are in seconds.
/// Investigations are the maximal runs of the combined (either object)
/// track. Absent values carry a reason instead of a zero.
struct NorMetrics {
  std::string video_id;
  std::int64_t n = 0;
  Frame cd_frames = 0;
  double cd = 0.0;
  std::optional<double> me;
  std::optional<double> lf;
  std::optional<double> ll;
  std::optional<double> ri;
  std::int64_t n_left = 0;
  std::int64_t n_right = 0;
  std::string absent_reason;
  std::string ri_absent_reason;

  std::optional<double> value(NorMetric m) const noexcept;
};

NorMetrics nor_metrics(std::string video_id, const LabelTracks& tracks,
                       Side novel_side, TimeBase time_base,
                       Latency latency = Latency::onset);

NorMetrics nor_metrics(const TrialAnnotation& a, Latency latency = Latency::onset);

struct MetricStats {
  NorMetric metric = NorMetric::n;
  std::size_t n_pairs = 0;
  std::size_t n_excluded = 0;
  std::optional<double> gt_mean;
  std::optional<double> r_squared;
  std::optional<double> mean_error;
  std::optional<double> std_error;
  std::string reason;
};

struct ComparisonStats {
  std::array<MetricStats, 6> metrics;

  const MetricStats& at(NorMetric m) const noexcept {
    return metrics[static_cast<std::size_t>(m)];
  }
};

/// Treats predicted metrics as regression outputs against ground truth:
/// e_i = pred_i - gt_i, mean and sample (n-1) standard deviation of e, and
/// R^2 = 1 - sum e_i^2 / sum (gt_i - mean gt)^2, which may be negative.
/// Lists are aligned by video_id and must hold the same ids; a pair where
/// either side lacks the metric is excluded from that metric only.
ComparisonStats compare(std::span<const NorMetrics> gt,
                        std::span<const NorMetrics> pred);

/// `video_id,n,cd_s,me_s,lf_s,ll_s,ri`, empty cells for absent values.
std::string metrics_csv(std::span<const NorMetrics> rows);

/// `metric,gt_mean,r_squared,mean_error,std_error,n_pairs,n_excluded`.
std::string comparison_csv(const ComparisonStats& stats);

}  // namespace norscore
