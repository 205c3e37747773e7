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

#include "norscore/nor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "norscore/error.hpp"
#include "norscore/text.hpp"

namespace norscore {

std::string_view to_string(NorMetric m) noexcept {
  switch (m) {
    case NorMetric::n:
      return "N";
    case NorMetric::cd:
      return "CD";
    case NorMetric::me:
      return "ME";
    case NorMetric::lf:
      return "LF";
    case NorMetric::ll:
      return "LL";
    case NorMetric::ri:
      return "RI";
  }
  return "?";
}

std::optional<Latency> parse_latency(std::string_view s) noexcept {
  if (s == "onset") return Latency::onset;
  if (s == "offset") return Latency::offset;
  return std::nullopt;
}

std::optional<double> NorMetrics::value(NorMetric m) const noexcept {
  switch (m) {
    case NorMetric::n:
      return static_cast<double>(n);
    case NorMetric::cd:
      return cd;
    case NorMetric::me:
      return me;
    case NorMetric::lf:
      return lf;
    case NorMetric::ll:
      return ll;
    case NorMetric::ri:
      return ri;
  }
  return std::nullopt;
}

NorMetrics nor_metrics(std::string video_id, const LabelTracks& tracks,
                       Side novel_side, TimeBase time_base, Latency latency) {
  NorMetrics m;
  m.video_id = std::move(video_id);
  const auto bouts = events(tracks.combined);
  m.n = static_cast<std::int64_t>(bouts.size());
  m.n_left = static_cast<std::int64_t>(tracks.left.size());
  m.n_right = static_cast<std::int64_t>(tracks.right.size());
  m.cd_frames = total_frames(tracks.combined);
  m.cd = time_base.seconds(m.cd_frames);
  if (bouts.empty()) {
    m.absent_reason = kNoInvestigations;
    m.ri_absent_reason = kNoInvestigations;
    return m;
  }
  m.me = m.cd / static_cast<double>(m.n);
  auto edge = [latency](const FrameInterval& iv) {
    return latency == Latency::onset ? iv.start() : iv.end();
  };
  m.lf = time_base.seconds(edge(bouts.front()));
  m.ll = time_base.seconds(edge(bouts.back()));

  if (!tracks.side_resolved()) {
    m.ri_absent_reason = kSideAgnostic;
  } else {
    const Frame novel = total_frames(novel_side == Side::left ? tracks.left
                                                              : tracks.right);
    const Frame familiar = total_frames(novel_side == Side::left ? tracks.right
                                                                 : tracks.left);
    m.ri = static_cast<double>(novel) / static_cast<double>(novel + familiar);
  }
  return m;
}

NorMetrics nor_metrics(const TrialAnnotation& a, Latency latency) {
  return nor_metrics(a.video_id, to_timelines(a), a.novel_side, a.time_base,
                     latency);
}

namespace {

MetricStats stats_for(NorMetric metric, std::span<const NorMetrics> gt,
                      std::span<const NorMetrics> pred) {
  MetricStats s;
  s.metric = metric;
  std::vector<double> truth;
  std::vector<double> err;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    const auto g = gt[i].value(metric);
    const auto p = pred[i].value(metric);
    if (!g || !p) {
      ++s.n_excluded;
      continue;
    }
    truth.push_back(*g);
    err.push_back(*p - *g);
  }
  s.n_pairs = truth.size();
  if (truth.empty()) {
    s.reason = "no usable pairs";
    return s;
  }
  const auto n = static_cast<double>(truth.size());
  double gt_sum = 0.0;
  for (double v : truth) gt_sum += v;
  s.gt_mean = gt_sum / n;
  if (truth.size() < 2) {
    s.reason = "fewer than 2 usable pairs";
    return s;
  }

  double err_sum = 0.0;
  double sse = 0.0;
  for (double e : err) {
    err_sum += e;
    sse += e * e;
  }
  const double mean_err = err_sum / n;
  double dev = 0.0;
  for (double e : err) dev += (e - mean_err) * (e - mean_err);
  s.mean_error = mean_err;
  s.std_error = std::sqrt(dev / (n - 1.0));

  const bool constant =
      std::all_of(truth.begin(), truth.end(),
                  [&](double v) { return v == truth.front(); });
  if (constant) {
    s.reason = "degenerate target variance";
    return s;
  }
  double sst = 0.0;
  for (double v : truth) sst += (v - *s.gt_mean) * (v - *s.gt_mean);
  s.r_squared = 1.0 - sse / sst;
  return s;
}

}  // namespace

ComparisonStats compare(std::span<const NorMetrics> gt,
                        std::span<const NorMetrics> pred) {
  if (gt.size() != pred.size()) {
    throw ValidationError("ground truth has " + std::to_string(gt.size()) +
                          " videos but prediction has " +
                          std::to_string(pred.size()));
  }
  std::map<std::string_view, const NorMetrics*> by_id;
  for (const auto& p : pred) {
    if (!by_id.emplace(p.video_id, &p).second) {
      throw ValidationError("duplicate prediction video_id '" + p.video_id + "'");
    }
  }
  std::vector<NorMetrics> g_sorted(gt.begin(), gt.end());
  std::sort(g_sorted.begin(), g_sorted.end(),
            [](const NorMetrics& a, const NorMetrics& b) {
              return a.video_id < b.video_id;
            });
  std::vector<NorMetrics> p_aligned;
  p_aligned.reserve(pred.size());
  for (std::size_t i = 0; i < g_sorted.size(); ++i) {
    if (i > 0 && g_sorted[i].video_id == g_sorted[i - 1].video_id) {
      throw ValidationError("duplicate ground-truth video_id '" +
                            g_sorted[i].video_id + "'");
    }
    auto it = by_id.find(g_sorted[i].video_id);
    if (it == by_id.end()) {
      throw ValidationError("no prediction for video_id '" +
                            g_sorted[i].video_id + "'");
    }
    p_aligned.push_back(*it->second);
  }

  ComparisonStats out;
  for (std::size_t k = 0; k < kNorMetrics.size(); ++k) {
    out.metrics[k] = stats_for(kNorMetrics[k], g_sorted, p_aligned);
  }
  return out;
}

std::string metrics_csv(std::span<const NorMetrics> rows) {
  std::string out = "video_id,n,cd_s,me_s,lf_s,ll_s,ri\n";
  for (const auto& m : rows) {
    out += text::csv_line({m.video_id, std::to_string(m.n),
                           text::format_double(m.cd),
                           text::format_optional(m.me),
                           text::format_optional(m.lf),
                           text::format_optional(m.ll),
                           text::format_optional(m.ri)});
  }
  return out;
}

std::string comparison_csv(const ComparisonStats& stats) {
  std::string out =
      "metric,gt_mean,r_squared,mean_error,std_error,n_pairs,n_excluded\n";
  for (const auto& s : stats.metrics) {
    out += text::csv_line({std::string(to_string(s.metric)),
                           text::format_optional(s.gt_mean),
                           text::format_optional(s.r_squared),
                           text::format_optional(s.mean_error),
                           text::format_optional(s.std_error),
                           std::to_string(s.n_pairs),
                           std::to_string(s.n_excluded)});
  }
  return out;
}

}  // namespace norscore
