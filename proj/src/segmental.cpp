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

#include "norscore/segmental.hpp"

#include <algorithm>

#include "norscore/error.hpp"
#include "norscore/text.hpp"

namespace norscore {

namespace {

constexpr PerCategory<std::string_view> kNames{
    "TP",    "TN",        "Overfill",  "Underfill",
    "Fragmentation", "Merge", "Insertion", "Deletion",
};

/// First and last frame of an event that the other track covers.
struct Coverage {
  Frame first = -1;
  Frame last = -1;
  bool any() const noexcept { return first >= 0; }
};

/// For every event of `track`, the span of its frames covered by `other`.
std::vector<Coverage> coverage(std::span<const FrameInterval> track,
                               std::span<const FrameInterval> other) {
  std::vector<Coverage> out(track.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < track.size(); ++i) {
    while (j < other.size() && other[j].end() <= track[i].start()) ++j;
    for (std::size_t k = j; k < other.size() && other[k].start() < track[i].end(); ++k) {
      const Frame lo = std::max(track[i].start(), other[k].start());
      const Frame hi = std::min(track[i].end(), other[k].end());
      if (!out[i].any()) out[i].first = lo;
      out[i].last = hi - 1;
    }
  }
  return out;
}

/// Category of a piece [lo, hi) that the `own` event covers and the other
/// track does not. Rule for gt+/pred- is (Deletion, Fragmentation, Underfill);
/// for gt-/pred+ it is (Insertion, Merge, Overfill).
Category one_sided(const Coverage& cov, Frame lo, Frame hi, Category missing,
                   Category split, Category boundary) {
  if (!cov.any()) return missing;
  if (cov.first < lo && cov.last >= hi) return split;
  return boundary;
}

}  // namespace

std::string_view to_string(Category c) noexcept { return kNames[index_of(c)]; }

std::optional<Category> parse_category(std::string_view s) noexcept {
  for (Category c : kCategories) {
    if (kNames[index_of(c)] == s) return c;
  }
  return std::nullopt;
}

Category swap_roles(Category c) noexcept {
  switch (c) {
    case Category::overfill:
      return Category::underfill;
    case Category::underfill:
      return Category::overfill;
    case Category::fragmentation:
      return Category::merge;
    case Category::merge:
      return Category::fragmentation;
    case Category::insertion:
      return Category::deletion;
    case Category::deletion:
      return Category::insertion;
    default:
      return c;
  }
}

std::vector<Segment> classify(const Timeline& gt, const Timeline& pred) {
  if (gt.horizon() != pred.horizon()) {
    throw ValidationError("horizon mismatch: ground truth " +
                          std::to_string(gt.horizon()) + " vs prediction " +
                          std::to_string(pred.horizon()));
  }
  const auto g = gt.intervals();
  const auto p = pred.intervals();
  const auto gt_cov = coverage(g, p);
  const auto pred_cov = coverage(p, g);

  std::vector<Frame> cuts;
  cuts.reserve(2 * (g.size() + p.size()) + 2);
  cuts.push_back(0);
  cuts.push_back(gt.horizon());
  for (const auto& iv : g) {
    cuts.push_back(iv.start());
    cuts.push_back(iv.end());
  }
  for (const auto& iv : p) {
    cuts.push_back(iv.start());
    cuts.push_back(iv.end());
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Segment> out;
  out.reserve(cuts.size());
  std::size_t gi = 0;
  std::size_t pi = 0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const Frame lo = cuts[k];
    const Frame hi = cuts[k + 1];
    while (gi < g.size() && g[gi].end() <= lo) ++gi;
    while (pi < p.size() && p[pi].end() <= lo) ++pi;
    const bool gt_on = gi < g.size() && g[gi].start() <= lo;
    const bool pred_on = pi < p.size() && p[pi].start() <= lo;

    Category c;
    if (gt_on && pred_on) {
      c = Category::tp;
    } else if (!gt_on && !pred_on) {
      c = Category::tn;
    } else if (gt_on) {
      c = one_sided(gt_cov[gi], lo, hi, Category::deletion,
                    Category::fragmentation, Category::underfill);
    } else {
      c = one_sided(pred_cov[pi], lo, hi, Category::insertion, Category::merge,
                    Category::overfill);
    }
    out.push_back({c, FrameInterval(lo, hi)});
  }
  return out;
}

Frame SegmentalReport::error_frames() const noexcept {
  Frame sum = 0;
  for (Category c : kCategories) {
    if (c != Category::tp && c != Category::tn) sum += frames_of(c);
  }
  return sum;
}

SegmentalReport score(const Timeline& gt, const Timeline& pred,
                      std::string video_id) {
  SegmentalReport report;
  report.video_id = std::move(video_id);
  report.horizon = gt.horizon();
  for (const auto& seg : classify(gt, pred)) {
    report.frames[index_of(seg.category)] += seg.interval.length();
    report.segments[index_of(seg.category)] += 1;
  }
  return report;
}

CorpusSummary aggregate(std::span<const SegmentalReport> reports) {
  if (reports.empty()) throw ValidationError("cannot aggregate zero reports");
  CorpusSummary s;
  s.n_videos = reports.size();
  for (const auto& r : reports) {
    s.total_horizon += r.horizon;
    for (std::size_t i = 0; i < kCategoryCount; ++i) {
      s.frames[i] += r.frames[i];
      s.segments[i] += r.segments[i];
      s.mean_fraction[i] += r.fraction(kCategories[i]);
    }
    s.severe_error_rate +=
        r.fraction(Category::insertion) + r.fraction(Category::deletion);
  }
  const auto n = static_cast<double>(reports.size());
  for (auto& f : s.mean_fraction) f /= n;
  s.severe_error_rate /= n;
  return s;
}

std::string segmental_csv(std::span<const SegmentalReport> reports,
                          const CorpusSummary& summary) {
  std::string out = "video_id,category,frames,segments,fraction\n";
  for (const auto& r : reports) {
    for (Category c : kCategories) {
      out += text::csv_line({r.video_id, std::string(to_string(c)),
                             std::to_string(r.frames_of(c)),
                             std::to_string(r.segments_of(c)),
                             text::format_double(r.fraction(c))});
    }
  }
  for (Category c : kCategories) {
    const auto i = index_of(c);
    out += text::csv_line({"__corpus__", std::string(to_string(c)),
                           std::to_string(summary.frames[i]),
                           std::to_string(summary.segments[i]),
                           text::format_double(summary.mean_fraction[i])});
  }
  const auto ins = index_of(Category::insertion);
  const auto del = index_of(Category::deletion);
  out += text::csv_line({"__corpus__", "severe",
                         std::to_string(summary.frames[ins] + summary.frames[del]),
                         std::to_string(summary.segments[ins] + summary.segments[del]),
                         text::format_double(summary.severe_error_rate)});
  return out;
}

}  // namespace norscore
