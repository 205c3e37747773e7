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
#include <vector>

#include "norscore/timeline.hpp"

namespace norscore {

/// Frame categories of the continuous recognition error taxonomy.
enum class Category : std::uint8_t {
  tp,
  tn,
  overfill,
  underfill,
  fragmentation,
  merge,
  insertion,
  deletion,
};

inline constexpr std::size_t kCategoryCount = 8;

inline constexpr std::array<Category, kCategoryCount> kCategories{
    Category::tp,       Category::tn,        Category::overfill,
    Category::underfill, Category::fragmentation, Category::merge,
    Category::insertion, Category::deletion,
};

/// Version of the classification rules below; embedded in the CLI version.
inline constexpr std::string_view kSegmentalRulesVersion = "segmental-rules/1";

std::string_view to_string(Category c) noexcept;
std::optional<Category> parse_category(std::string_view s) noexcept;

/// Category obtained when ground truth and prediction exchange roles:
/// deletion <-> insertion, underfill <-> overfill, fragmentation <-> merge.
Category swap_roles(Category c) noexcept;

template <typename T>
using PerCategory = std::array<T, kCategoryCount>;

inline constexpr std::size_t index_of(Category c) noexcept {
  return static_cast<std::size_t>(c);
}

struct Segment {
  Category category;
  FrameInterval interval;
};

/// Partitions [0, horizon) at every event boundary of both tracks and labels
/// each constant piece:
///
///   gt+ pred+  TP
///   gt- pred-  TN
///   gt+ pred-  Deletion if the enclosing gt event meets no prediction,
///              Fragmentation if that event has predicted frames both before
///              and after the piece, otherwise Underfill.
///   gt- pred+  Insertion if the enclosing pred event meets no gt frame,
///              Merge if that event covers gt frames both before and after
///              the piece (necessarily of distinct gt events), otherwise
///              Overfill.
///
/// Overlap means at least one shared frame. Throws ValidationError on a
/// horizon mismatch.
std::vector<Segment> classify(const Timeline& gt, const Timeline& pred);

struct SegmentalReport {
  std::string video_id;
  Frame horizon = 0;
  PerCategory<Frame> frames{};
  PerCategory<std::int64_t> segments{};

  Frame frames_of(Category c) const noexcept { return frames[index_of(c)]; }
  std::int64_t segments_of(Category c) const noexcept {
    return segments[index_of(c)];
  }
  double fraction(Category c) const noexcept {
    return static_cast<double>(frames_of(c)) / static_cast<double>(horizon);
  }
  /// Everything except TP and TN.
  Frame error_frames() const noexcept;
};

SegmentalReport score(const Timeline& gt, const Timeline& pred,
                      std::string video_id = {});

struct CorpusSummary {
  std::size_t n_videos = 0;
  Frame total_horizon = 0;
  PerCategory<Frame> frames{};
  PerCategory<std::int64_t> segments{};
  /// Unweighted mean over videos of each per-video fraction.
  PerCategory<double> mean_fraction{};
  /// mean over videos of (insertion + deletion) fraction.
  double severe_error_rate = 0.0;
};

/// Throws ValidationError on an empty list.
CorpusSummary aggregate(std::span<const SegmentalReport> reports);

/// `video_id,category,frames,segments,fraction`: eight rows per video, then
/// eight `__corpus__` rows (summed counts, mean fractions) and a final
/// `__corpus__,severe` row.
std::string segmental_csv(std::span<const SegmentalReport> reports,
                          const CorpusSummary& summary);

}  // namespace norscore
