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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "norscore/annotation_io.hpp"

namespace norscore {

enum class ClipClass { explore, investigate };

std::string_view to_string(ClipClass c) noexcept;
std::optional<ClipClass> parse_clip_class(std::string_view s) noexcept;

/// Fixed-length, label-pure training clip.
struct ClipRecord {
  std::string video_id;
  ClipClass class_label;
  Frame start_frame;
  Frame length;

  friend bool operator==(const ClipRecord&, const ClipRecord&) = default;
};

/// Clips from the combined investigation track and from its complement.
/// Each source interval of length L yields floor(L / clip_len) back-to-back
/// clips anchored at the interval start; the remainder is dropped. Result is
/// ordered by start frame.
std::vector<ClipRecord> extract_clips(const TrialAnnotation& a,
                                      Frame clip_len = 60);

struct SplitAssignment {
  std::vector<ClipRecord> train;
  std::vector<ClipRecord> validation;
  std::uint64_t seed = 0;
  double ratio = 0.75;
};

/// Number of training records for n clips: floor(ratio * n).
std::size_t train_size(std::size_t n, double ratio);

/// Seeded splitmix64 Fisher-Yates shuffle of the manifest, then a prefix
/// split. Throws ValidationError on an empty manifest or ratio outside (0,1).
SplitAssignment split(const std::vector<ClipRecord>& manifest, double ratio,
                      std::uint64_t seed);

/// Manifest CSV with a `split` column (train, val or none). Rows follow the
/// order of `manifest`; pass split = nullopt to mark every row none.
std::string manifest_csv(const std::vector<ClipRecord>& manifest,
                         const std::optional<SplitAssignment>& split);

}  // namespace norscore
