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
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "norscore/timeline.hpp"

namespace norscore {

enum class Side { left, right };

enum class Label { explore, investigate_left, investigate_right, investigate };

std::string_view to_string(Side side) noexcept;
std::string_view to_string(Label label) noexcept;
std::optional<Side> parse_side(std::string_view s) noexcept;
std::optional<Label> parse_label(std::string_view s) noexcept;

Side opposite(Side side) noexcept;

struct LabeledInterval {
  Label label;
  FrameInterval interval;
  std::optional<double> score;

  friend bool operator==(const LabeledInterval&,
                         const LabeledInterval&) = default;
};

/// Ground truth for one trial. The per-object tracks are normalized and
/// mutually disjoint.
struct TrialAnnotation {
  std::string video_id;
  TimeBase time_base;
  Frame num_frames;
  Side novel_side;
  Timeline left;
  Timeline right;

  Timeline combined() const { return unite(left, right); }
  const Timeline& novel() const { return novel_side == Side::left ? left : right; }
  const Timeline& familiar() const {
    return novel_side == Side::left ? right : left;
  }

  friend bool operator==(const TrialAnnotation&,
                         const TrialAnnotation&) = default;
};

/// Builds and validates an annotation. Only investigate_left and
/// investigate_right labels are accepted.
TrialAnnotation make_annotation(std::string video_id, TimeBase time_base,
                                Frame num_frames, Side novel_side,
                                const std::vector<LabeledInterval>& intervals);

TrialAnnotation parse_annotation(std::string_view text);
std::string serialize_annotation(const TrialAnnotation& a);

/// One row of a windowed prediction file. The last window of a trial may run
/// past num_frames; it is clamped when converted to timelines.
struct WindowRecord {
  Frame start;
  Frame length;
  Label label;
  std::optional<double> score;

  friend bool operator==(const WindowRecord&, const WindowRecord&) = default;
};

enum class PredictionMode { intervals, windows };

struct PredictionSet {
  std::string video_id;
  /// Required for interval files unless a horizon is supplied at conversion.
  std::optional<Frame> num_frames;
  std::variant<std::vector<LabeledInterval>, std::vector<WindowRecord>> entries;

  PredictionMode mode() const noexcept {
    return entries.index() == 0 ? PredictionMode::intervals
                                : PredictionMode::windows;
  }
  bool scored() const noexcept;

  friend bool operator==(const PredictionSet&, const PredictionSet&) = default;
};

/// Accepts either the interval JSON document (leading '{') or the window
/// CSV. Throws ParseError on syntax and ValidationError on broken invariants.
PredictionSet parse_predictions(std::string_view text);

/// Emits interval JSON or window CSV according to the set's mode.
std::string serialize_predictions(const PredictionSet& p);

/// Per-label tracks. `unsided` holds frames predicted as side-agnostic
/// `investigate`; `combined` is the union of all investigation labels.
struct LabelTracks {
  Timeline left;
  Timeline right;
  Timeline unsided;
  Timeline combined;

  Timeline explore() const { return complement(combined); }
  bool side_resolved() const noexcept { return unsided.empty(); }
  Timeline at(Label label) const;
};

LabelTracks to_timelines(const TrialAnnotation& a);

/// `horizon` overrides the file's own frame count (typically the ground
/// truth num_frames). A window set without either uses the end of its last
/// window.
LabelTracks to_timelines(const PredictionSet& p,
                         std::optional<Frame> horizon = std::nullopt);

}  // namespace norscore
