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
#include <span>
#include <string>
#include <vector>

namespace norscore {

/// Frame index or frame count. The frame is the canonical time unit; seconds
/// only appear at reporting boundaries through TimeBase.
using Frame = std::int64_t;

/// Half-open frame interval [start, end). Zero-length and negative intervals
/// are rejected at construction.
class FrameInterval {
 public:
  FrameInterval(Frame start, Frame end);

  Frame start() const noexcept { return start_; }
  Frame end() const noexcept { return end_; }
  Frame length() const noexcept { return end_ - start_; }
  bool contains(Frame f) const noexcept { return f >= start_ && f < end_; }

  friend bool operator==(const FrameInterval&, const FrameInterval&) = default;

 private:
  Frame start_;
  Frame end_;
};

std::string to_string(const FrameInterval& iv);

/// Normalized binary activity track over [0, horizon): intervals sorted,
/// disjoint and non-adjacent. Only constructible through normalize() or as
/// an empty track, so every instance satisfies the invariants.
class Timeline {
 public:
  explicit Timeline(Frame horizon);

  Frame horizon() const noexcept { return horizon_; }
  std::span<const FrameInterval> intervals() const& noexcept {
    return intervals_;
  }
  // A span into a temporary would dangle.
  std::span<const FrameInterval> intervals() const&& = delete;
  bool empty() const noexcept { return intervals_.empty(); }
  std::size_t size() const noexcept { return intervals_.size(); }

  /// True if frame `f` is covered. O(log n).
  bool contains(Frame f) const noexcept;

  friend bool operator==(const Timeline&, const Timeline&) = default;

 private:
  friend Timeline normalize(std::vector<FrameInterval> raw, Frame horizon);

  Frame horizon_;
  std::vector<FrameInterval> intervals_;
};

/// Sorts and merges overlapping or touching intervals. Throws
/// ValidationError if the horizon is not positive or an interval leaves
/// [0, horizon).
Timeline normalize(std::vector<FrameInterval> raw, Frame horizon);

Timeline complement(const Timeline& t);

/// Set union / intersection on frames. Both throw ValidationError on a
/// horizon mismatch.
Timeline unite(const Timeline& a, const Timeline& b);
Timeline intersect(const Timeline& a, const Timeline& b);

/// Frames in `a` not in `b`.
Timeline subtract(const Timeline& a, const Timeline& b);

Frame total_frames(const Timeline& t) noexcept;

/// Maximal positive runs, in order. For a normalized track these are exactly
/// its intervals.
std::vector<FrameInterval> events(const Timeline& t);

/// Frames-per-second conversion used at reporting boundaries.
struct TimeBase {
  int fps = 30;

  explicit TimeBase(int frames_per_second = 30);

  double seconds(Frame frames) const noexcept {
    return static_cast<double>(frames) / static_cast<double>(fps);
  }

  friend bool operator==(const TimeBase&, const TimeBase&) = default;
};

}  // namespace norscore
