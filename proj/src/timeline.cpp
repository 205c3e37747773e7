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

#include "norscore/timeline.hpp"

#include <algorithm>

#include "norscore/error.hpp"

namespace norscore {

FrameInterval::FrameInterval(Frame start, Frame end) : start_(start), end_(end) {
  if (start < 0) {
    throw ValidationError("interval " + to_string(*this) +
                          " starts before frame 0");
  }
  if (start >= end) {
    throw ValidationError("interval " + to_string(*this) +
                          " is empty or reversed");
  }
}

std::string to_string(const FrameInterval& iv) {
  return "[" + std::to_string(iv.start()) + "," + std::to_string(iv.end()) +
         ")";
}

Timeline::Timeline(Frame horizon) : horizon_(horizon) {
  if (horizon <= 0) {
    throw ValidationError("timeline horizon must be positive, got " +
                          std::to_string(horizon));
  }
}

bool Timeline::contains(Frame f) const noexcept {
  auto it = std::upper_bound(
      intervals_.begin(), intervals_.end(), f,
      [](Frame x, const FrameInterval& iv) { return x < iv.start(); });
  if (it == intervals_.begin()) return false;
  return std::prev(it)->contains(f);
}

Timeline normalize(std::vector<FrameInterval> raw, Frame horizon) {
  Timeline out(horizon);
  for (const auto& iv : raw) {
    if (iv.end() > horizon) {
      throw ValidationError("interval " + to_string(iv) +
                            " lies outside [0," + std::to_string(horizon) +
                            ")");
    }
  }
  std::sort(raw.begin(), raw.end(),
            [](const FrameInterval& a, const FrameInterval& b) {
              return a.start() < b.start() ||
                     (a.start() == b.start() && a.end() < b.end());
            });
  auto& merged = out.intervals_;
  merged.reserve(raw.size());
  for (const auto& iv : raw) {
    if (!merged.empty() && iv.start() <= merged.back().end()) {
      if (iv.end() > merged.back().end()) {
        merged.back() = FrameInterval(merged.back().start(), iv.end());
      }
    } else {
      merged.push_back(iv);
    }
  }
  return out;
}

namespace {

void require_same_horizon(const Timeline& a, const Timeline& b) {
  if (a.horizon() != b.horizon()) {
    throw ValidationError("horizon mismatch: " + std::to_string(a.horizon()) +
                          " vs " + std::to_string(b.horizon()));
  }
}

}  // namespace

Timeline complement(const Timeline& t) {
  std::vector<FrameInterval> gaps;
  gaps.reserve(t.size() + 1);
  Frame cursor = 0;
  for (const auto& iv : t.intervals()) {
    if (iv.start() > cursor) gaps.emplace_back(cursor, iv.start());
    cursor = iv.end();
  }
  if (cursor < t.horizon()) gaps.emplace_back(cursor, t.horizon());
  return normalize(std::move(gaps), t.horizon());
}

Timeline unite(const Timeline& a, const Timeline& b) {
  require_same_horizon(a, b);
  std::vector<FrameInterval> all(a.intervals().begin(), a.intervals().end());
  all.insert(all.end(), b.intervals().begin(), b.intervals().end());
  return normalize(std::move(all), a.horizon());
}

Timeline intersect(const Timeline& a, const Timeline& b) {
  require_same_horizon(a, b);
  std::vector<FrameInterval> out;
  auto ia = a.intervals().begin();
  auto ib = b.intervals().begin();
  while (ia != a.intervals().end() && ib != b.intervals().end()) {
    const Frame lo = std::max(ia->start(), ib->start());
    const Frame hi = std::min(ia->end(), ib->end());
    if (lo < hi) out.emplace_back(lo, hi);
    if (ia->end() < ib->end()) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return normalize(std::move(out), a.horizon());
}

Timeline subtract(const Timeline& a, const Timeline& b) {
  return intersect(a, complement(b));
}

Frame total_frames(const Timeline& t) noexcept {
  Frame sum = 0;
  for (const auto& iv : t.intervals()) sum += iv.length();
  return sum;
}

std::vector<FrameInterval> events(const Timeline& t) {
  return {t.intervals().begin(), t.intervals().end()};
}

TimeBase::TimeBase(int frames_per_second) : fps(frames_per_second) {
  if (fps <= 0) {
    throw ValidationError("fps must be positive, got " + std::to_string(fps));
  }
}

}  // namespace norscore
