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

#include "norscore/clipper.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "norscore/error.hpp"
#include "norscore/random.hpp"
#include "norscore/text.hpp"

namespace norscore {

std::string_view to_string(ClipClass c) noexcept {
  return c == ClipClass::explore ? "explore" : "investigate";
}

std::optional<ClipClass> parse_clip_class(std::string_view s) noexcept {
  if (s == "explore") return ClipClass::explore;
  if (s == "investigate") return ClipClass::investigate;
  return std::nullopt;
}

std::vector<ClipRecord> extract_clips(const TrialAnnotation& a, Frame clip_len) {
  if (clip_len <= 0) {
    throw ValidationError("clip_len must be positive, got " +
                          std::to_string(clip_len));
  }
  const Timeline investigate = a.combined();
  const Timeline explore = complement(investigate);

  std::vector<ClipRecord> out;
  auto fragment = [&](const Timeline& track, ClipClass cls) {
    for (const auto& iv : events(track)) {
      const Frame count = iv.length() / clip_len;
      for (Frame k = 0; k < count; ++k) {
        out.push_back({a.video_id, cls, iv.start() + k * clip_len, clip_len});
      }
    }
  };
  fragment(investigate, ClipClass::investigate);
  fragment(explore, ClipClass::explore);
  std::sort(out.begin(), out.end(), [](const ClipRecord& x, const ClipRecord& y) {
    return x.start_frame < y.start_frame;
  });
  return out;
}

std::size_t train_size(std::size_t n, double ratio) {
  return static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n)));
}

SplitAssignment split(const std::vector<ClipRecord>& manifest, double ratio,
                      std::uint64_t seed) {
  if (manifest.empty()) throw ValidationError("cannot split an empty manifest");
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw ValidationError("split ratio must lie in (0,1), got " +
                          text::format_double(ratio));
  }
  std::vector<ClipRecord> shuffled = manifest;
  SplitMix64 rng(seed);
  shuffle(shuffled, rng);
  const auto n_train = static_cast<std::ptrdiff_t>(train_size(shuffled.size(), ratio));
  SplitAssignment out;
  out.seed = seed;
  out.ratio = ratio;
  out.train.assign(shuffled.begin(), shuffled.begin() + n_train);
  out.validation.assign(shuffled.begin() + n_train, shuffled.end());
  return out;
}

std::string manifest_csv(const std::vector<ClipRecord>& manifest,
                         const std::optional<SplitAssignment>& split) {
  using Key = std::tuple<std::string, ClipClass, Frame>;
  std::map<Key, std::string_view> tag;
  if (split) {
    for (const auto& c : split->train) {
      tag[{c.video_id, c.class_label, c.start_frame}] = "train";
    }
    for (const auto& c : split->validation) {
      tag[{c.video_id, c.class_label, c.start_frame}] = "val";
    }
  }
  std::string out = "video_id,class,start_frame,length,split\n";
  for (const auto& c : manifest) {
    auto it = tag.find({c.video_id, c.class_label, c.start_frame});
    out += text::csv_line({c.video_id, std::string(to_string(c.class_label)),
                           std::to_string(c.start_frame),
                           std::to_string(c.length),
                           std::string(it == tag.end() ? "none" : it->second)});
  }
  return out;
}

}  // namespace norscore
