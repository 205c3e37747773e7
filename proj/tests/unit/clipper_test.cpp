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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "norscore/clipper.hpp"
#include "norscore/error.hpp"
#include "support/oracles.hpp"

using namespace norscore;

namespace {

TrialAnnotation one_bout(Frame start, Frame end, Frame horizon) {
  return make_annotation("v", TimeBase(), horizon, Side::left,
                         {{Label::investigate_left, {start, end}, std::nullopt}});
}

std::vector<ClipRecord> of_class(const std::vector<ClipRecord>& clips, ClipClass c) {
  std::vector<ClipRecord> out;
  for (const auto& r : clips) {
    if (r.class_label == c) out.push_back(r);
  }
  return out;
}

std::vector<ClipRecord> dummy_manifest(std::size_t n) {
  std::vector<ClipRecord> m;
  for (std::size_t i = 0; i < n; ++i) {
    m.push_back({"v" + std::to_string(i % 20), i % 2 ? ClipClass::explore : ClipClass::investigate,
                 static_cast<Frame>(i) * 60, 60});
  }
  return m;
}

}  // namespace

TEST_CASE("bouts shorter than a clip yield nothing") {
  const auto clips = extract_clips(one_bout(100, 159, 159), 60);
  CHECK(of_class(clips, ClipClass::investigate).empty());
  // Explore [0,100) gives one clip.
  CHECK(of_class(clips, ClipClass::explore).size() == 1);
}

TEST_CASE("long bouts fragment from the start and drop the remainder") {
  const auto inv = of_class(extract_clips(one_bout(100, 250, 300), 60), ClipClass::investigate);
  REQUIRE(inv.size() == 2);
  CHECK(inv[0].start_frame == 100);
  CHECK(inv[1].start_frame == 160);
  CHECK(inv[0].length == 60);
}

TEST_CASE("left and right bouts that touch form one investigate source") {
  const auto a = make_annotation("v", TimeBase(), 200, Side::left,
                                 {{Label::investigate_left, {0, 40}, std::nullopt},
                                  {Label::investigate_right, {40, 80}, std::nullopt}});
  CHECK(of_class(extract_clips(a, 60), ClipClass::investigate).size() == 1);
}

TEST_CASE("clip_len must be positive") {
  CHECK_THROWS_AS(extract_clips(one_bout(0, 10, 20), 0), ValidationError);
}

TEST_CASE("clip conservation and purity on seeded annotations") {
  SplitMix64 rng(404);
  for (int i = 0; i < 500; ++i) {
    const Frame h = rng.uniform_int(100, 20000);
    const Frame clip_len = rng.uniform_int(1, 90);
    const Timeline bouts = norscore::testing::random_timeline(rng, h, 200, 400);
    std::vector<LabeledInterval> items;
    for (const auto& iv : bouts.intervals()) {
      items.push_back({rng.bernoulli(0.5) ? Label::investigate_left : Label::investigate_right,
                       iv, std::nullopt});
    }
    const auto a = make_annotation("v", TimeBase(), h, Side::left, items);
    const auto clips = extract_clips(a, clip_len);

    const Timeline inv = a.combined();
    const Timeline exp = complement(inv);
    Frame clip_frames = 0;
    bool all_divisible = true;
    for (const auto& src : {inv, exp}) {
      for (const auto& iv : src.intervals()) all_divisible &= iv.length() % clip_len == 0;
    }
    std::vector<FrameInterval> covered;
    for (const auto& c : clips) {
      REQUIRE(c.length == clip_len);
      const FrameInterval span(c.start_frame, c.start_frame + c.length);
      const Timeline& src = c.class_label == ClipClass::investigate ? inv : exp;
      REQUIRE(intersect(normalize({span}, h), src) == normalize({span}, h));
      clip_frames += c.length;
      covered.push_back(span);
    }
    REQUIRE(clip_frames <= h);
    REQUIRE((clip_frames == h) == all_divisible);
    // No two clips share a frame.
    REQUIRE(total_frames(normalize(covered, h)) == clip_frames);
  }
}

TEST_CASE("extraction is invariant under re-normalization of the annotation") {
  const auto a = make_annotation("v", TimeBase(), 1000, Side::left,
                                 {{Label::investigate_left, {0, 100}, std::nullopt},
                                  {Label::investigate_left, {50, 200}, std::nullopt},
                                  {Label::investigate_left, {200, 260}, std::nullopt}});
  const auto b = make_annotation("v", TimeBase(), 1000, Side::left,
                                 {{Label::investigate_left, {0, 260}, std::nullopt}});
  CHECK(extract_clips(a) == extract_clips(b));
}

TEST_CASE("split sizes") {
  const auto m = dummy_manifest(2243);
  const auto s = split(m, 0.75, 7);
  CHECK(s.train.size() == 1682);
  CHECK(s.validation.size() == 561);
  for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
    const auto small = split(dummy_manifest(4), 0.75, seed);
    CHECK(small.train.size() == 3);
    CHECK(small.validation.size() == 1);
  }
}

TEST_CASE("split is a seeded deterministic partition") {
  const auto m = dummy_manifest(100);
  const auto a = split(m, 0.75, 42);
  const auto b = split(m, 0.75, 42);
  const auto c = split(m, 0.75, 43);
  CHECK(a.train == b.train);
  CHECK(a.validation == b.validation);
  CHECK(a.train != c.train);

  std::multiset<Frame> seen;
  for (const auto& r : a.train) seen.insert(r.start_frame);
  for (const auto& r : a.validation) seen.insert(r.start_frame);
  REQUIRE(seen.size() == m.size());
  for (const auto& r : m) CHECK(seen.count(r.start_frame) == 1);
}

TEST_CASE("split frozen order for seed 7") {
  // Fisher-Yates over splitmix64(7); computed with an independent script.
  const auto s = split(dummy_manifest(6), 0.5, 7);
  std::vector<Frame> order;
  for (const auto& r : s.train) order.push_back(r.start_frame / 60);
  for (const auto& r : s.validation) order.push_back(r.start_frame / 60);
  CHECK(order == std::vector<Frame>{1, 5, 0, 2, 4, 3});
}

TEST_CASE("split errors") {
  CHECK_THROWS_AS(split({}, 0.75, 1), ValidationError);
  CHECK_THROWS_AS(split(dummy_manifest(3), 1.0, 1), ValidationError);
  CHECK_THROWS_AS(split(dummy_manifest(3), 0.0, 1), ValidationError);
}

TEST_CASE("manifest CSV marks every record exactly once") {
  const auto m = dummy_manifest(8);
  const auto s = split(m, 0.75, 3);
  const std::string csv = manifest_csv(m, s);
  CHECK(csv.rfind("video_id,class,start_frame,length,split\n", 0) == 0);
  std::size_t train = 0, val = 0;
  for (std::size_t pos = 0; (pos = csv.find(",train\n", pos)) != std::string::npos; ++pos) ++train;
  for (std::size_t pos = 0; (pos = csv.find(",val\n", pos)) != std::string::npos; ++pos) ++val;
  CHECK(train == 6);
  CHECK(val == 2);
  CHECK(manifest_csv(m, std::nullopt).find(",none\n") != std::string::npos);
}
