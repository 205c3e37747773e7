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

#include "norscore/annotation_io.hpp"
#include "norscore/error.hpp"
#include "norscore/random.hpp"
#include "support/oracles.hpp"

using namespace norscore;

namespace {

std::string annotation_doc(const std::string& intervals) {
  return R"({"video_id": "v01", "fps": 30, "num_frames": 9900, "novel_side": "left",
             "intervals": [)" +
         intervals + "]}";
}

std::string window_csv(const std::vector<std::pair<Frame, std::string>>& rows,
                       Frame len = 30) {
  std::string out = "video_id,window_start_frame,window_len,label\n";
  for (const auto& [start, label] : rows) {
    out += "v01," + std::to_string(start) + "," + std::to_string(len) + "," + label + "\n";
  }
  return out;
}

}  // namespace

TEST_CASE("parse a minimal annotation") {
  const auto a = parse_annotation(annotation_doc(
      R"({"label": "investigate_left", "start_frame": 150, "end_frame": 240})"));
  CHECK(a.video_id == "v01");
  CHECK(a.time_base.fps == 30);
  CHECK(a.num_frames == 9900);
  CHECK(a.novel_side == Side::left);
  REQUIRE(a.left.size() == 1);
  CHECK(a.left.intervals()[0] == FrameInterval(150, 240));
  CHECK(a.right.empty());
}

TEST_CASE("overlapping object labels are rejected") {
  const auto doc = annotation_doc(
      R"({"label": "investigate_left", "start_frame": 10, "end_frame": 20},
         {"label": "investigate_right", "start_frame": 15, "end_frame": 25})");
  try {
    parse_annotation(doc);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("overlapping object labels") != std::string::npos);
  }
}

TEST_CASE("left and right bouts may touch") {
  const auto a = parse_annotation(annotation_doc(
      R"({"label": "investigate_left", "start_frame": 10, "end_frame": 20},
         {"label": "investigate_right", "start_frame": 20, "end_frame": 25})"));
  CHECK(a.combined().size() == 1);
}

TEST_CASE("annotation parse errors") {
  SUBCASE("malformed JSON reports a line") {
    try {
      parse_annotation("{\n\"video_id\": \"x\",\n oops }");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("missing field") {
    try {
      parse_annotation(R"({"video_id": "x", "fps": 30, "num_frames": 10, "intervals": []})");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.field() == "novel_side");
    }
  }
  SUBCASE("unknown label is a hard error") {
    CHECK_THROWS_AS(parse_annotation(annotation_doc(
                        R"({"label": "investigate_lft", "start_frame": 1, "end_frame": 2})")),
                    ParseError);
  }
  SUBCASE("non-integer frame") {
    CHECK_THROWS_AS(parse_annotation(annotation_doc(
                        R"({"label": "investigate_left", "start_frame": 1.5, "end_frame": 2})")),
                    ParseError);
  }
  SUBCASE("out of range is a validation error") {
    CHECK_THROWS_AS(parse_annotation(annotation_doc(
                        R"({"label": "investigate_left", "start_frame": 9890, "end_frame": 9901})")),
                    ValidationError);
  }
  SUBCASE("zero-length interval") {
    CHECK_THROWS_AS(parse_annotation(annotation_doc(
                        R"({"label": "investigate_left", "start_frame": 5, "end_frame": 5})")),
                    ValidationError);
  }
}

TEST_CASE("annotation round trip on seeded random annotations") {
  SplitMix64 rng(17);
  for (int i = 0; i < 100; ++i) {
    const Frame h = rng.uniform_int(50, 5000);
    const Timeline all = norscore::testing::random_timeline(rng, h, 90, 300);
    std::vector<LabeledInterval> items;
    for (const auto& iv : all.intervals()) {
      items.push_back({rng.bernoulli(0.5) ? Label::investigate_left : Label::investigate_right,
                       iv, std::nullopt});
    }
    const auto a = make_annotation("vid_" + std::to_string(i), TimeBase(static_cast<int>(rng.uniform_int(1, 60))),
                                   h, rng.bernoulli(0.5) ? Side::left : Side::right, items);
    const auto once = parse_annotation(serialize_annotation(a));
    CHECK(once == a);
    CHECK(parse_annotation(serialize_annotation(once)) == once);
  }
}

TEST_CASE("window CSV predictions") {
  std::vector<std::pair<Frame, std::string>> rows;
  for (Frame k = 0; k < 330; ++k) rows.emplace_back(k * 30, k % 7 == 0 ? "investigate" : "explore");
  const auto p = parse_predictions(window_csv(rows));
  CHECK(p.mode() == PredictionMode::windows);
  CHECK(std::get<std::vector<WindowRecord>>(p.entries).size() == 330);
  CHECK_FALSE(p.scored());

  const auto tracks = to_timelines(p);
  CHECK(tracks.combined.horizon() == 9900);
  CHECK(total_frames(tracks.combined) == 48 * 30);
  CHECK_FALSE(tracks.side_resolved());
}

TEST_CASE("overlapping windows are rejected") {
  CHECK_THROWS_AS(parse_predictions(window_csv({{0, "explore"}, {15, "explore"}})),
                  ValidationError);
  CHECK_THROWS_AS(parse_predictions(window_csv({{0, "explore"}, {45, "explore"}})),
                  ValidationError);
}

TEST_CASE("mixed scored and unscored rows are rejected") {
  const std::string csv =
      "video_id,window_start_frame,window_len,label,score\n"
      "v,0,30,explore,0.1\n"
      "v,30,30,investigate,\n";
  CHECK_THROWS_AS(parse_predictions(csv), ValidationError);
  const std::string ok =
      "video_id,window_start_frame,window_len,label,score\n"
      "v,0,30,explore,0.1\n"
      "v,30,30,investigate,0.9\n";
  CHECK(parse_predictions(ok).scored());
}

TEST_CASE("unknown window label and bad header") {
  CHECK_THROWS_AS(parse_predictions(window_csv({{0, "investigating"}})), ParseError);
  CHECK_THROWS_AS(parse_predictions("video,start,len,label\nv,0,30,explore\n"), ParseError);
}

TEST_CASE("adjacent positive windows coalesce into one event") {
  const auto p = parse_predictions(
      window_csv({{0, "investigate"}, {30, "investigate"}, {60, "explore"}}));
  const auto t = to_timelines(p);
  REQUIRE(t.combined.size() == 1);
  CHECK(t.combined.intervals()[0] == FrameInterval(0, 60));
  CHECK(total_frames(t.explore()) == 30);
}

TEST_CASE("final partial window is clamped to the trial length") {
  const auto p = parse_predictions(
      window_csv({{0, "explore"}, {30, "explore"}, {60, "investigate_right"}}));
  const auto t = to_timelines(p, 75);
  CHECK(t.right.intervals()[0] == FrameInterval(60, 75));
  CHECK_THROWS_AS(to_timelines(p, 200), ValidationError);  // windows fall short
  CHECK_THROWS_AS(to_timelines(p, 50), ValidationError);   // window beyond the end
}

TEST_CASE("annotation tracks combine both objects") {
  const auto a = make_annotation("v", TimeBase(30), 200, Side::left,
                                 {{Label::investigate_left, {10, 40}, std::nullopt},
                                  {Label::investigate_right, {100, 160}, std::nullopt}});
  const auto t = to_timelines(a);
  CHECK(t.combined == normalize({{10, 40}, {100, 160}}, 200));
  CHECK(t.at(Label::investigate_left) == a.left);
  CHECK(t.at(Label::explore) == complement(t.combined));
}

TEST_CASE("interval-mode file equals its window-mode equivalent") {
  SplitMix64 rng(71);
  for (int i = 0; i < 50; ++i) {
    const Frame n_windows = rng.uniform_int(1, 40);
    const Frame len = rng.uniform_int(1, 30);
    const Frame horizon = n_windows * len - rng.uniform_int(0, len - 1);
    std::string csv = "video_id,window_start_frame,window_len,label\n";
    std::string intervals;
    for (Frame k = 0; k < n_windows; ++k) {
      const auto pick = rng.uniform_int(0, 2);
      const char* label = pick == 0 ? "explore" : pick == 1 ? "investigate_left" : "investigate_right";
      csv += "v," + std::to_string(k * len) + "," + std::to_string(len) + "," + label + "\n";
      if (pick != 0) {
        if (!intervals.empty()) intervals += ",";
        intervals += R"({"label": ")" + std::string(label) + R"(", "start_frame": )" +
                     std::to_string(k * len) + R"(, "end_frame": )" +
                     std::to_string(std::min(horizon, (k + 1) * len)) + "}";
      }
    }
    const std::string json = R"({"video_id": "v", "num_frames": )" + std::to_string(horizon) +
                             R"(, "intervals": [)" + intervals + "]}";
    const auto from_csv = to_timelines(parse_predictions(csv), horizon);
    const auto from_json = to_timelines(parse_predictions(json));
    REQUIRE(from_csv.left == from_json.left);
    REQUIRE(from_csv.right == from_json.right);
    REQUIRE(from_csv.combined == from_json.combined);
  }
}

TEST_CASE("per-label totals partition the combined total") {
  SplitMix64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const Frame h = rng.uniform_int(10, 3000);
    const Timeline all = norscore::testing::random_timeline(rng, h, 60, 60);
    std::vector<LabeledInterval> items;
    for (const auto& iv : all.intervals()) {
      items.push_back({rng.bernoulli(0.4) ? Label::investigate_left : Label::investigate_right,
                       iv, std::nullopt});
    }
    const auto t = to_timelines(make_annotation("v", TimeBase(), h, Side::right, items));
    REQUIRE(total_frames(t.left) + total_frames(t.right) == total_frames(t.combined));
    REQUIRE(total_frames(t.combined) + total_frames(t.explore()) == h);
  }
}

TEST_CASE("prediction serialization round trips in both formats") {
  SplitMix64 rng(8);
  for (int i = 0; i < 30; ++i) {
    PredictionSet windows;
    windows.video_id = "w" + std::to_string(i);
    std::vector<WindowRecord> ws;
    const bool scored = rng.bernoulli(0.5);
    const Frame n = rng.uniform_int(1, 20);
    for (Frame k = 0; k < n; ++k) {
      ws.push_back({k * 30, 30, static_cast<Label>(rng.uniform_int(0, 3)),
                    scored ? std::optional<double>(rng.uniform01()) : std::nullopt});
    }
    windows.entries = ws;
    REQUIRE(parse_predictions(serialize_predictions(windows)) == windows);

    PredictionSet intervals;
    intervals.video_id = "i" + std::to_string(i);
    intervals.num_frames = 1000;
    std::vector<LabeledInterval> items;
    const Timeline events = norscore::testing::random_timeline(rng, 1000, 50, 50);
    for (const auto& iv : events.intervals()) {
      items.push_back({Label::investigate, iv,
                       scored ? std::optional<double>(rng.uniform01()) : std::nullopt});
    }
    intervals.entries = items;
    REQUIRE(parse_predictions(serialize_predictions(intervals)) == intervals);
  }
}
