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

#include <algorithm>
#include <cmath>

#include "norscore/error.hpp"
#include "norscore/nor.hpp"
#include "support/oracles.hpp"

using namespace norscore;

namespace {

TrialAnnotation trial(std::vector<FrameInterval> left, std::vector<FrameInterval> right,
                      Side novel = Side::left, Frame horizon = 9900, int fps = 30,
                      std::string id = "v") {
  std::vector<LabeledInterval> items;
  for (const auto& iv : left) items.push_back({Label::investigate_left, iv, std::nullopt});
  for (const auto& iv : right) items.push_back({Label::investigate_right, iv, std::nullopt});
  return make_annotation(std::move(id), TimeBase(fps), horizon, novel, items);
}

NorMetrics with_values(std::string id, double n, std::optional<double> cd_like) {
  NorMetrics m;
  m.video_id = std::move(id);
  m.n = static_cast<std::int64_t>(n);
  m.cd = cd_like.value_or(0.0);
  m.me = cd_like;
  m.lf = cd_like;
  m.ll = cd_like;
  m.ri = cd_like;
  return m;
}

TrialAnnotation random_trial(SplitMix64& rng, Frame horizon, int fps, const std::string& id) {
  const Timeline bouts = norscore::testing::random_timeline(rng, horizon, 90, 300);
  std::vector<FrameInterval> l, r;
  for (const auto& iv : bouts.intervals()) (rng.bernoulli(0.5) ? l : r).push_back(iv);
  return trial(l, r, rng.bernoulli(0.5) ? Side::left : Side::right, horizon, fps, id);
}

}  // namespace

TEST_CASE("metrics of a two-bout trial") {
  const auto m = nor_metrics(trial({{10, 40}, {100, 160}}, {}));
  CHECK(m.n == 2);
  CHECK(m.cd == 3.0);
  CHECK(*m.me == 1.5);
  CHECK(*m.lf == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(*m.ll == doctest::Approx(10.0 / 3.0).epsilon(1e-15));
  CHECK(*m.ri == 1.0);
  CHECK(m.n_left == 2);
  CHECK(m.n_right == 0);
}

TEST_CASE("latency offset convention") {
  const auto m = nor_metrics(trial({{10, 40}, {100, 160}}, {}), Latency::offset);
  CHECK(*m.lf == doctest::Approx(40.0 / 30.0));
  CHECK(*m.ll == doctest::Approx(160.0 / 30.0));
}

TEST_CASE("recognition index ratio") {
  // novel 3 s, familiar 1 s at 30 fps
  const auto m = nor_metrics(trial({{0, 90}}, {{200, 230}}));
  CHECK(*m.ri == 0.75);
  const auto swapped = nor_metrics(trial({{0, 90}}, {{200, 230}}, Side::right));
  CHECK(*swapped.ri == 0.25);
}

TEST_CASE("no investigations leaves metrics explicitly absent") {
  const auto m = nor_metrics(trial({}, {}));
  CHECK(m.n == 0);
  CHECK(m.cd == 0.0);
  CHECK_FALSE(m.me);
  CHECK_FALSE(m.lf);
  CHECK_FALSE(m.ll);
  CHECK_FALSE(m.ri);
  CHECK(m.absent_reason == kNoInvestigations);
}

TEST_CASE("side-agnostic predictions have no RI") {
  LabelTracks t{Timeline(100), Timeline(100), normalize({{10, 20}}, 100),
                normalize({{10, 20}}, 100)};
  const auto m = nor_metrics("v", t, Side::left, TimeBase(30));
  CHECK(m.n == 1);
  CHECK_FALSE(m.ri);
  CHECK(m.ri_absent_reason == kSideAgnostic);
}

TEST_CASE("touching left and right bouts count as one investigation") {
  const auto m = nor_metrics(trial({{10, 20}}, {{20, 50}}));
  CHECK(m.n == 1);
  CHECK(m.n_left == 1);
  CHECK(m.n_right == 1);
}

TEST_CASE("metric identities on seeded trials") {
  SplitMix64 rng(606);
  for (int i = 0; i < 300; ++i) {
    const int fps = static_cast<int>(rng.uniform_int(1, 60));
    const auto a = random_trial(rng, rng.uniform_int(100, 20000), fps, "v");
    const auto m = nor_metrics(a);
    if (m.n == 0) continue;
    REQUIRE(std::abs(*m.me * static_cast<double>(m.n) - m.cd) <= 1e-9);
    REQUIRE(*m.lf <= *m.ll);

    TrialAnnotation swapped = a;
    swapped.novel_side = opposite(a.novel_side);
    REQUIRE(std::abs(*nor_metrics(swapped).ri - (1.0 - *m.ri)) <= 1e-12);

    // Same trial at double the frame rate with doubled frame indices.
    std::vector<FrameInterval> l2, r2;
    for (const auto& iv : a.left.intervals()) l2.emplace_back(2 * iv.start(), 2 * iv.end());
    for (const auto& iv : a.right.intervals()) r2.emplace_back(2 * iv.start(), 2 * iv.end());
    const auto m2 = nor_metrics(trial(l2, r2, a.novel_side, 2 * a.num_frames, 2 * fps));
    REQUIRE(m2.n == m.n);
    REQUIRE(m2.cd == m.cd);
    REQUIRE(m2.me == m.me);
    REQUIRE(m2.lf == m.lf);
    REQUIRE(m2.ll == m.ll);
    REQUIRE(m2.ri == m.ri);
  }
}

TEST_CASE("compare: predictions equal to ground truth") {
  SplitMix64 rng(9);
  std::vector<NorMetrics> gt;
  for (int i = 0; i < 5; ++i) {
    gt.push_back(nor_metrics(random_trial(rng, 9900, 30, "v" + std::to_string(i))));
  }
  const auto s = compare(gt, gt);
  for (const auto& m : s.metrics) {
    if (!m.r_squared) {
      CHECK(m.reason == "degenerate target variance");
      continue;
    }
    CHECK(*m.r_squared == 1.0);
    CHECK(*m.mean_error == 0.0);
    CHECK(*m.std_error == 0.0);
  }
}

TEST_CASE("compare: negative R squared") {
  std::vector<NorMetrics> gt{with_values("a", 1, 1.0), with_values("b", 2, 2.0),
                             with_values("c", 3, 3.0)};
  std::vector<NorMetrics> pred{with_values("a", 3, 3.0), with_values("b", 3, 3.0),
                               with_values("c", 3, 3.0)};
  const auto s = compare(gt, pred);
  for (const auto& m : s.metrics) {
    CHECK(*m.mean_error == 1.0);
    CHECK(*m.std_error == 1.0);
    CHECK(*m.r_squared == -1.5);
    CHECK(*m.gt_mean == 2.0);
    CHECK(m.n_pairs == 3);
  }
}

TEST_CASE("compare: alignment is by video id") {
  std::vector<NorMetrics> gt{with_values("a", 1, 1.0), with_values("b", 2, 2.0),
                             with_values("c", 3, 3.0)};
  std::vector<NorMetrics> pred{with_values("c", 3, 3.0), with_values("a", 3, 3.0),
                               with_values("b", 3, 3.0)};
  CHECK(*compare(gt, pred).at(NorMetric::n).r_squared == -1.5);

  std::vector<NorMetrics> other{with_values("a", 1, 1.0), with_values("b", 2, 2.0),
                                with_values("x", 3, 3.0)};
  CHECK_THROWS_AS(compare(gt, other), ValidationError);
  CHECK_THROWS_AS(compare(gt, std::vector<NorMetrics>(gt.begin(), gt.begin() + 2)),
                  ValidationError);
}

TEST_CASE("compare: absent values are excluded per metric") {
  std::vector<NorMetrics> gt{with_values("a", 1, 1.0), with_values("b", 2, std::nullopt),
                             with_values("c", 3, 3.0)};
  std::vector<NorMetrics> pred = gt;
  const auto s = compare(gt, pred);
  CHECK(s.at(NorMetric::n).n_pairs == 3);
  CHECK(s.at(NorMetric::lf).n_pairs == 2);
  CHECK(s.at(NorMetric::lf).n_excluded == 1);

  std::vector<NorMetrics> sparse{with_values("a", 1, 1.0), with_values("b", 2, std::nullopt)};
  const auto t = compare(sparse, sparse);
  CHECK_FALSE(t.at(NorMetric::ri).r_squared);
  CHECK(t.at(NorMetric::ri).reason == "fewer than 2 usable pairs");

  std::vector<NorMetrics> flat{with_values("a", 2, 2.0), with_values("b", 2, 2.0)};
  CHECK(compare(flat, flat).at(NorMetric::n).reason == "degenerate target variance");
  CHECK(compare(flat, flat).at(NorMetric::n).mean_error == 0.0);
}

TEST_CASE("compare: translation shifts mean error only") {
  SplitMix64 rng(44);
  for (int i = 0; i < 100; ++i) {
    std::vector<NorMetrics> gt, pred, shifted;
    const double c = rng.uniform01() * 10.0 - 5.0;
    const int n = static_cast<int>(rng.uniform_int(2, 20));
    for (int k = 0; k < n; ++k) {
      const double g = rng.uniform01() * 100.0;
      const double p = g + rng.uniform01() * 10.0 - 5.0;
      gt.push_back(with_values("v" + std::to_string(k), k, g));
      pred.push_back(with_values("v" + std::to_string(k), k, p));
      shifted.push_back(with_values("v" + std::to_string(k), k, p + c));
    }
    const auto a = compare(gt, pred).at(NorMetric::cd);
    const auto b = compare(gt, shifted).at(NorMetric::cd);
    REQUIRE(*b.mean_error == doctest::Approx(*a.mean_error + c).epsilon(1e-9));
    REQUIRE(*b.std_error == doctest::Approx(*a.std_error).epsilon(1e-9));
  }
}

TEST_CASE("compare is permutation equivariant") {
  SplitMix64 rng(45);
  std::vector<NorMetrics> gt, pred;
  for (int k = 0; k < 12; ++k) {
    gt.push_back(with_values("v" + std::to_string(k), k, rng.uniform01()));
    pred.push_back(with_values("v" + std::to_string(k), k + 1, rng.uniform01()));
  }
  const auto base = compare(gt, pred);
  shuffle(pred, rng);
  const auto again = compare(gt, pred);
  for (NorMetric m : kNorMetrics) {
    CHECK(again.at(m).r_squared == base.at(m).r_squared);
    CHECK(again.at(m).std_error == base.at(m).std_error);
  }
}

TEST_CASE("CSV layouts") {
  const std::vector<NorMetrics> rows{nor_metrics(trial({{10, 40}, {100, 160}}, {})),
                                     nor_metrics(trial({}, {}, Side::left, 9900, 30, "w"))};
  const std::string csv = metrics_csv(rows);
  CHECK(csv.rfind("video_id,n,cd_s,me_s,lf_s,ll_s,ri\n", 0) == 0);
  CHECK(csv.find("\nv,2,3,1.5,") != std::string::npos);
  CHECK(csv.find("\nw,0,0,,,,\n") != std::string::npos);

  const auto cmp = comparison_csv(compare(rows, rows));
  CHECK(cmp.rfind("metric,gt_mean,r_squared,mean_error,std_error,n_pairs,n_excluded\n", 0) == 0);
  CHECK(cmp.find("\nRI,1,,,,1,1\n") != std::string::npos);
}
