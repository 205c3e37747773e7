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
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "norscore/annotation_io.hpp"
#include "norscore/random.hpp"
#include "norscore/segmental.hpp"

namespace norscore {

/// Alternating explore/investigate bout model for synthetic trials. Bout and
/// gap lengths are uniform over whole frames within the configured bounds.
struct BoutModel {
  double investigation_min_s = 0.2;
  double investigation_max_s = 3.0;
  double gap_min_s = 1.0;
  double gap_max_s = 20.0;
  /// Probability that a bout targets the novel object.
  double p_novel = 0.5;
  double trial_s = 330.0;
  int fps = 30;
  Side novel_side = Side::left;

  /// Throws ValidationError when a bound is non-positive, a range is
  /// reversed, or the trial is not longer than the longest bout.
  void validate() const;

  Frame investigation_min_frames() const;
  Frame investigation_max_frames() const;
  Frame gap_min_frames() const;
  Frame gap_max_frames() const;
  Frame trial_frames() const;
};

/// Reads `key = value` lines (`#` starts a comment). Keys:
/// investigation_min_s, investigation_max_s, gap_min_s, gap_max_s, p_novel,
/// trial_s, fps, novel_side. Unset keys keep their defaults.
BoutModel parse_bout_config(std::string_view text, BoutModel base = {});

/// Deterministic per (model, seed). Starts with an exploration gap, then
/// alternates bout/gap; stops before the first bout that would not fit.
TrialAnnotation generate_trial(const BoutModel& model, std::uint64_t seed,
                               std::string video_id = {});

// Perturbations edit the ground-truth track. Event and gap indices refer to
// the ground-truth events (gap j lies between events j and j+1), so a
// composed spec is order-independent except for validation.

/// Push every surviving event boundary outward by `frames`.
struct Dilate {
  Frame frames;
};
/// Pull every surviving event boundary inward by `frames`.
struct Erode {
  Frame frames;
};
struct DeleteEvent {
  std::size_t index;
};
/// New predicted event in ground-truth-negative space.
struct InsertEvent {
  Frame start;
  Frame length;
};
/// Remove [event.start + offset, + length) from the prediction.
struct PunchHole {
  std::size_t event;
  Frame offset;
  Frame length;
};
/// Fill gap j; the facing boundaries of events j and j+1 reset to exact.
struct BridgeGap {
  std::size_t gap;
};

using PerturbationOp =
    std::variant<Dilate, Erode, DeleteEvent, InsertEvent, PunchHole, BridgeGap>;
using PerturbationSpec = std::vector<PerturbationOp>;

std::string to_string(const PerturbationOp& op);

/// Expected segmental frame counts for a perturbed prediction.
struct ErrorLedger {
  Frame horizon = 0;
  PerCategory<Frame> frames{};

  Frame of(Category c) const noexcept { return frames[index_of(c)]; }
};

struct Perturbed {
  Timeline pred;
  ErrorLedger ledger;
};

/// Applies `spec` to `gt` and derives the ledger analytically. Throws
/// ValidationError (naming the operation) for any edit that would collide,
/// leave the horizon, or otherwise blur which category a frame falls in.
Perturbed perturb(const Timeline& gt, const PerturbationSpec& spec);

enum class OpKind { dilate, erode, delete_event, insert_event, punch_hole, bridge_gap };

inline constexpr std::array<OpKind, 6> kOpKinds{
    OpKind::dilate,     OpKind::erode,      OpKind::delete_event,
    OpKind::insert_event, OpKind::punch_hole, OpKind::bridge_gap,
};

/// Random parameters for one operation of `kind` sized to `gt`. The result
/// is not guaranteed valid; perturb() decides.
PerturbationOp random_op(OpKind kind, const Timeline& gt, SplitMix64& rng);

/// Grows a valid spec of up to `n_ops` operations by rejection sampling.
/// When `first` is given the result starts with an op of that kind (if any
/// valid one is found).
PerturbationSpec random_spec(const Timeline& gt, SplitMix64& rng,
                             std::size_t n_ops,
                             std::optional<OpKind> first = std::nullopt);

/// Gives every predicted event the side of the first ground-truth bout it
/// overlaps, or a coin flip when it overlaps none.
std::vector<LabeledInterval> assign_sides(const Timeline& pred,
                                          const TrialAnnotation& gt,
                                          SplitMix64& rng);

}  // namespace norscore
