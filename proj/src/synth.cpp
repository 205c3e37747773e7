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

#include "norscore/synth.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "norscore/error.hpp"
#include "norscore/text.hpp"

namespace norscore {

namespace {

// Seconds-to-frames bounds tolerate the representation error of values such
// as 0.2 * 30.
constexpr double kRoundingSlack = 1e-9;

Frame ceil_frames(double seconds, int fps) {
  return std::max<Frame>(1, static_cast<Frame>(std::ceil(seconds * fps - kRoundingSlack)));
}

Frame floor_frames(double seconds, int fps) {
  return static_cast<Frame>(std::floor(seconds * fps + kRoundingSlack));
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

void BoutModel::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ValidationError(std::string(name) + " must be positive");
    }
  };
  positive(investigation_min_s, "investigation_min_s");
  positive(investigation_max_s, "investigation_max_s");
  positive(gap_min_s, "gap_min_s");
  positive(gap_max_s, "gap_max_s");
  positive(trial_s, "trial_s");
  if (fps <= 0) throw ValidationError("fps must be positive");
  if (!(p_novel >= 0.0 && p_novel <= 1.0)) {
    throw ValidationError("p_novel must lie in [0,1]");
  }
  if (investigation_min_frames() > investigation_max_frames()) {
    throw ValidationError("investigation duration range is empty at this fps");
  }
  if (gap_min_frames() > gap_max_frames()) {
    throw ValidationError("gap duration range is empty at this fps");
  }
  if (trial_frames() <= investigation_max_frames()) {
    throw ValidationError("trial must be longer than the longest bout");
  }
}

Frame BoutModel::investigation_min_frames() const {
  return ceil_frames(investigation_min_s, fps);
}
Frame BoutModel::investigation_max_frames() const {
  return floor_frames(investigation_max_s, fps);
}
Frame BoutModel::gap_min_frames() const { return ceil_frames(gap_min_s, fps); }
Frame BoutModel::gap_max_frames() const { return floor_frames(gap_max_s, fps); }
Frame BoutModel::trial_frames() const {
  return static_cast<Frame>(std::llround(trial_s * fps));
}

BoutModel parse_bout_config(std::string_view text, BoutModel base) {
  BoutModel m = base;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const std::string content = trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", line_no);
    const std::string key = trim(std::string_view(content).substr(0, eq));
    std::string value = trim(std::string_view(content).substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }

    auto number = [&]() {
      auto v = text::parse_double(value);
      if (!v) throw ParseError("expected a number", line_no, key);
      return *v;
    };
    if (key == "investigation_min_s") {
      m.investigation_min_s = number();
    } else if (key == "investigation_max_s") {
      m.investigation_max_s = number();
    } else if (key == "gap_min_s") {
      m.gap_min_s = number();
    } else if (key == "gap_max_s") {
      m.gap_max_s = number();
    } else if (key == "p_novel") {
      m.p_novel = number();
    } else if (key == "trial_s") {
      m.trial_s = number();
    } else if (key == "fps") {
      auto v = text::parse_int(value);
      if (!v || *v <= 0 || *v > 100000) throw ParseError("expected a positive integer", line_no, key);
      m.fps = static_cast<int>(*v);
    } else if (key == "novel_side") {
      auto side = parse_side(value);
      if (!side) throw ParseError("expected left or right", line_no, key);
      m.novel_side = *side;
    } else {
      throw ParseError("unknown key", line_no, key);
    }
  }
  m.validate();
  return m;
}

TrialAnnotation generate_trial(const BoutModel& model, std::uint64_t seed,
                               std::string video_id) {
  model.validate();
  if (video_id.empty()) video_id = "synth_" + std::to_string(seed);
  SplitMix64 rng(seed);
  const Frame horizon = model.trial_frames();
  const Frame bout_lo = model.investigation_min_frames();
  const Frame bout_hi = model.investigation_max_frames();
  const Frame gap_lo = model.gap_min_frames();
  const Frame gap_hi = model.gap_max_frames();

  std::vector<LabeledInterval> bouts;
  Frame t = 0;
  while (true) {
    t += rng.uniform_int(gap_lo, gap_hi);
    const Frame len = rng.uniform_int(bout_lo, bout_hi);
    const bool novel = rng.bernoulli(model.p_novel);
    if (t + len > horizon) break;
    const Side side = novel ? model.novel_side : opposite(model.novel_side);
    bouts.push_back({side == Side::left ? Label::investigate_left
                                        : Label::investigate_right,
                     FrameInterval(t, t + len), std::nullopt});
    t += len;
  }
  return make_annotation(std::move(video_id), TimeBase(model.fps), horizon,
                         model.novel_side, bouts);
}

std::string to_string(const PerturbationOp& op) {
  struct Visitor {
    std::string operator()(const Dilate& o) const {
      return "dilate(" + std::to_string(o.frames) + ")";
    }
    std::string operator()(const Erode& o) const {
      return "erode(" + std::to_string(o.frames) + ")";
    }
    std::string operator()(const DeleteEvent& o) const {
      return "delete_event(" + std::to_string(o.index) + ")";
    }
    std::string operator()(const InsertEvent& o) const {
      return "insert_event(" + std::to_string(o.start) + "," +
             std::to_string(o.length) + ")";
    }
    std::string operator()(const PunchHole& o) const {
      return "punch_hole(" + std::to_string(o.event) + "," +
             std::to_string(o.offset) + "," + std::to_string(o.length) + ")";
    }
    std::string operator()(const BridgeGap& o) const {
      return "bridge_gap(" + std::to_string(o.gap) + ")";
    }
  };
  return std::visit(Visitor{}, op);
}

namespace {

struct EventEdit {
  bool deleted = false;
  // Signed boundary offsets: positive extends the event, negative trims it.
  Frame left = 0;
  Frame right = 0;
  std::vector<FrameInterval> holes;
};

/// Edit state over the ground-truth events. Every operation mutates it and
/// check() re-establishes that the ledger derived from it is exact.
class EditState {
 public:
  explicit EditState(const Timeline& gt)
      : gt_(gt),
        events_(gt.intervals().begin(), gt.intervals().end()),
        edits_(events_.size()),
        bridged_(events_.empty() ? 0 : events_.size() - 1, false) {}

  void apply(const Dilate& op) { shift_all(op.frames, "dilation"); }
  void apply(const Erode& op) { shift_all(-op.frames, "erosion"); }

  void apply(const DeleteEvent& op) {
    require_live(op.index);
    if (left_bridged(op.index) || right_bridged(op.index)) {
      throw ValidationError("event is part of a bridged pair");
    }
    edits_[op.index] = EventEdit{true, 0, 0, {}};
  }

  void apply(const InsertEvent& op) {
    if (op.length <= 0) throw ValidationError("insertion length must be positive");
    if (op.start < 0 || op.start + op.length > gt_.horizon()) {
      throw ValidationError("insertion leaves the horizon");
    }
    inserted_.emplace_back(op.start, op.start + op.length);
  }

  void apply(const PunchHole& op) {
    require_live(op.event);
    const FrameInterval& ev = events_[op.event];
    if (op.length <= 0 || op.offset < 0 || op.offset + op.length > ev.length()) {
      throw ValidationError("hole does not fit inside event " + to_string(ev));
    }
    auto& holes = edits_[op.event].holes;
    holes.emplace_back(ev.start() + op.offset, ev.start() + op.offset + op.length);
    std::sort(holes.begin(), holes.end(),
              [](const FrameInterval& a, const FrameInterval& b) {
                return a.start() < b.start();
              });
  }

  void apply(const BridgeGap& op) {
    if (op.gap >= bridged_.size()) throw ValidationError("no such gap");
    if (bridged_[op.gap]) throw ValidationError("gap already bridged");
    require_live(op.gap);
    require_live(op.gap + 1);
    bridged_[op.gap] = true;
    edits_[op.gap].right = 0;
    edits_[op.gap + 1].left = 0;
  }

  void check() const {
    std::vector<FrameInterval> blocks;
    for (std::size_t i = 0; i < events_.size();) {
      if (edits_[i].deleted) {
        ++i;
        continue;
      }
      std::size_t last = i;
      while (last < bridged_.size() && bridged_[last]) ++last;
      for (std::size_t k = i; k <= last; ++k) check_event(k);
      const Frame lo = events_[i].start() - edits_[i].left;
      const Frame hi = events_[last].end() + edits_[last].right;
      if (lo < 0 || hi > gt_.horizon()) {
        throw ValidationError("edited event leaves the horizon");
      }
      if (i > 0 && events_[i - 1].end() > lo) {
        throw ValidationError("dilation of event " + std::to_string(i) +
                              " reaches a neighbouring event");
      }
      if (last + 1 < events_.size() && events_[last + 1].start() < hi) {
        throw ValidationError("dilation of event " + std::to_string(last) +
                              " reaches a neighbouring event");
      }
      blocks.emplace_back(lo, hi);
      i = last + 1;
    }
    for (const auto& ins : inserted_) {
      const Timeline probe = normalize({ins}, gt_.horizon());
      if (!intersect(probe, gt_).empty()) {
        throw ValidationError("insertion " + to_string(ins) +
                              " overlaps a ground-truth event");
      }
      blocks.push_back(ins);
    }
    std::sort(blocks.begin(), blocks.end(),
              [](const FrameInterval& a, const FrameInterval& b) {
                return a.start() < b.start();
              });
    for (std::size_t k = 1; k < blocks.size(); ++k) {
      if (blocks[k - 1].end() >= blocks[k].start()) {
        throw ValidationError("predicted events " + to_string(blocks[k - 1]) +
                              " and " + to_string(blocks[k]) +
                              " would touch or overlap");
      }
    }
  }

  Perturbed build() const {
    std::vector<FrameInterval> pieces;
    ErrorLedger ledger;
    ledger.horizon = gt_.horizon();
    auto& f = ledger.frames;
    Frame accounted = 0;
    for (std::size_t i = 0; i < events_.size(); ++i) {
      const FrameInterval& ev = events_[i];
      const EventEdit& e = edits_[i];
      if (e.deleted) {
        f[index_of(Category::deletion)] += ev.length();
        continue;
      }
      const Frame over = std::max<Frame>(0, e.left) + std::max<Frame>(0, e.right);
      const Frame under = std::max<Frame>(0, -e.left) + std::max<Frame>(0, -e.right);
      Frame holes = 0;
      for (const auto& h : e.holes) holes += h.length();
      f[index_of(Category::overfill)] += over;
      f[index_of(Category::underfill)] += under;
      f[index_of(Category::fragmentation)] += holes;
      f[index_of(Category::tp)] += ev.length() - under - holes;

      Frame cursor = ev.start() - e.left;
      for (const auto& h : e.holes) {
        pieces.emplace_back(cursor, h.start());
        cursor = h.end();
      }
      pieces.emplace_back(cursor, ev.end() + e.right);
      if (i < bridged_.size() && bridged_[i]) {
        pieces.emplace_back(ev.end(), events_[i + 1].start());
        f[index_of(Category::merge)] += events_[i + 1].start() - ev.end();
      }
    }
    for (const auto& ins : inserted_) {
      pieces.push_back(ins);
      f[index_of(Category::insertion)] += ins.length();
    }
    for (Category c : kCategories) {
      if (c != Category::tn) accounted += ledger.of(c);
    }
    f[index_of(Category::tn)] = gt_.horizon() - accounted;
    return Perturbed{normalize(std::move(pieces), gt_.horizon()), ledger};
  }

 private:
  bool left_bridged(std::size_t i) const { return i > 0 && bridged_[i - 1]; }
  bool right_bridged(std::size_t i) const {
    return i < bridged_.size() && bridged_[i];
  }

  void require_live(std::size_t i) const {
    if (i >= events_.size()) {
      throw ValidationError("no event with index " + std::to_string(i));
    }
    if (edits_[i].deleted) {
      throw ValidationError("event " + std::to_string(i) + " was deleted");
    }
  }

  void shift_all(Frame d, const char* what) {
    if (d == 0) throw ValidationError(std::string(what) + " by zero frames");
    for (std::size_t i = 0; i < events_.size(); ++i) {
      if (edits_[i].deleted) continue;
      if (!left_bridged(i)) edits_[i].left += d;
      if (!right_bridged(i)) edits_[i].right += d;
    }
  }

  // The predicted part of an event must keep at least one frame, and every
  // hole needs predicted frames of the same event on both sides.
  void check_event(std::size_t i) const {
    const FrameInterval& ev = events_[i];
    const EventEdit& e = edits_[i];
    const Frame first = ev.start() + std::max<Frame>(0, -e.left);
    const Frame last = ev.end() - std::max<Frame>(0, -e.right);
    if (first >= last) {
      throw ValidationError("erosion removes event " + std::to_string(i) +
                            " " + to_string(ev) + " entirely");
    }
    Frame prev_end = first;
    for (const auto& h : e.holes) {
      if (h.start() <= prev_end || h.end() >= last) {
        throw ValidationError("hole " + to_string(h) + " in event " +
                              std::to_string(i) +
                              " is not strictly interior to the predicted span");
      }
      prev_end = h.end();
    }
  }

  const Timeline& gt_;
  std::vector<FrameInterval> events_;
  std::vector<EventEdit> edits_;
  std::vector<bool> bridged_;
  std::vector<FrameInterval> inserted_;
};

}  // namespace

Perturbed perturb(const Timeline& gt, const PerturbationSpec& spec) {
  EditState state(gt);
  for (std::size_t k = 0; k < spec.size(); ++k) {
    try {
      std::visit([&](const auto& op) { state.apply(op); }, spec[k]);
      state.check();
    } catch (const ValidationError& e) {
      throw ValidationError("perturbation #" + std::to_string(k) + " " +
                            to_string(spec[k]) + ": " + e.what());
    }
  }
  return state.build();
}

PerturbationOp random_op(OpKind kind, const Timeline& gt, SplitMix64& rng) {
  const auto ev = gt.intervals();
  const auto n = static_cast<std::int64_t>(ev.size());
  switch (kind) {
    case OpKind::dilate:
      return Dilate{rng.uniform_int(1, 10)};
    case OpKind::erode:
      return Erode{rng.uniform_int(1, 5)};
    case OpKind::delete_event:
      return DeleteEvent{static_cast<std::size_t>(n > 0 ? rng.uniform_int(0, n - 1) : 0)};
    case OpKind::insert_event: {
      const Frame len = rng.uniform_int(1, std::min<Frame>(30, gt.horizon()));
      return InsertEvent{rng.uniform_int(0, gt.horizon() - len), len};
    }
    case OpKind::punch_hole: {
      if (n == 0) return PunchHole{0, 1, 1};
      const auto i = static_cast<std::size_t>(rng.uniform_int(0, n - 1));
      const Frame L = ev[i].length();
      if (L < 3) return PunchHole{i, 1, 1};
      const Frame len = rng.uniform_int(1, std::max<Frame>(1, (L - 2) / 2));
      return PunchHole{i, rng.uniform_int(1, L - len - 1), len};
    }
    case OpKind::bridge_gap:
      return BridgeGap{static_cast<std::size_t>(n > 1 ? rng.uniform_int(0, n - 2) : 0)};
  }
  return Dilate{1};
}

PerturbationSpec random_spec(const Timeline& gt, SplitMix64& rng,
                             std::size_t n_ops, std::optional<OpKind> first) {
  constexpr int kAttempts = 16;
  PerturbationSpec spec;
  auto try_add = [&](OpKind kind) {
    for (int a = 0; a < kAttempts; ++a) {
      spec.push_back(random_op(kind, gt, rng));
      try {
        perturb(gt, spec);
        return true;
      } catch (const ValidationError&) {
        spec.pop_back();
      }
    }
    return false;
  };
  if (first && n_ops > 0) try_add(*first);
  while (spec.size() < n_ops) {
    bool added = false;
    for (int a = 0; a < kAttempts && !added; ++a) {
      const auto kind = kOpKinds[static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(kOpKinds.size()) - 1))];
      added = try_add(kind);
    }
    if (!added) break;
  }
  return spec;
}

std::vector<LabeledInterval> assign_sides(const Timeline& pred,
                                          const TrialAnnotation& gt,
                                          SplitMix64& rng) {
  std::vector<LabeledInterval> out;
  for (const auto& iv : pred.intervals()) {
    const Timeline probe = normalize({iv}, pred.horizon());
    const Timeline on_left = intersect(probe, gt.left);
    const Timeline on_right = intersect(probe, gt.right);
    Side side;
    if (on_left.empty() && on_right.empty()) {
      side = rng.bernoulli(0.5) ? Side::left : Side::right;
    } else if (on_right.empty()) {
      side = Side::left;
    } else if (on_left.empty()) {
      side = Side::right;
    } else {
      side = on_left.intervals().front().start() < on_right.intervals().front().start()
                 ? Side::left
                 : Side::right;
    }
    out.push_back({side == Side::left ? Label::investigate_left
                                      : Label::investigate_right,
                   iv, std::nullopt});
  }
  return out;
}

}  // namespace norscore
