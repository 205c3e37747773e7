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

#include "norscore/annotation_io.hpp"

#include <algorithm>
#include <array>

#include <json.hpp>

#include "norscore/error.hpp"
#include "norscore/text.hpp"

namespace norscore {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::array<std::pair<Label, std::string_view>, 4> kLabelNames{{
    {Label::explore, "explore"},
    {Label::investigate_left, "investigate_left"},
    {Label::investigate_right, "investigate_right"},
    {Label::investigate, "investigate"},
}};

constexpr std::string_view kWindowHeader =
    "video_id,window_start_frame,window_len,label";

std::size_t line_of_offset(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + byte, '\n'));
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(),
                     line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0));
  }
}

const json& require(const json& obj, const std::string& key,
                    const std::string& path = {}) {
  const std::string where = path.empty() ? key : path + "." + key;
  if (!obj.is_object()) throw ParseError("expected a JSON object", 0, path);
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError("missing required field", 0, where);
  return *it;
}

std::int64_t require_int(const json& obj, const std::string& key,
                         const std::string& path = {}) {
  const json& v = require(obj, key, path);
  if (!v.is_number_integer()) {
    throw ParseError("expected an integer", 0,
                     path.empty() ? key : path + "." + key);
  }
  return v.get<std::int64_t>();
}

std::string require_string(const json& obj, const std::string& key,
                           const std::string& path = {}) {
  const json& v = require(obj, key, path);
  if (!v.is_string()) {
    throw ParseError("expected a string", 0,
                     path.empty() ? key : path + "." + key);
  }
  return v.get<std::string>();
}

Label require_label(std::string_view s, std::size_t line,
                    const std::string& field) {
  auto label = parse_label(s);
  if (!label) {
    throw ParseError("unknown label '" + std::string(s) + "'", line, field);
  }
  return *label;
}

std::optional<double> checked_score(std::optional<double> score,
                                    const std::string& where) {
  if (score && (*score < 0.0 || *score > 1.0)) {
    throw ValidationError(where + ": score " + text::format_double(*score) +
                          " outside [0,1]");
  }
  return score;
}

std::vector<LabeledInterval> parse_intervals(const json& doc) {
  const json& arr = require(doc, "intervals");
  if (!arr.is_array()) throw ParseError("expected an array", 0, "intervals");
  std::vector<LabeledInterval> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "intervals[" + std::to_string(i) + "]";
    const json& item = arr[i];
    const Label label = require_label(require_string(item, "label", path), 0,
                                      path + ".label");
    const Frame start = require_int(item, "start_frame", path);
    const Frame end = require_int(item, "end_frame", path);
    std::optional<double> score;
    if (item.contains("score")) {
      const json& s = item["score"];
      if (!s.is_number()) throw ParseError("expected a number", 0, path + ".score");
      score = checked_score(s.get<double>(), path);
    }
    try {
      out.push_back({label, FrameInterval(start, end), score});
    } catch (const ValidationError& e) {
      throw ValidationError(path + ": " + e.what());
    }
  }
  return out;
}

void require_uniform_scores(std::size_t scored, std::size_t total) {
  if (scored != 0 && scored != total) {
    throw ValidationError("mixed scored and unscored entries (" +
                          std::to_string(scored) + " of " +
                          std::to_string(total) + " scored)");
  }
}

ordered_json intervals_to_json(std::vector<LabeledInterval> items) {
  std::stable_sort(items.begin(), items.end(),
                   [](const LabeledInterval& a, const LabeledInterval& b) {
                     return a.interval.start() < b.interval.start();
                   });
  ordered_json arr = ordered_json::array();
  for (const auto& it : items) {
    ordered_json o;
    o["label"] = to_string(it.label);
    o["start_frame"] = it.interval.start();
    o["end_frame"] = it.interval.end();
    if (it.score) o["score"] = *it.score;
    arr.push_back(std::move(o));
  }
  return arr;
}

PredictionSet parse_prediction_json(std::string_view text) {
  const json doc = parse_json(text);
  PredictionSet p;
  p.video_id = require_string(doc, "video_id");
  if (doc.contains("num_frames")) {
    p.num_frames = require_int(doc, "num_frames");
    if (*p.num_frames <= 0) throw ValidationError("num_frames must be positive");
  }
  auto intervals = parse_intervals(doc);
  std::size_t scored = 0;
  for (const auto& it : intervals) {
    if (it.label == Label::explore) {
      throw ParseError("label 'explore' is not allowed in interval predictions",
                       0, "label");
    }
    if (it.score) ++scored;
  }
  require_uniform_scores(scored, intervals.size());
  p.entries = std::move(intervals);
  if (p.num_frames) to_timelines(p);  // range and side-overlap checks
  return p;
}

PredictionSet parse_prediction_csv(std::string_view text) {
  const auto rows = text::read_csv(text);
  if (rows.empty()) throw ParseError("empty prediction file", 1);
  const auto& header = rows.front();
  const std::string joined = [&] {
    std::string s;
    for (std::size_t i = 0; i < header.fields.size(); ++i) {
      if (i) s += ',';
      s += header.fields[i];
    }
    return s;
  }();
  bool has_score_column = false;
  if (joined == std::string(kWindowHeader) + ",score") {
    has_score_column = true;
  } else if (joined != kWindowHeader) {
    throw ParseError("unexpected header '" + joined + "'", header.line);
  }
  const std::size_t width = has_score_column ? 5 : 4;

  PredictionSet p;
  std::vector<WindowRecord> windows;
  std::size_t scored = 0;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != width) {
      throw ParseError("expected " + std::to_string(width) + " fields, got " +
                           std::to_string(row.fields.size()),
                       row.line);
    }
    if (p.video_id.empty()) {
      p.video_id = row.fields[0];
      if (p.video_id.empty()) throw ParseError("empty video id", row.line, "video_id");
    } else if (row.fields[0] != p.video_id) {
      throw ValidationError("line " + std::to_string(row.line) +
                            ": multiple video ids in one prediction file ('" +
                            p.video_id + "', '" + row.fields[0] + "')");
    }
    auto start = text::parse_int(row.fields[1]);
    if (!start) throw ParseError("expected an integer", row.line, "window_start_frame");
    auto len = text::parse_int(row.fields[2]);
    if (!len) throw ParseError("expected an integer", row.line, "window_len");
    if (*start < 0 || *len <= 0) {
      throw ValidationError("line " + std::to_string(row.line) +
                            ": window must have start >= 0 and positive length");
    }
    const Label label = require_label(row.fields[3], row.line, "label");
    std::optional<double> score;
    if (has_score_column && !row.fields[4].empty()) {
      score = text::parse_double(row.fields[4]);
      if (!score) throw ParseError("expected a number", row.line, "score");
      checked_score(score, "line " + std::to_string(row.line));
      ++scored;
    }
    windows.push_back({*start, *len, label, score});
  }
  if (windows.empty()) throw ValidationError("prediction file has no windows");
  require_uniform_scores(scored, windows.size());

  std::stable_sort(windows.begin(), windows.end(),
                   [](const WindowRecord& a, const WindowRecord& b) {
                     return a.start < b.start;
                   });
  const Frame window_len = windows.front().length;
  Frame cursor = 0;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const auto& w = windows[i];
    const std::string where = "window [" + std::to_string(w.start) + "," +
                              std::to_string(w.start + w.length) + ")";
    if (w.start < cursor) throw ValidationError("overlapping windows at " + where);
    if (w.start > cursor) throw ValidationError("gap in window tiling before " + where);
    const bool last = i + 1 == windows.size();
    if (w.length != window_len && !(last && w.length < window_len)) {
      throw ValidationError("inconsistent window_len at " + where);
    }
    cursor = w.start + w.length;
  }
  p.entries = std::move(windows);
  return p;
}

}  // namespace

std::string_view to_string(Side side) noexcept {
  return side == Side::left ? "left" : "right";
}

std::string_view to_string(Label label) noexcept {
  for (const auto& [l, name] : kLabelNames) {
    if (l == label) return name;
  }
  return "?";
}

std::optional<Side> parse_side(std::string_view s) noexcept {
  if (s == "left") return Side::left;
  if (s == "right") return Side::right;
  return std::nullopt;
}

std::optional<Label> parse_label(std::string_view s) noexcept {
  for (const auto& [l, name] : kLabelNames) {
    if (name == s) return l;
  }
  return std::nullopt;
}

Side opposite(Side side) noexcept {
  return side == Side::left ? Side::right : Side::left;
}

TrialAnnotation make_annotation(std::string video_id, TimeBase time_base,
                                Frame num_frames, Side novel_side,
                                const std::vector<LabeledInterval>& intervals) {
  if (video_id.empty()) throw ValidationError("empty video_id");
  std::vector<FrameInterval> left, right;
  for (const auto& it : intervals) {
    switch (it.label) {
      case Label::investigate_left:
        left.push_back(it.interval);
        break;
      case Label::investigate_right:
        right.push_back(it.interval);
        break;
      default:
        throw ValidationError("annotation label must be investigate_left or "
                              "investigate_right, got '" +
                              std::string(to_string(it.label)) + "'");
    }
  }
  Timeline l = normalize(std::move(left), num_frames);
  Timeline r = normalize(std::move(right), num_frames);
  const Timeline both = intersect(l, r);
  if (!both.empty()) {
    throw ValidationError("overlapping object labels at frames " +
                          to_string(both.intervals().front()));
  }
  return TrialAnnotation{std::move(video_id), time_base, num_frames,
                         novel_side, std::move(l), std::move(r)};
}

TrialAnnotation parse_annotation(std::string_view text) {
  const json doc = parse_json(text);
  std::string video_id = require_string(doc, "video_id");
  const std::int64_t fps = require_int(doc, "fps");
  const Frame num_frames = require_int(doc, "num_frames");
  const std::string side_name = require_string(doc, "novel_side");
  const auto side = parse_side(side_name);
  if (!side) {
    throw ParseError("expected 'left' or 'right', got '" + side_name + "'", 0,
                     "novel_side");
  }
  if (fps <= 0 || fps > 100000) throw ValidationError("fps out of range");
  const auto intervals = parse_intervals(doc);
  for (const auto& it : intervals) {
    if (it.score) throw ParseError("annotations do not carry scores", 0, "score");
  }
  return make_annotation(std::move(video_id), TimeBase(static_cast<int>(fps)),
                         num_frames, *side, intervals);
}

std::string serialize_annotation(const TrialAnnotation& a) {
  std::vector<LabeledInterval> items;
  for (const auto& iv : a.left.intervals()) {
    items.push_back({Label::investigate_left, iv, std::nullopt});
  }
  for (const auto& iv : a.right.intervals()) {
    items.push_back({Label::investigate_right, iv, std::nullopt});
  }
  ordered_json doc;
  doc["video_id"] = a.video_id;
  doc["fps"] = a.time_base.fps;
  doc["num_frames"] = a.num_frames;
  doc["novel_side"] = to_string(a.novel_side);
  doc["intervals"] = intervals_to_json(std::move(items));
  return doc.dump(2) + "\n";
}

bool PredictionSet::scored() const noexcept {
  return std::visit(
      [](const auto& v) {
        return !v.empty() && v.front().score.has_value();
      },
      entries);
}

PredictionSet parse_predictions(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    return parse_prediction_json(text);
  }
  return parse_prediction_csv(text);
}

std::string serialize_predictions(const PredictionSet& p) {
  if (const auto* items = std::get_if<std::vector<LabeledInterval>>(&p.entries)) {
    ordered_json doc;
    doc["video_id"] = p.video_id;
    if (p.num_frames) doc["num_frames"] = *p.num_frames;
    doc["intervals"] = intervals_to_json(*items);
    return doc.dump(2) + "\n";
  }
  const auto& windows = std::get<std::vector<WindowRecord>>(p.entries);
  const bool scored = p.scored();
  std::string out(kWindowHeader);
  out += scored ? ",score\n" : "\n";
  for (const auto& w : windows) {
    std::vector<std::string> fields{p.video_id, std::to_string(w.start),
                                    std::to_string(w.length),
                                    std::string(to_string(w.label))};
    if (scored) fields.push_back(text::format_double(*w.score));
    out += text::csv_line(fields);
  }
  return out;
}

Timeline LabelTracks::at(Label label) const {
  switch (label) {
    case Label::explore:
      return explore();
    case Label::investigate_left:
      return left;
    case Label::investigate_right:
      return right;
    case Label::investigate:
      return combined;
  }
  return combined;
}

LabelTracks to_timelines(const TrialAnnotation& a) {
  return LabelTracks{a.left, a.right, Timeline(a.num_frames), a.combined()};
}

LabelTracks to_timelines(const PredictionSet& p, std::optional<Frame> horizon) {
  if (horizon && p.num_frames && *horizon != *p.num_frames) {
    throw ValidationError("prediction '" + p.video_id + "' has num_frames " +
                          std::to_string(*p.num_frames) +
                          " but the trial has " + std::to_string(*horizon));
  }
  std::vector<FrameInterval> left, right, unsided;
  auto route = [&](Label label, FrameInterval iv) {
    switch (label) {
      case Label::investigate_left:
        left.push_back(iv);
        break;
      case Label::investigate_right:
        right.push_back(iv);
        break;
      case Label::investigate:
        unsided.push_back(iv);
        break;
      case Label::explore:
        break;
    }
  };

  Frame h = 0;
  if (const auto* items = std::get_if<std::vector<LabeledInterval>>(&p.entries)) {
    if (!horizon && !p.num_frames) {
      throw ValidationError("interval prediction '" + p.video_id +
                            "' has no num_frames and no trial horizon was given");
    }
    h = horizon ? *horizon : *p.num_frames;
    for (const auto& it : *items) route(it.label, it.interval);
  } else {
    const auto& windows = std::get<std::vector<WindowRecord>>(p.entries);
    const Frame natural = windows.back().start + windows.back().length;
    h = horizon ? *horizon : (p.num_frames ? *p.num_frames : natural);
    if (natural < h) {
      throw ValidationError("windows of '" + p.video_id + "' cover " +
                            std::to_string(natural) + " of " +
                            std::to_string(h) + " frames");
    }
    for (const auto& w : windows) {
      if (w.start >= h) {
        throw ValidationError("window starting at frame " +
                              std::to_string(w.start) +
                              " lies beyond the trial end " + std::to_string(h));
      }
      route(w.label, FrameInterval(w.start, std::min(w.start + w.length, h)));
    }
  }

  Timeline l = normalize(std::move(left), h);
  Timeline r = normalize(std::move(right), h);
  Timeline u = normalize(std::move(unsided), h);
  const Timeline both = intersect(l, r);
  if (!both.empty()) {
    throw ValidationError("overlapping object labels at frames " +
                          to_string(both.intervals().front()));
  }
  Timeline c = unite(unite(l, r), u);
  return LabelTracks{std::move(l), std::move(r), std::move(u), std::move(c)};
}

}  // namespace norscore
