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

#include "norscore/cli.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>
#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "norscore/annotation_io.hpp"
#include "norscore/clip_metrics.hpp"
#include "norscore/clipper.hpp"
#include "norscore/error.hpp"
#include "norscore/nor.hpp"
#include "norscore/segmental.hpp"
#include "norscore/synth.hpp"
#include "norscore/text.hpp"

namespace norscore::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "1.0.0";

/// Raised for bad arguments or unusable paths (exit 1).
class UsageError : public Error {
 public:
  using Error::Error;
};

template <typename T>
struct Outcome {
  std::optional<T> value;
  int code = kSuccess;
  std::string error;
};

template <typename T, typename Fn>
Outcome<T> guarded(Fn&& fn) {
  try {
    return {fn(), kSuccess, {}};
  } catch (const ParseError& e) {
    return {std::nullopt, kParse, e.what()};
  } catch (const ValidationError& e) {
    return {std::nullopt, kValidation, e.what()};
  } catch (const std::exception& e) {
    return {std::nullopt, kValidation, e.what()};
  }
}

/// Bounded worker pool; results land at their input index so output order
/// never depends on scheduling.
template <typename T, typename In, typename Fn>
std::vector<Outcome<T>> run_pool(const std::vector<In>& items, unsigned workers,
                                 Fn fn) {
  std::vector<Outcome<T>> out(items.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < items.size();) {
      out[i] = guarded<T>([&] { return fn(items[i]); });
    }
  };
  workers = std::clamp<unsigned>(workers, 1,
                                 static_cast<unsigned>(std::max<std::size_t>(1, items.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  return out;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Temp file + rename so readers never see a half-written report.
void write_atomic(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o) throw UsageError("cannot write " + tmp.string());
    o << content;
    if (!o.flush()) throw UsageError("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

/// Expands directories to their .json/.csv files; everything sorted.
std::vector<fs::path> collect_inputs(const std::vector<std::string>& specs,
                                     const char* flag) {
  std::vector<fs::path> files;
  for (const auto& s : specs) {
    const fs::path p(s);
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      for (const auto& entry : fs::directory_iterator(p)) {
        const auto ext = entry.path().extension();
        if (entry.is_regular_file() && (ext == ".json" || ext == ".csv")) {
          files.push_back(entry.path());
        }
      }
    } else if (fs::is_regular_file(p, ec)) {
      files.push_back(p);
    } else {
      throw UsageError(std::string(flag) + ": no such file or directory: " + s);
    }
  }
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end()), files.end());
  if (files.empty()) throw UsageError(std::string(flag) + ": no input files found");
  return files;
}

void prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  if (fs::exists(dir, ec) && !fs::is_directory(dir, ec)) {
    throw UsageError("--out exists and is not a directory: " + dir);
  }
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create output directory " + dir + ": " + ec.message());
}

struct Failure {
  std::string item;
  int code;
  std::string message;
};

/// Collects per-item failures and turns them into the final exit code.
class FailureLog {
 public:
  void add(std::string item, int code, std::string message) {
    failures_.push_back({std::move(item), code, std::move(message)});
  }
  bool empty() const { return failures_.empty(); }

  int finish(const std::string& out_dir, std::size_t successes,
             std::ostream& err) const {
    if (failures_.empty()) return kSuccess;
    std::string csv = "item,exit_code,message\n";
    for (const auto& f : failures_) {
      err << "error: " << f.item << ": " << f.message << "\n";
      csv += text::csv_line({f.item, std::to_string(f.code), f.message});
    }
    if (!out_dir.empty()) write_atomic(fs::path(out_dir) / "errors.csv", csv);
    return successes == 0 ? failures_.front().code : kPartial;
  }

 private:
  std::vector<Failure> failures_;
};

struct Common {
  std::string out_dir;
  unsigned parallel = 1;
  std::optional<int> fps;
  std::string latency = "onset";
};

std::vector<TrialAnnotation> load_annotations(const std::vector<fs::path>& files,
                                              const Common& c, FailureLog& log) {
  auto results = run_pool<TrialAnnotation>(files, c.parallel, [&](const fs::path& p) {
    auto a = parse_annotation(read_file(p));
    if (c.fps) a.time_base = TimeBase(*c.fps);
    return a;
  });
  std::vector<TrialAnnotation> out;
  std::map<std::string, std::string> seen;
  for (std::size_t i = 0; i < files.size(); ++i) {
    auto& r = results[i];
    if (!r.value) {
      log.add(files[i].string(), r.code, r.error);
      continue;
    }
    auto [it, fresh] = seen.emplace(r.value->video_id, files[i].string());
    if (!fresh) {
      log.add(files[i].string(), kValidation,
              "duplicate video_id '" + r.value->video_id + "' (also in " + it->second + ")");
      continue;
    }
    out.push_back(std::move(*r.value));
  }
  std::sort(out.begin(), out.end(), [](const TrialAnnotation& a, const TrialAnnotation& b) {
    return a.video_id < b.video_id;
  });
  return out;
}

std::map<std::string, PredictionSet> load_predictions(const std::vector<fs::path>& files,
                                                      const Common& c, FailureLog& log) {
  auto results = run_pool<PredictionSet>(files, c.parallel, [](const fs::path& p) {
    return parse_predictions(read_file(p));
  });
  std::map<std::string, PredictionSet> out;
  for (std::size_t i = 0; i < files.size(); ++i) {
    auto& r = results[i];
    if (!r.value) {
      log.add(files[i].string(), r.code, r.error);
      continue;
    }
    const std::string id = r.value->video_id;
    if (!out.emplace(id, std::move(*r.value)).second) {
      log.add(files[i].string(), kValidation, "duplicate prediction video_id '" + id + "'");
    }
  }
  return out;
}

/// Ground truth with its matching prediction, keyed by video_id.
struct Pair {
  const TrialAnnotation* gt;
  const PredictionSet* pred;
};

std::vector<Pair> pair_up(const std::vector<TrialAnnotation>& gts,
                          const std::map<std::string, PredictionSet>& preds,
                          FailureLog& log) {
  std::vector<Pair> out;
  for (const auto& g : gts) {
    auto it = preds.find(g.video_id);
    if (it == preds.end()) {
      log.add(g.video_id, kValidation, "no prediction for video_id '" + g.video_id + "'");
      continue;
    }
    out.push_back({&g, &it->second});
  }
  for (const auto& [id, p] : preds) {
    const bool known = std::any_of(gts.begin(), gts.end(),
                                   [&](const TrialAnnotation& g) { return g.video_id == id; });
    if (!known) log.add(id, kValidation, "prediction has no ground truth");
  }
  return out;
}

Latency latency_of(const Common& c) {
  auto l = parse_latency(c.latency);
  if (!l) throw UsageError("--latency must be onset or offset");
  return *l;
}

// ---------------------------------------------------------------- commands

struct ClipsArgs {
  std::vector<std::string> inputs;
  Frame clip_len = 60;
  double ratio = 0.75;
  std::uint64_t seed = 0;
  bool no_split = false;
};

int cmd_clips(const ClipsArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  const auto files = collect_inputs(a.inputs, "--in");
  if (a.clip_len <= 0) throw UsageError("--clip-len must be positive");
  if (!a.no_split && !(a.ratio > 0.0 && a.ratio < 1.0)) {
    throw UsageError("--ratio must lie in (0,1)");
  }
  prepare_out_dir(c.out_dir);

  FailureLog log;
  const auto anns = load_annotations(files, c, log);
  auto per_video = run_pool<std::vector<ClipRecord>>(
      anns, c.parallel, [&](const TrialAnnotation& t) { return extract_clips(t, a.clip_len); });
  std::vector<ClipRecord> manifest;
  for (std::size_t i = 0; i < anns.size(); ++i) {
    if (!per_video[i].value) {
      log.add(anns[i].video_id, per_video[i].code, per_video[i].error);
      continue;
    }
    manifest.insert(manifest.end(), per_video[i].value->begin(), per_video[i].value->end());
  }

  std::optional<SplitAssignment> assignment;
  if (!a.no_split && !manifest.empty()) assignment = split(manifest, a.ratio, a.seed);
  write_atomic(fs::path(c.out_dir) / "manifest.csv", manifest_csv(manifest, assignment));

  const auto n_inv = std::count_if(manifest.begin(), manifest.end(), [](const ClipRecord& r) {
    return r.class_label == ClipClass::investigate;
  });
  out << "clips: " << manifest.size() << " (explore " << manifest.size() - n_inv
      << ", investigate " << n_inv << ")\n";
  if (assignment) {
    out << "split: train " << assignment->train.size() << ", val "
        << assignment->validation.size() << " (seed " << a.seed << ")\n";
  }
  return log.finish(c.out_dir, anns.size(), err);
}

int cmd_clip_eval(const std::string& input, const Common& c, std::ostream& out) {
  if (!fs::is_regular_file(input)) throw UsageError("--in: no such file: " + input);
  prepare_out_dir(c.out_dir);
  const auto records = parse_clip_eval_csv(read_file(input));
  const auto report = evaluate_clips(records);
  write_atomic(fs::path(c.out_dir) / "clip_report.csv", clip_report_csv(report));
  if (report.curve) {
    write_atomic(fs::path(c.out_dir) / "pr_curve.csv", pr_curve_csv(*report.curve));
  }
  out << clip_report_table(report);
  return kSuccess;
}

struct PairArgs {
  std::vector<std::string> gt;
  std::vector<std::string> pred;
  bool per_side = false;
};

int cmd_segscore(const PairArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  const auto gt_files = collect_inputs(a.gt, "--gt");
  const auto pred_files = collect_inputs(a.pred, "--pred");
  prepare_out_dir(c.out_dir);

  FailureLog log;
  const auto gts = load_annotations(gt_files, c, log);
  const auto preds = load_predictions(pred_files, c, log);
  const auto pairs = pair_up(gts, preds, log);

  auto results = run_pool<std::vector<SegmentalReport>>(pairs, c.parallel, [&](const Pair& p) {
    const auto truth = to_timelines(*p.gt);
    const auto guess = to_timelines(*p.pred, p.gt->num_frames);
    std::vector<SegmentalReport> reports;
    if (a.per_side) {
      if (!guess.side_resolved()) {
        throw ValidationError("per-side scoring needs side-labelled predictions");
      }
      reports.push_back(score(truth.left, guess.left, p.gt->video_id + "/left"));
      reports.push_back(score(truth.right, guess.right, p.gt->video_id + "/right"));
    } else {
      reports.push_back(score(truth.combined, guess.combined, p.gt->video_id));
    }
    return reports;
  });

  std::vector<SegmentalReport> reports;
  std::size_t ok = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!results[i].value) {
      log.add(pairs[i].gt->video_id, results[i].code, results[i].error);
      continue;
    }
    ++ok;
    for (auto& r : *results[i].value) reports.push_back(std::move(r));
  }
  if (!reports.empty()) {
    const auto summary = aggregate(reports);
    write_atomic(fs::path(c.out_dir) / "segmental.csv", segmental_csv(reports, summary));
    out << "videos: " << summary.n_videos << "\n";
    for (Category cat : kCategories) {
      out << "  " << to_string(cat) << ": "
          << text::format_double(summary.mean_fraction[index_of(cat)]) << "\n";
    }
    out << "severe error rate: " << text::format_double(summary.severe_error_rate) << "\n";
  }
  return log.finish(c.out_dir, ok, err);
}

/// NOR metrics for every ground-truth video and, with predictions, for the
/// matching predicted tracks.
struct MetricRows {
  std::vector<NorMetrics> gt;
  std::vector<NorMetrics> pred;
  std::size_t ok = 0;
};

MetricRows compute_metric_rows(const std::vector<Pair>& pairs, const Common& c,
                               Latency latency, FailureLog& log) {
  using Both = std::pair<NorMetrics, NorMetrics>;
  auto results = run_pool<Both>(pairs, c.parallel, [&](const Pair& p) {
    auto g = nor_metrics(*p.gt, latency);
    auto q = nor_metrics(p.gt->video_id, to_timelines(*p.pred, p.gt->num_frames),
                         p.gt->novel_side, p.gt->time_base, latency);
    return Both{std::move(g), std::move(q)};
  });
  MetricRows rows;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!results[i].value) {
      log.add(pairs[i].gt->video_id, results[i].code, results[i].error);
      continue;
    }
    ++rows.ok;
    rows.gt.push_back(std::move(results[i].value->first));
    rows.pred.push_back(std::move(results[i].value->second));
  }
  return rows;
}

int cmd_nor(const PairArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  const Latency latency = latency_of(c);
  const auto gt_files = collect_inputs(a.gt, "--gt");
  std::vector<fs::path> pred_files;
  if (!a.pred.empty()) pred_files = collect_inputs(a.pred, "--pred");
  prepare_out_dir(c.out_dir);

  FailureLog log;
  const auto gts = load_annotations(gt_files, c, log);
  std::vector<NorMetrics> rows;
  std::size_t ok = 0;
  if (pred_files.empty()) {
    auto results = run_pool<NorMetrics>(gts, c.parallel, [&](const TrialAnnotation& t) {
      return nor_metrics(t, latency);
    });
    for (std::size_t i = 0; i < gts.size(); ++i) {
      if (!results[i].value) {
        log.add(gts[i].video_id, results[i].code, results[i].error);
        continue;
      }
      ++ok;
      rows.push_back(std::move(*results[i].value));
    }
  } else {
    const auto preds = load_predictions(pred_files, c, log);
    auto m = compute_metric_rows(pair_up(gts, preds, log), c, latency, log);
    ok = m.ok;
    rows = std::move(m.pred);
  }
  write_atomic(fs::path(c.out_dir) / "nor_metrics.csv", metrics_csv(rows));
  out << "videos: " << rows.size() << "\n";
  return log.finish(c.out_dir, ok, err);
}

int cmd_compare(const PairArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  const Latency latency = latency_of(c);
  const auto gt_files = collect_inputs(a.gt, "--gt");
  const auto pred_files = collect_inputs(a.pred, "--pred");
  prepare_out_dir(c.out_dir);

  FailureLog log;
  const auto gts = load_annotations(gt_files, c, log);
  const auto preds = load_predictions(pred_files, c, log);
  auto rows = compute_metric_rows(pair_up(gts, preds, log), c, latency, log);
  if (rows.ok > 0) {
    const auto stats = compare(rows.gt, rows.pred);
    write_atomic(fs::path(c.out_dir) / "nor_gt.csv", metrics_csv(rows.gt));
    write_atomic(fs::path(c.out_dir) / "nor_pred.csv", metrics_csv(rows.pred));
    write_atomic(fs::path(c.out_dir) / "comparison.csv", comparison_csv(stats));
    out << "metric        r2   mean_err    std_err  pairs\n";
    auto cell = [](const std::optional<double>& v) {
      char b[32];
      if (v) {
        std::snprintf(b, sizeof b, "%10.4f", *v);
      } else {
        std::snprintf(b, sizeof b, "%10s", "-");
      }
      return std::string(b);
    };
    for (const auto& s : stats.metrics) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%-6s%s %s %s  %5zu\n",
                    std::string(to_string(s.metric)).c_str(), cell(s.r_squared).c_str(),
                    cell(s.mean_error).c_str(), cell(s.std_error).c_str(), s.n_pairs);
      out << buf;
    }
  }
  return log.finish(c.out_dir, rows.ok, err);
}

struct SynthArgs {
  std::size_t trials = 5;
  std::uint64_t seed = 0;
  std::size_t ops = 3;
  std::string config;
};

int cmd_synth(const SynthArgs& a, const Common& c, std::ostream& out) {
  BoutModel model;
  if (!a.config.empty()) {
    if (!fs::is_regular_file(a.config)) throw UsageError("--config: no such file: " + a.config);
    model = parse_bout_config(read_file(a.config));
  }
  if (c.fps) model.fps = *c.fps;
  model.validate();
  prepare_out_dir(c.out_dir);

  SplitMix64 seeder(a.seed);
  std::vector<std::uint64_t> seeds(a.trials);
  for (auto& s : seeds) s = seeder.next();

  struct Emitted {
    std::string id;
    std::string gt_json;
    std::string pred_json;
    std::string ledger_json;
    ErrorLedger ledger;
  };
  std::vector<std::size_t> indices(a.trials);
  for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;

  auto results = run_pool<Emitted>(indices, c.parallel, [&](std::size_t i) {
    char id[32];
    std::snprintf(id, sizeof id, "trial_%04zu", i);
    const auto gt = generate_trial(model, seeds[i], id);
    SplitMix64 rng(seeds[i] ^ 0x5DEECE66DULL);
    const Timeline combined = gt.combined();
    const auto spec = random_spec(combined, rng, a.ops);
    auto perturbed = perturb(combined, spec);

    PredictionSet pred;
    pred.video_id = gt.video_id;
    pred.num_frames = gt.num_frames;
    pred.entries = assign_sides(perturbed.pred, gt, rng);

    nlohmann::ordered_json ledger;
    ledger["video_id"] = gt.video_id;
    ledger["horizon"] = perturbed.ledger.horizon;
    ledger["ops"] = nlohmann::ordered_json::array();
    for (const auto& op : spec) ledger["ops"].push_back(to_string(op));
    nlohmann::ordered_json expected;
    for (Category cat : kCategories) expected[std::string(to_string(cat))] = perturbed.ledger.of(cat);
    ledger["expected"] = expected;
    return Emitted{gt.video_id, serialize_annotation(gt), serialize_predictions(pred),
                   ledger.dump(2) + "\n", perturbed.ledger};
  });

  std::string ledger_csv = "video_id,category,frames\n";
  const fs::path root(c.out_dir);
  for (auto& r : results) {
    if (!r.value) throw ValidationError(r.error);
    write_atomic(root / "gt" / (r.value->id + ".json"), r.value->gt_json);
    write_atomic(root / "pred" / (r.value->id + ".json"), r.value->pred_json);
    write_atomic(root / "ledger" / (r.value->id + ".json"), r.value->ledger_json);
    for (Category cat : kCategories) {
      ledger_csv += text::csv_line({r.value->id, std::string(to_string(cat)),
                                    std::to_string(r.value->ledger.of(cat))});
    }
  }
  write_atomic(root / "ledgers.csv", ledger_csv);
  out << "trials: " << a.trials << " (seed " << a.seed << ")\n";
  return kSuccess;
}

constexpr const char* kSynthConfigHelp =
    "Bout model config file, one `key = value` per line. Keys: "
    "investigation_min_s (0.2), investigation_max_s (3.0), gap_min_s (1), "
    "gap_max_s (20), p_novel (0.5), trial_s (330), fps (30), novel_side (left)";

}  // namespace

std::string version() {
  return std::string("nor-score ") + kVersion + " (" + std::string(kSegmentalRulesVersion) + ")";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scores behavioral predictions against novel-object-recognition annotations.",
               "nor-score"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub, bool needs_out = true) {
    auto* o = sub->add_option("--out", common.out_dir, "Output directory");
    if (needs_out) o->required();
    sub->add_option("--parallel", common.parallel, "Worker threads")
        ->check(CLI::Range(1u, 1024u))
        ->default_val(1);
  };

  ClipsArgs clips;
  auto* s_clips = app.add_subcommand("clips", "Cut fixed-length training clips and split them");
  s_clips->add_option("--in", clips.inputs, "Annotation files or directories")->required();
  s_clips->add_option("--clip-len", clips.clip_len, "Clip length in frames")->default_val(60);
  s_clips->add_option("--ratio", clips.ratio, "Training fraction")->default_val(0.75);
  s_clips->add_option("--seed", clips.seed, "Shuffle seed")->default_val(0);
  s_clips->add_flag("--no-split", clips.no_split, "Mark every clip split=none");
  add_common(s_clips);

  std::string clip_eval_input;
  auto* s_eval = app.add_subcommand("clip-eval", "Accuracy and average precision of clip predictions");
  s_eval->add_option("--in", clip_eval_input,
                     "CSV: video_id,start_frame,true_label,pred_label,score")
      ->required();
  add_common(s_eval);

  PairArgs seg;
  auto* s_seg = app.add_subcommand("segscore", "Segmental error taxonomy per video and corpus");
  s_seg->add_option("--gt", seg.gt, "Annotation files or directories")->required();
  s_seg->add_option("--pred", seg.pred, "Prediction files or directories")->required();
  s_seg->add_flag("--per-side", seg.per_side, "Score left and right tracks separately");
  add_common(s_seg);

  PairArgs nor_args;
  auto* s_nor = app.add_subcommand("nor", "Per-video NOR metrics (ground truth, or predictions with --pred)");
  s_nor->add_option("--gt", nor_args.gt, "Annotation files or directories")->required();
  s_nor->add_option("--pred", nor_args.pred, "Prediction files or directories");

  PairArgs cmp;
  auto* s_cmp = app.add_subcommand("compare", "Regression statistics of predicted vs ground-truth NOR metrics");
  s_cmp->add_option("--gt", cmp.gt, "Annotation files or directories")->required();
  s_cmp->add_option("--pred", cmp.pred, "Prediction files or directories")->required();

  for (auto* sub : {s_nor, s_cmp}) {
    sub->add_option("--latency", common.latency, "Latency edge: onset or offset")
        ->check(CLI::IsMember({"onset", "offset"}))
        ->default_val("onset");
    sub->add_option("--fps", common.fps, "Override the annotation frame rate")
        ->check(CLI::PositiveNumber);
    add_common(sub);
  }

  SynthArgs synth;
  auto* s_synth = app.add_subcommand("synth", "Generate synthetic trials, perturbed predictions and ledgers");
  s_synth->add_option("--trials", synth.trials, "Number of trials")->default_val(5);
  s_synth->add_option("--seed", synth.seed, "Base seed")->default_val(0);
  s_synth->add_option("--ops", synth.ops, "Perturbations per trial")->default_val(3);
  s_synth->add_option("--config", synth.config, kSynthConfigHelp);
  s_synth->add_option("--fps", common.fps, "Override the model frame rate")->check(CLI::PositiveNumber);
  add_common(s_synth);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*s_clips) return cmd_clips(clips, common, out, err);
    if (*s_eval) return cmd_clip_eval(clip_eval_input, common, out);
    if (*s_seg) return cmd_segscore(seg, common, out, err);
    if (*s_nor) return cmd_nor(nor_args, common, out, err);
    if (*s_cmp) return cmd_compare(cmp, common, out, err);
    if (*s_synth) return cmd_synth(synth, common, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kUsage;
}

}  // namespace norscore::cli
