#pragma once

// Command-line front end. `run` takes the argument vector (without the
// program name) and returns the process exit status:
//   0 success, 1 input error, 2 constraint violation, 3 internal failure.

#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "adfkit/audio/resample.hpp"
#include "adfkit/audio/segment.hpp"
#include "adfkit/audio/wav.hpp"
#include "adfkit/augment/rawboost.hpp"
#include "adfkit/catalog.hpp"
#include "adfkit/error.hpp"
#include "adfkit/eval/metrics.hpp"
#include "adfkit/eval/reference_scorer.hpp"
#include "adfkit/eval/scores.hpp"
#include "adfkit/manifest.hpp"
#include "adfkit/preset.hpp"
#include "adfkit/presets_bundled.hpp"
#include "adfkit/report/embeddings.hpp"
#include "adfkit/report/tables.hpp"
#include "adfkit/stub.hpp"
#include "adfkit/text.hpp"

namespace adfkit::cli {

namespace fs = std::filesystem;
using nlohmann::json;

inline constexpr int kFormatVersion = 1;
inline constexpr int kProcessingRateHz = 16000;

namespace detail {

/// Bundled name (iter1..iter4) or a preset file.
inline CompositionPreset load_preset(const std::string& ref) {
  if (presets::bundled_text(ref)) return presets::bundled(ref);
  if (!fs::exists(ref)) throw InputError("unknown preset \"" + ref + "\": not a bundled name and no such file");
  try {
    return parse_preset(text::read_file(ref));
  } catch (const Error& e) {
    throw InputError(ref + ": " + e.what());
  }
}

inline std::string count_summary(const Manifest& m) {
  std::size_t c[2][2] = {{0, 0}, {0, 0}};
  for (const auto& e : m.entries) ++c[e.split == Split::train ? 0 : 1][e.entry.label == Label::bonafide ? 0 : 1];
  auto side = [&](int s) {
    return std::to_string(c[s][0] + c[s][1]) + " (bonafide " + std::to_string(c[s][0]) + ", spoof " +
           std::to_string(c[s][1]) + ")";
  };
  return "train " + side(0) + "; val " + side(1);
}

inline std::optional<Split> split_filter(const std::string& s) {
  if (s == "all") return std::nullopt;
  const auto sp = parse_split(s);
  if (!sp) throw InputError("--split must be train, val or all");
  return sp;
}

inline std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = kDigits[v & 0xF];
  return s;
}

inline std::string digest(std::string_view bytes) { return hex64(fnv1a64(bytes)); }

inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace detail

// ---------------------------------------------------------------------------
// catalog

struct StubArgs {
  std::string preset;
  std::string out;
  double margin = 0.10;
  std::uint64_t seed = 0;
};

inline int cmd_catalog_stub(const StubArgs& a, std::ostream& out) {
  const auto preset = detail::load_preset(a.preset);
  const auto cat = stub::generate_stub_catalog(preset, {a.margin, a.seed});
  text::write_file(a.out, serialize_catalog(cat));
  out << "wrote " << cat.entries.size() << " catalog rows to " << a.out << "\n";
  return 0;
}

struct SynthArgs {
  std::string catalog, manifest, audio_root;
  std::uint64_t seed = 0;
};

inline int cmd_catalog_synth(const SynthArgs& a, std::ostream& out) {
  std::vector<CatalogEntry> entries;
  if (!a.manifest.empty()) {
    for (const auto& m : load_manifest(a.manifest).entries) entries.push_back(m.entry);
  } else {
    entries = load_catalog(a.catalog).entries;
  }
  for (const auto& e : entries)
    audio::write_wav(fs::path(a.audio_root) / e.path, stub::synth_clip(e, a.seed), audio::WavEncoding::pcm16);
  out << "wrote " << entries.size() << " audio files under " << a.audio_root << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// preset

inline int cmd_preset_show(const std::string& ref, std::ostream& out) {
  const auto p = detail::load_preset(ref);
  out << preset_to_json(p).dump(2) << "\n";
  const auto c = component_totals(p);
  out << "component sums: train " << *c.train_total << " (bonafide " << *c.train_bonafide << ", spoof "
      << *c.train_spoof << "); val " << *c.val_total << " (bonafide " << *c.val_bonafide << ", spoof "
      << *c.val_spoof << ")\n";
  return 0;
}

// ---------------------------------------------------------------------------
// manifest

struct ManifestBuildArgs {
  std::string preset, catalog, out;
  std::uint64_t seed = 0;
};

inline int cmd_manifest_build(const ManifestBuildArgs& a, std::ostream& out) {
  const auto preset = detail::load_preset(a.preset);
  const auto cat = load_catalog(a.catalog);
  const auto m = build_manifest(cat, preset, a.seed);
  text::write_file(a.out, serialize_manifest(m));
  out << "wrote " << m.entries.size() << " rows to " << a.out << ": " << detail::count_summary(m) << "\n";
  for (const auto& note : validate_manifest(m, preset).arithmetic_notes) out << "arithmetic note: " << note << "\n";
  return 0;
}

struct ManifestValidateArgs {
  std::string preset, manifest, catalog, report;
};

inline int cmd_manifest_validate(const ManifestValidateArgs& a, std::ostream& out) {
  const auto preset = detail::load_preset(a.preset);
  const auto m = load_manifest(a.manifest);
  std::optional<Catalog> cat;
  if (!a.catalog.empty()) cat = load_catalog(a.catalog);
  const auto r = validate_manifest(m, preset, cat ? &*cat : nullptr);
  out << render_validation(r);
  if (!a.report.empty()) text::write_file(a.report, validation_to_json(r).dump(2) + "\n");
  return r.passed() ? 0 : static_cast<int>(ErrorKind::constraint);
}

// ---------------------------------------------------------------------------
// preprocess

struct PreprocessArgs {
  std::string manifest, audio_root, out_dir, augment;
  std::uint64_t seed = 0;
  double augment_prob = 1.0;
  std::string pad = "repeat";
  double segment_s = 0;  // 0: from the manifest iteration
  bool keep_going = false;
  int jobs = 1;
};

namespace detail {

struct FileResult {
  std::string action;  // wrote | skipped | failed
  std::string detail;
  std::string state;   // fingerprint recorded for wrote/skipped
};

inline constexpr std::string_view kStateFile = ".preprocess_state.json";

}  // namespace detail

/// Manifest rows -> 16 kHz fixed-length float WAVs named <sample_id>.seg.wav.
/// Train rows are cropped at a seeded offset and, with --augment, passed
/// through the RawBoost recipe; validation rows are head-cropped and never
/// augmented. Every random choice is seeded by (--seed, sample_id), so
/// results do not depend on --jobs or on which files were already done.
inline int cmd_preprocess(const PreprocessArgs& a, std::ostream& out, std::ostream& err) {
  const auto m = load_manifest(a.manifest);
  std::optional<augment::AugmentationRecipe> recipe;
  if (!a.augment.empty()) recipe = augment::parse_recipe(text::read_file(a.augment));
  if (!(a.augment_prob >= 0 && a.augment_prob <= 1)) throw InputError("--augment-prob must be in [0, 1]");
  if (a.pad != "repeat" && a.pad != "zero") throw InputError("--pad must be repeat or zero");
  if (a.segment_s < 0) throw InputError("--segment-s must be positive");
  if (a.jobs < 1) throw InputError("--jobs must be at least 1");

  const fs::path out_dir(a.out_dir);
  fs::create_directories(out_dir);

  json prev_state = json::object();
  if (fs::exists(out_dir / detail::kStateFile)) {
    try {
      prev_state = json::parse(text::read_file(out_dir / detail::kStateFile)).value("entries", json::object());
    } catch (const json::exception&) {
      err << "warning: ignoring unreadable " << detail::kStateFile << "\n";
    }
  }

  const auto& rows = m.entries;
  std::vector<detail::FileResult> results(rows.size());

  auto process = [&](std::size_t idx) {
    const auto& row = rows[idx];
    const auto& e = row.entry;
    auto& res = results[idx];
    try {
      const fs::path in_path = fs::path(a.audio_root) / e.path;
      if (!fs::exists(in_path)) throw InputError("missing audio file " + in_path.string());
      const std::string in_bytes = text::read_file(in_path);

      audio::SegmentSpec spec;
      spec.target_length_s = a.segment_s > 0 ? a.segment_s : audio::segment_seconds_for_iteration(row.iteration);
      spec.pad_mode = a.pad == "zero" ? audio::PadMode::zero : audio::PadMode::repeat;
      const bool train = row.split == Split::train;
      spec.crop_mode = train ? audio::CropMode::seeded_random : audio::CropMode::head;
      spec.crop_seed = derive_seed(a.seed, "crop:" + e.sample_id);

      std::optional<augment::AugmentationRecipe> rec;
      if (recipe && train) {
        SplitMix64 coin(derive_seed(a.seed, "augment-draw:" + e.sample_id));
        if (a.augment_prob >= 1.0 || coin.unit() < a.augment_prob) {
          rec = *recipe;
          rec->seed = derive_seed(a.seed, "augment:" + e.sample_id);
        }
      }

      json params = {{"rate", kProcessingRateHz},
                     {"segment_s", spec.target_length_s},
                     {"pad", a.pad},
                     {"crop", train ? "seeded_random" : "head"},
                     {"crop_seed", spec.crop_seed},
                     {"augment", rec ? augment::recipe_to_json(*rec) : json(nullptr)}};
      const std::string fingerprint = detail::digest(in_bytes) + ":" + detail::digest(params.dump());
      const fs::path out_path = out_dir / (e.sample_id + ".seg.wav");

      if (prev_state.contains(e.sample_id) && fs::exists(out_path)) {
        const auto& st = prev_state[e.sample_id];
        if (st.value("fingerprint", "") == fingerprint &&
            st.value("output", "") == detail::digest(text::read_file(out_path))) {
          res = {"skipped", "up to date", st.dump()};
          return;
        }
      }

      auto clip = audio::decode_wav(in_bytes);
      std::string what;
      if (clip.sample_rate_hz != kProcessingRateHz) {
        what += "resampled " + std::to_string(clip.sample_rate_hz) + "->" + std::to_string(kProcessingRateHz) + "; ";
        clip = audio::resample(clip, kProcessingRateHz);
      }
      const std::size_t before = clip.samples.size();
      clip = audio::fix_length(clip, spec);
      if (before < clip.samples.size()) what += std::string(a.pad == "zero" ? "zero" : "repeat") + "-padded; ";
      else if (before > clip.samples.size()) what += std::string(train ? "random" : "head") + "-cropped; ";
      if (rec) {
        clip = augment::apply_recipe(clip, *rec);
        what += "augmented " + std::string(augment::mode_name(rec->mode)) + "; ";
      }
      what += std::to_string(clip.samples.size()) + " samples";
      const std::string out_bytes = audio::encode_wav(clip, audio::WavEncoding::float32);
      text::write_file(out_path, out_bytes);
      res = {"wrote", what, json{{"fingerprint", fingerprint}, {"output", detail::digest(out_bytes)}}.dump()};
    } catch (const std::exception& ex) {
      res = {"failed", ex.what(), ""};
    }
  };

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) process(i);
  };
  const int n_threads = std::min<int>(a.jobs, static_cast<int>(std::max<std::size_t>(rows.size(), 1)));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Rows are in canonical order, so the log is too.
  std::string log = "sample_id\taction\tdetail\n";
  std::string failures = "sample_id\tpath\treason\n";
  json state = json::object();
  std::size_t wrote = 0, skipped = 0, failed = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = results[i];
    const auto& id = rows[i].entry.sample_id;
    log += id + "\t" + r.action + "\t" + r.detail + "\n";
    if (r.action == "failed") {
      ++failed;
      failures += id + "\t" + rows[i].entry.path + "\t" + r.detail + "\n";
    } else {
      (r.action == "wrote" ? wrote : skipped) += 1;
      state[id] = json::parse(r.state);
    }
  }
  text::write_file(out_dir / "preprocess.log", log);
  text::write_file(out_dir / "failures.tsv", failures);
  text::write_file(out_dir / detail::kStateFile, json{{"format_version", kFormatVersion}, {"entries", state}}.dump(1) + "\n");

  out << "preprocess: " << wrote << " written, " << skipped << " skipped, " << failed << " failed\n";
  if (failed > 0) {
    err << "see " << (out_dir / "failures.tsv").string() << "\n";
    if (!a.keep_going) return static_cast<int>(ErrorKind::input);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// score

struct ScoreArgs {
  std::string manifest, processed_dir, audio_root, out, split = "all";
};

/// Scores rows with the built-in reference scorer (a smoke-test backend).
inline int cmd_score(const ScoreArgs& a, std::ostream& out) {
  if (a.processed_dir.empty() == a.audio_root.empty())
    throw InputError("give exactly one of --processed-dir and --audio-root");
  const auto m = load_manifest(a.manifest);
  const auto split = detail::split_filter(a.split);
  std::vector<eval::ScoreRecord> records;
  for (const auto& row : m.entries) {
    if (split && row.split != *split) continue;
    const fs::path p = a.processed_dir.empty() ? fs::path(a.audio_root) / row.entry.path
                                               : fs::path(a.processed_dir) / (row.entry.sample_id + ".seg.wav");
    records.push_back({row.entry.sample_id, eval::reference_score(audio::read_wav(p))});
  }
  text::write_file(a.out, eval::serialize_scores(records));
  out << "wrote " << records.size() << " scores to " << a.out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateArgs {
  std::string scores, manifest, out_dir, split = "all";
  double threshold = 0.5;
  int iteration = 0;  // 0: no iteration row
  std::string frontend = "unspecified";
  std::string task = "itw";
};

inline int cmd_evaluate(const EvaluateArgs& a, std::ostream& out, std::ostream& err) {
  const auto m = load_manifest(a.manifest);
  const auto records = eval::load_scores(a.scores);
  const auto split = detail::split_filter(a.split);
  if (a.task != "task1" && a.task != "task2" && a.task != "task3" && a.task != "itw")
    throw InputError("--task must be task1, task2, task3 or itw");
  if (a.iteration < 0 || a.iteration > 4) throw InputError("--iteration must be 1..4");

  std::unordered_map<std::string, const ManifestEntry*> by_id;
  for (const auto& row : m.entries) by_id.emplace(row.entry.sample_id, &row);

  std::vector<double> scores;
  std::vector<Label> labels;
  std::vector<std::string> sources;
  std::set<std::string> scored_ids;
  std::size_t out_of_split = 0;
  for (const auto& r : records) {
    const auto it = by_id.find(r.sample_id);
    if (it == by_id.end()) throw InputError("score file names unknown sample_id " + r.sample_id);
    if (split && it->second->split != *split) {
      ++out_of_split;
      continue;
    }
    scores.push_back(r.score);
    labels.push_back(it->second->entry.label);
    sources.push_back(it->second->entry.source_system);
    scored_ids.insert(r.sample_id);
  }
  std::vector<std::string> missing;
  for (const auto& row : m.entries)
    if ((!split || row.split == *split) && !scored_ids.count(row.entry.sample_id)) missing.push_back(row.entry.sample_id);

  const double ba = eval::balanced_accuracy(scores, labels, a.threshold);
  const auto eer = eval::compute_eer(scores, labels);
  const auto sweep = eval::threshold_sweep(scores, labels);
  const auto per_source = eval::per_source_metrics(scores, labels, sources, a.threshold);
  const auto counts = eval::confusion(scores, labels, a.threshold);
  // Worse than chance at every threshold almost always means the backend
  // emits "higher = spoof".
  const bool polarity_warning = eer.eer_percent > 50.0;

  json j;
  j["format_version"] = kFormatVersion;
  j["split"] = a.split;
  j["n_scored"] = scores.size();
  j["coverage"] = {{"expected", scores.size() + missing.size()},
                   {"scored", scores.size()},
                   {"missing_count", missing.size()},
                   {"missing", missing},
                   {"ignored_other_split", out_of_split}};
  j["threshold_used"] = a.threshold;
  j["confusion"] = {{"tp", counts.tp}, {"tn", counts.tn}, {"fp", counts.fp}, {"fn", counts.fn}};
  j["balanced_accuracy"] = ba;
  j["eer_percent"] = eer.eer_percent;
  j["eer_threshold"] = detail::finite_or_null(eer.threshold);
  j["polarity_warning"] = polarity_warning;
  json sweep_rows = json::array();
  for (const auto& r : sweep.rows)
    sweep_rows.push_back({{"threshold", detail::finite_or_null(r.threshold)},
                          {"threshold_text", text::format_double(r.threshold)},
                          {"balanced_accuracy", r.balanced_accuracy}});
  j["sweep"] = {{"best_index", sweep.best},
                {"best_threshold_text", text::format_double(sweep.best_row().threshold)},
                {"best_balanced_accuracy", sweep.best_row().balanced_accuracy},
                {"rows", sweep_rows}};
  json src = json::array();
  for (const auto& r : per_source)
    src.push_back({{"category", r.category},
                   {"source", r.source},
                   {"n", *r.n},
                   {"metric", r.metric},
                   {"recall", *r.recall},
                   {"flag_low", r.flag_low}});
  j["per_source"] = src;

  std::string txt = "split: " + a.split + "\n";
  txt += "scored: " + std::to_string(scores.size()) + " (missing " + std::to_string(missing.size()) + ")\n";
  txt += "balanced accuracy @ " + text::format_double(a.threshold) + ": " + text::fixed(ba, 3) + "\n";
  txt += "EER: " + text::fixed(eer.eer_percent, 2) + "% at threshold " + text::format_double(eer.threshold) + "\n";
  txt += "best sweep BA: " + text::fixed(sweep.best_row().balanced_accuracy, 3) + " at threshold " +
         text::format_double(sweep.best_row().threshold) + "\n\n";
  txt += report::render_source_table(per_source);

  if (a.iteration > 0) {
    report::IterationResult row;
    row.iteration = a.iteration;
    row.frontend = a.frontend;
    if (a.task == "task1") row.task1 = ba;
    else if (a.task == "task2") row.task2 = ba;
    else if (a.task == "task3") row.task3 = ba;
    else {
      row.itw_ba = ba;
      row.itw_eer_percent = eer.eer_percent;
    }
    j["iteration_row"] = {{"iteration", row.iteration}, {"frontend", row.frontend}, {"task", a.task}};
    txt += "\n" + report::render_iteration_table({row});
  }

  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  text::write_file(dir / "report.json", j.dump(2) + "\n");
  text::write_file(dir / "report.txt", txt);

  out << "BA " << text::fixed(ba, 3) << " @ " << text::format_double(a.threshold) << ", EER "
      << text::fixed(eer.eer_percent, 2) << "% (" << scores.size() << " scored)\n";
  if (!missing.empty()) {
    err << "warning: " << missing.size() << " manifest rows have no score:";
    for (std::size_t i = 0; i < std::min<std::size_t>(missing.size(), 10); ++i) err << " " << missing[i];
    err << (missing.size() > 10 ? " ...\n" : "\n");
  }
  if (polarity_warning)
    err << "WARNING: EER above 50% - scores look inverted; the toolkit expects higher = more likely bonafide\n";
  return 0;
}

// ---------------------------------------------------------------------------
// report / embeddings

inline int cmd_report(const std::string& kind, const std::string& input, const std::string& output, std::ostream& out) {
  const std::string bytes = text::read_file(input);
  std::string table;
  try {
    table = kind == "iterations" ? report::render_iteration_table(report::parse_iteration_results(bytes))
                                 : report::render_source_table(report::parse_source_rows(bytes));
  } catch (const ParseError& e) {
    throw InputError(input + ": " + e.what());
  }
  if (output.empty()) out << table;
  else text::write_file(output, table);
  return 0;
}

struct EmbeddingArgs {
  std::string input, out_dir;
  bool svg = false;
};

inline int cmd_embeddings_analyze(const EmbeddingArgs& a, std::ostream& out) {
  report::EmbeddingSet set;
  try {
    set = report::parse_embeddings(text::read_file(a.input));
  } catch (const ParseError& e) {
    throw InputError(a.input + ": " + e.what());
  }
  const auto pca = report::pca_project(set, 2);
  const auto sep = report::separability_scores(set);

  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  std::string proj = "sample_id\tlabel\tpc1\tpc2\n";
  for (std::size_t i = 0; i < pca.projections.size(); ++i)
    proj += pca.sample_ids[i] + "\t" + std::string(to_string(set.records[i].label)) + "\t" +
            text::format_double(pca.projections[i][0]) + "\t" + text::format_double(pca.projections[i][1]) + "\n";
  text::write_file(dir / "projection.tsv", proj);
  json j = {{"format_version", kFormatVersion},
            {"n", set.records.size()},
            {"dim", set.dim},
            {"eigenvalues", pca.eigenvalues},
            {"explained_share", pca.explained_share},
            {"fisher_ratio", detail::finite_or_null(sep.fisher_ratio)},
            {"fisher_ratio_text", text::format_double(sep.fisher_ratio)},
            {"silhouette", sep.silhouette}};
  text::write_file(dir / "analysis.json", j.dump(2) + "\n");
  if (a.svg) text::write_file(dir / "scatter.svg", report::render_scatter_svg(pca, set));
  out << "n " << set.records.size() << ", d " << set.dim << ", fisher " << text::format_double(sep.fisher_ratio)
      << ", silhouette " << text::fixed(sep.silhouette, 4) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Audio deepfake detection data and evaluation toolkit", "adfkit"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto* catalog = app.add_subcommand("catalog", "Catalog utilities")->require_subcommand(1);
  StubArgs stub_a;
  auto* c_stub = catalog->add_subcommand("stub", "Generate a synthetic catalog sufficient for a preset");
  c_stub->add_option("--preset", stub_a.preset, "Bundled preset name or preset file")->required();
  c_stub->add_option("--out", stub_a.out, "Output catalog file")->required();
  c_stub->add_option("--margin", stub_a.margin, "Extra entries per quota group (fraction)");
  c_stub->add_option("--seed", stub_a.seed, "Seed");
  SynthArgs synth_a;
  auto* c_synth = catalog->add_subcommand("synth-audio", "Write placeholder WAVs for catalog or manifest rows");
  auto* synth_src = c_synth->add_option("--catalog", synth_a.catalog, "Catalog file");
  c_synth->add_option("--manifest", synth_a.manifest, "Manifest file (alternative to --catalog)")->excludes(synth_src);
  c_synth->add_option("--audio-root", synth_a.audio_root, "Directory receiving the files")->required();
  c_synth->add_option("--seed", synth_a.seed, "Seed");

  auto* preset = app.add_subcommand("preset", "Composition presets")->require_subcommand(1);
  std::string show_ref;
  auto* p_show = preset->add_subcommand("show", "Print a preset and its component sums");
  p_show->add_option("--preset", show_ref, "Bundled preset name or preset file")->required();

  auto* manifest = app.add_subcommand("manifest", "Build and validate manifests")->require_subcommand(1);
  ManifestBuildArgs build_a;
  auto* m_build = manifest->add_subcommand("build", "Sample a manifest from a catalog");
  m_build->add_option("--preset", build_a.preset, "Bundled preset name or preset file")->required();
  m_build->add_option("--catalog", build_a.catalog, "Catalog file")->required();
  m_build->add_option("--out", build_a.out, "Output manifest file")->required();
  m_build->add_option("--seed", build_a.seed, "Selection seed");
  ManifestValidateArgs val_a;
  auto* m_val = manifest->add_subcommand("validate", "Check a manifest against a preset");
  m_val->add_option("--preset", val_a.preset, "Bundled preset name or preset file")->required();
  m_val->add_option("--manifest", val_a.manifest, "Manifest file")->required();
  m_val->add_option("--catalog", val_a.catalog, "Also check membership in this catalog");
  m_val->add_option("--report", val_a.report, "Write the validation report as JSON");

  PreprocessArgs pre_a;
  auto* pre = app.add_subcommand("preprocess", "Resample, pad/crop and optionally augment manifest audio");
  pre->add_option("--manifest", pre_a.manifest, "Manifest file")->required();
  pre->add_option("--audio-root", pre_a.audio_root, "Root that manifest paths are relative to")->required();
  pre->add_option("--out-dir", pre_a.out_dir, "Output directory")->required();
  pre->add_option("--augment", pre_a.augment, "RawBoost recipe file (train rows only)");
  pre->add_option("--seed", pre_a.seed, "Seed for crops and augmentation");
  pre->add_option("--augment-prob", pre_a.augment_prob, "Share of train rows augmented");
  pre->add_option("--pad", pre_a.pad, "Pad mode: repeat or zero");
  pre->add_option("--segment-s", pre_a.segment_s, "Override segment length in seconds");
  pre->add_flag("--keep-going", pre_a.keep_going, "Exit 0 even when some files fail");
  pre->add_option("--jobs", pre_a.jobs, "Worker threads");

  ScoreArgs score_a;
  auto* sc = app.add_subcommand("score", "Score audio with the built-in reference scorer");
  sc->add_option("--manifest", score_a.manifest, "Manifest file")->required();
  sc->add_option("--processed-dir", score_a.processed_dir, "Directory of <sample_id>.seg.wav files");
  sc->add_option("--audio-root", score_a.audio_root, "Score the raw files instead");
  sc->add_option("--split", score_a.split, "train, val or all");
  sc->add_option("--out", score_a.out, "Output score file")->required();

  EvaluateArgs ev_a;
  auto* ev = app.add_subcommand("evaluate", "Compute BA, EER, sweep and per-source metrics");
  ev->add_option("--scores", ev_a.scores, "Score file")->required();
  ev->add_option("--manifest", ev_a.manifest, "Manifest file")->required();
  ev->add_option("--out-dir", ev_a.out_dir, "Directory for report.json and report.txt")->required();
  ev->add_option("--split", ev_a.split, "train, val or all");
  ev->add_option("--threshold", ev_a.threshold, "Decision threshold (bonafide iff score >= threshold)");
  ev->add_option("--iteration", ev_a.iteration, "Also emit an iteration-table row for this iteration");
  ev->add_option("--frontend", ev_a.frontend, "Front-end name for the iteration row");
  ev->add_option("--task", ev_a.task, "Column for the iteration row: task1, task2, task3 or itw");

  auto* rep = app.add_subcommand("report", "Render tables")->require_subcommand(1);
  std::string rep_in, rep_out;
  auto* r_it = rep->add_subcommand("iterations", "Iteration progression table");
  auto* r_src = rep->add_subcommand("sources", "Per-source table");
  for (auto* r : {r_it, r_src}) {
    r->add_option("--input", rep_in, "Tab-separated input")->required();
    r->add_option("--out", rep_out, "Write here instead of stdout");
  }

  auto* emb = app.add_subcommand("embeddings", "Embedding analysis")->require_subcommand(1);
  EmbeddingArgs emb_a;
  auto* e_an = emb->add_subcommand("analyze", "PCA projection and class separability");
  e_an->add_option("--input", emb_a.input, "Embedding file")->required();
  e_an->add_option("--out-dir", emb_a.out_dir, "Output directory")->required();
  e_an->add_flag("--svg", emb_a.svg, "Also write scatter.svg");

  std::vector<std::string> argv_store = {"adfkit"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ErrorKind::input);
  }

  try {
    if (c_stub->parsed()) return cmd_catalog_stub(stub_a, out);
    if (c_synth->parsed()) {
      if (synth_a.catalog.empty() && synth_a.manifest.empty()) throw InputError("give --catalog or --manifest");
      return cmd_catalog_synth(synth_a, out);
    }
    if (p_show->parsed()) return cmd_preset_show(show_ref, out);
    if (m_build->parsed()) return cmd_manifest_build(build_a, out);
    if (m_val->parsed()) return cmd_manifest_validate(val_a, out);
    if (pre->parsed()) return cmd_preprocess(pre_a, out, err);
    if (sc->parsed()) return cmd_score(score_a, out);
    if (ev->parsed()) return cmd_evaluate(ev_a, out, err);
    if (r_it->parsed()) return cmd_report("iterations", rep_in, rep_out, out);
    if (r_src->parsed()) return cmd_report("sources", rep_in, rep_out, out);
    if (e_an->parsed()) return cmd_embeddings_analyze(emb_a, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return static_cast<int>(ErrorKind::internal);
  }
  err << "error: no command\n";
  return static_cast<int>(ErrorKind::input);
}

}  // namespace adfkit::cli
