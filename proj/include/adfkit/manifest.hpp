#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "adfkit/catalog.hpp"
#include "adfkit/error.hpp"
#include "adfkit/preset.hpp"
#include "adfkit/rng.hpp"
#include "adfkit/text.hpp"

namespace adfkit {

struct ManifestEntry {
  CatalogEntry entry;
  Split split = Split::train;
  int iteration = 1;
  std::uint64_t selection_seed = 0;

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct Manifest {
  std::vector<ManifestEntry> entries;

  friend bool operator==(const Manifest&, const Manifest&) = default;
};

inline void sort_canonical(Manifest& m) {
  std::stable_sort(m.entries.begin(), m.entries.end(),
                   [](const ManifestEntry& a, const ManifestEntry& b) { return canonical_less(a.entry, b.entry); });
}

// ---------------------------------------------------------------------------
// Selection

struct MlaadSplit {
  std::vector<CatalogEntry> train;
  std::vector<CatalogEntry> val;
};

namespace detail {

inline std::vector<CatalogEntry> canonical_copy(const std::vector<CatalogEntry>& entries) {
  auto out = entries;
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

/// Picks `count` of `pool` (already canonically ordered) or throws a
/// shortfall error naming `what`.
inline std::vector<std::size_t> pick(std::vector<std::size_t> pool, std::size_t count, SplitMix64& rng,
                                     const std::string& what) {
  if (pool.size() < count)
    throw ConstraintError("insufficient eligible samples for " + what + ": need " + std::to_string(count) +
                          ", have " + std::to_string(pool.size()) + " (shortfall " +
                          std::to_string(count - pool.size()) + ")");
  select_prefix(pool, count, rng);
  return pool;
}

}  // namespace detail

/// System-level MLAAD partition. For each rule, whole TTS systems of that
/// language are assigned to validation or training, then the requested
/// number of samples is drawn uniformly from each side. Each language uses
/// its own stream derive_seed(seed, language), so adding a rule does not
/// perturb the selections of the others.
inline MlaadSplit build_mlaad_split(const std::vector<CatalogEntry>& mlaad_entries,
                                    const std::vector<MlaadRule>& rules, std::uint64_t seed) {
  const auto sorted = detail::canonical_copy(mlaad_entries);
  MlaadSplit out;
  std::set<std::string> seen_languages;
  for (const auto& rule : rules) {
    if (!seen_languages.insert(rule.language).second)
      throw InputError("duplicate MLAAD rule for language " + rule.language);

    std::vector<std::size_t> idx;
    std::set<std::string> system_set;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      const auto& e = sorted[i];
      if (e.dataset == Dataset::MLAAD && e.label == Label::spoof && e.language == rule.language) {
        idx.push_back(i);
        system_set.insert(e.source_system);
      }
    }
    if (idx.empty()) throw ConstraintError("MLAAD language " + rule.language + " is absent from the catalog");

    std::vector<std::string> systems(system_set.begin(), system_set.end());
    std::size_t needed = rule.min_systems;
    if (rule.placement == MlaadPlacement::split) needed = std::max(needed, rule.val_systems + 1);
    if (systems.size() < needed)
      throw ConstraintError("MLAAD language " + rule.language + " has " + std::to_string(systems.size()) +
                            " distinct systems, need " + std::to_string(needed));

    SplitMix64 rng(derive_seed(seed, rule.language));
    std::set<std::string> val_systems;
    switch (rule.placement) {
      case MlaadPlacement::all_val: val_systems = system_set; break;
      case MlaadPlacement::all_train: break;
      case MlaadPlacement::split: {
        auto chosen = systems;
        select_prefix(chosen, rule.val_systems, rng);
        val_systems.insert(chosen.begin(), chosen.end());
        break;
      }
    }

    std::vector<std::size_t> val_pool, train_pool;
    for (const std::size_t i : idx) (val_systems.count(sorted[i].source_system) ? val_pool : train_pool).push_back(i);

    for (const std::size_t i : detail::pick(val_pool, rule.val_count, rng, "MLAAD/" + rule.language + "/val"))
      out.val.push_back(sorted[i]);
    for (const std::size_t i : detail::pick(train_pool, rule.train_count, rng, "MLAAD/" + rule.language + "/train"))
      out.train.push_back(sorted[i]);
  }
  return out;
}

/// Realizes a composition preset over a catalog.
///
/// Candidates are put in canonical (dataset, sample_id) order first, so the
/// result depends only on catalog content, not row order. Quota lines are
/// served in preset order from one SplitMix64 stream seeded with
/// derive_seed(seed, "quotas"); each line draws without replacement from
/// entries not taken by an earlier line, which keeps train and val
/// disjoint. MLAAD rules run afterwards on the remaining MLAAD entries with
/// derive_seed(seed, "mlaad").
inline Manifest build_manifest(const Catalog& catalog, const CompositionPreset& preset, std::uint64_t seed) {
  const auto sorted = detail::canonical_copy(catalog.entries);
  std::vector<bool> used(sorted.size(), false);
  Manifest m;
  auto emit = [&](const CatalogEntry& e, Split split) { m.entries.push_back({e, split, preset.iteration, seed}); };

  SplitMix64 rng(derive_seed(seed, "quotas"));
  for (const auto& line : preset.quotas) {
    if (line.count == 0) continue;
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (!used[i] && line.matches(sorted[i])) pool.push_back(i);
    for (const std::size_t i : detail::pick(std::move(pool), line.count, rng, "quota " + line.describe())) {
      used[i] = true;
      emit(sorted[i], line.split);
    }
  }

  if (!preset.mlaad_rules.empty()) {
    std::vector<CatalogEntry> rest;
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (!used[i] && sorted[i].dataset == Dataset::MLAAD) rest.push_back(sorted[i]);
    const auto split = build_mlaad_split(rest, preset.mlaad_rules, derive_seed(seed, "mlaad"));
    for (const auto& e : split.train) emit(e, Split::train);
    for (const auto& e : split.val) emit(e, Split::val);
  }

  sort_canonical(m);
  return m;
}

// ---------------------------------------------------------------------------
// Validation

struct QuotaCheck {
  std::string line;
  std::size_t expected = 0;
  std::size_t actual = 0;
  bool pass() const { return expected == actual; }
};

/// Declared-total comparison. When the preset's own components do not add
/// up to the declared figure the line is advisory: it is reported (and an
/// arithmetic note raised) but does not decide pass/fail.
struct TotalsCheck {
  std::string field;
  std::size_t declared = 0;
  std::size_t component_sum = 0;
  std::size_t actual = 0;
  bool advisory() const { return declared != component_sum; }
  bool pass() const { return declared == actual; }
};

struct StructuralCheck {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<QuotaCheck> quotas;
  std::vector<TotalsCheck> totals;
  std::vector<StructuralCheck> checks;
  std::vector<std::string> arithmetic_notes;

  std::size_t failing_quotas() const {
    return static_cast<std::size_t>(std::count_if(quotas.begin(), quotas.end(), [](const auto& q) { return !q.pass(); }));
  }

  bool passed() const {
    return failing_quotas() == 0 &&
           std::all_of(totals.begin(), totals.end(), [](const auto& t) { return t.advisory() || t.pass(); }) &&
           std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
  }
};

/// Compares a manifest against the preset that should have produced it.
/// Never throws and never modifies its inputs. Passing `catalog` adds the
/// membership check (every (sample_id, dataset) exists in it).
inline ValidationReport validate_manifest(const Manifest& manifest, const CompositionPreset& preset,
                                          const Catalog* catalog = nullptr) {
  ValidationReport r;

  for (const auto& line : all_quota_lines(preset)) {
    std::size_t actual = 0;
    for (const auto& me : manifest.entries)
      if (me.split == line.split && line.matches(me.entry)) ++actual;
    r.quotas.push_back({line.describe(), line.count, actual});
  }

  std::size_t tb = 0, ts = 0, vb = 0, vs = 0;
  for (const auto& me : manifest.entries) {
    const bool bona = me.entry.label == Label::bonafide;
    (me.split == Split::train ? (bona ? tb : ts) : (bona ? vb : vs)) += 1;
  }
  if (preset.declared_totals) {
    const auto& d = *preset.declared_totals;
    const auto c = component_totals(preset);
    auto add = [&](const char* name, const std::optional<std::size_t>& declared, const std::optional<std::size_t>& comp,
                   std::size_t actual) {
      if (!declared) return;
      TotalsCheck t{name, *declared, comp.value_or(0), actual};
      if (t.advisory())
        r.arithmetic_notes.push_back(std::string(name) + ": declared " + std::to_string(t.declared) +
                                     " but component quotas sum to " + std::to_string(t.component_sum) +
                                     " (difference " +
                                     std::to_string(static_cast<long long>(t.component_sum) -
                                                    static_cast<long long>(t.declared)) +
                                     "; manifest has " + std::to_string(actual) + ")");
      r.totals.push_back(std::move(t));
    };
    add("train_total", d.train_total, c.train_total, tb + ts);
    add("train_bonafide", d.train_bonafide, c.train_bonafide, tb);
    add("train_spoof", d.train_spoof, c.train_spoof, ts);
    add("val_total", d.val_total, c.val_total, vb + vs);
    add("val_bonafide", d.val_bonafide, c.val_bonafide, vb);
    add("val_spoof", d.val_spoof, c.val_spoof, vs);
  }

  // Structural checks.
  {
    std::unordered_map<std::string, Split> split_of;
    std::vector<std::string> dup, crossed;
    for (const auto& me : manifest.entries) {
      const auto [it, inserted] = split_of.emplace(me.entry.sample_id, me.split);
      if (!inserted) (it->second == me.split ? dup : crossed).push_back(me.entry.sample_id);
    }
    r.checks.push_back({"train/val disjoint", crossed.empty(),
                        crossed.empty() ? "" : std::to_string(crossed.size()) + " ids in both, e.g. " + crossed.front()});
    r.checks.push_back({"unique sample_id", dup.empty(),
                        dup.empty() ? "" : std::to_string(dup.size()) + " repeated, e.g. " + dup.front()});
  }
  {
    std::size_t wrong = 0;
    for (const auto& me : manifest.entries) wrong += me.iteration != preset.iteration;
    r.checks.push_back({"iteration tag", wrong == 0,
                        wrong == 0 ? "" : std::to_string(wrong) + " entries not tagged " + std::to_string(preset.iteration)});
  }
  {
    const auto lines = all_quota_lines(preset);
    std::size_t orphans = 0;
    std::string example;
    for (const auto& me : manifest.entries) {
      const bool covered = std::any_of(lines.begin(), lines.end(), [&](const QuotaLine& q) {
        return q.count > 0 && q.split == me.split && q.matches(me.entry);
      });
      if (!covered && orphans++ == 0) example = me.entry.sample_id;
    }
    r.checks.push_back({"entries covered by quotas", orphans == 0,
                        orphans == 0 ? "" : std::to_string(orphans) + " entries match no quota, e.g. " + example});
  }
  if (!preset.mlaad_rules.empty()) {
    std::map<std::string, std::pair<std::set<std::string>, std::set<std::string>>> by_lang;
    for (const auto& me : manifest.entries) {
      if (me.entry.dataset != Dataset::MLAAD) continue;
      auto& [tr, va] = by_lang[me.entry.language];
      (me.split == Split::train ? tr : va).insert(me.entry.source_system);
    }
    std::string overlap;
    for (const auto& [lang, sets] : by_lang)
      for (const auto& s : sets.first)
        if (sets.second.count(s)) overlap += (overlap.empty() ? "" : ", ") + lang + ":" + s;
    r.checks.push_back({"MLAAD train/val systems disjoint", overlap.empty(), overlap});
  }
  if (catalog) {
    std::set<std::pair<std::string, Dataset>> keys;
    for (const auto& e : catalog->entries) keys.emplace(e.sample_id, e.dataset);
    std::size_t missing = 0;
    std::string example;
    for (const auto& me : manifest.entries)
      if (!keys.count({me.entry.sample_id, me.entry.dataset}) && missing++ == 0) example = me.entry.sample_id;
    r.checks.push_back({"entries exist in catalog", missing == 0,
                        missing == 0 ? "" : std::to_string(missing) + " not in catalog, e.g. " + example});
  }
  return r;
}

inline std::string render_validation(const ValidationReport& r) {
  std::string out;
  for (const auto& q : r.quotas)
    out += std::string(q.pass() ? "PASS" : "FAIL") + "  quota " + q.line + "  expected " +
           std::to_string(q.expected) + "  actual " + std::to_string(q.actual) + "\n";
  for (const auto& t : r.totals)
    out += std::string(t.advisory() ? "NOTE" : (t.pass() ? "PASS" : "FAIL")) + "  total " + t.field + "  declared " +
           std::to_string(t.declared) + "  components " + std::to_string(t.component_sum) + "  actual " +
           std::to_string(t.actual) + "\n";
  for (const auto& c : r.checks)
    out += std::string(c.pass ? "PASS" : "FAIL") + "  check " + c.name + (c.detail.empty() ? "" : "  (" + c.detail + ")") +
           "\n";
  for (const auto& n : r.arithmetic_notes) out += "arithmetic note: " + n + "\n";
  out += r.passed() ? "validation passed\n" : "validation FAILED\n";
  return out;
}

inline nlohmann::json validation_to_json(const ValidationReport& r) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["passed"] = r.passed();
  j["quotas"] = nlohmann::json::array();
  for (const auto& q : r.quotas)
    j["quotas"].push_back({{"line", q.line}, {"expected", q.expected}, {"actual", q.actual}, {"pass", q.pass()}});
  j["totals"] = nlohmann::json::array();
  for (const auto& t : r.totals)
    j["totals"].push_back({{"field", t.field},
                           {"declared", t.declared},
                           {"component_sum", t.component_sum},
                           {"actual", t.actual},
                           {"advisory", t.advisory()},
                           {"pass", t.pass()}});
  j["checks"] = nlohmann::json::array();
  for (const auto& c : r.checks) j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["arithmetic_notes"] = r.arithmetic_notes;
  return j;
}

// ---------------------------------------------------------------------------
// File format

inline constexpr std::string_view kManifestExtraHeader = "\tsplit\titeration\tselection_seed";

inline std::string serialize_manifest(const Manifest& m) {
  Manifest sorted = m;
  sort_canonical(sorted);
  std::string out(kCatalogHeader);
  out += kManifestExtraHeader;
  out += '\n';
  for (const auto& me : sorted.entries) {
    detail::append_catalog_columns(out, me.entry);
    out += '\t';
    out += to_string(me.split);
    out += '\t';
    out += std::to_string(me.iteration);
    out += '\t';
    out += std::to_string(me.selection_seed);
    out += '\n';
  }
  return out;
}

inline Manifest parse_manifest(std::string_view bytes) {
  Manifest m;
  bool seen_header = false;
  std::unordered_set<std::string> ids;
  const std::string header = std::string(kCatalogHeader) + std::string(kManifestExtraHeader);
  text::for_each_line(bytes, [&](std::size_t line_no, std::string_view line) {
    if (line.front() == '#') return;
    if (!seen_header) {
      if (line != header) throw ParseError(line_no, "expected manifest header");
      seen_header = true;
      return;
    }
    const auto cols = text::split(line);
    if (cols.size() != 10)
      throw ParseError(line_no, "expected 10 columns, found " + std::to_string(cols.size()));
    ManifestEntry me;
    me.entry = detail::parse_catalog_columns(cols, line_no);
    const auto split = parse_split(cols[7]);
    if (!split) throw ParseError(line_no, "unknown split \"" + std::string(cols[7]) + "\"");
    me.split = *split;
    const auto iter = text::parse_u64(cols[8]);
    if (!iter || *iter < 1 || *iter > 4) throw ParseError(line_no, "iteration must be 1..4");
    me.iteration = static_cast<int>(*iter);
    const auto seed = text::parse_u64(cols[9]);
    if (!seed) throw ParseError(line_no, "bad selection_seed");
    me.selection_seed = *seed;
    if (!ids.insert(me.entry.sample_id).second) throw ParseError(line_no, "duplicate sample_id " + me.entry.sample_id);
    m.entries.push_back(std::move(me));
  });
  if (!seen_header) throw InputError("manifest has no header line");
  return m;
}

inline Manifest load_manifest(const std::filesystem::path& path) {
  try {
    return parse_manifest(text::read_file(path));
  } catch (const ParseError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace adfkit
