#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "adfkit/catalog.hpp"
#include "adfkit/error.hpp"

namespace adfkit {

enum class Split { train, val };

inline std::string_view to_string(Split s) { return s == Split::train ? "train" : "val"; }

inline std::optional<Split> parse_split(std::string_view s) {
  if (s == "train") return Split::train;
  if (s == "val") return Split::val;
  return std::nullopt;
}

/// One line of a composition recipe: draw `count` entries matching the
/// filter into `split`.
struct QuotaLine {
  Dataset dataset = Dataset::Other;
  Label label = Label::bonafide;
  std::vector<std::string> languages;        // empty: any language
  std::vector<std::string> source_prefixes;  // empty: any source_system
  Split split = Split::train;
  std::size_t count = 0;

  bool matches(const CatalogEntry& e) const {
    if (e.dataset != dataset || e.label != label) return false;
    if (!languages.empty() && std::find(languages.begin(), languages.end(), e.language) == languages.end())
      return false;
    if (!source_prefixes.empty() &&
        std::none_of(source_prefixes.begin(), source_prefixes.end(),
                     [&](const std::string& p) { return e.source_system.starts_with(p); }))
      return false;
    return true;
  }

  std::string describe() const {
    std::string s(to_string(dataset));
    s += '/';
    s += to_string(label);
    s += '/';
    if (languages.empty()) {
      s += '*';
    } else {
      for (std::size_t i = 0; i < languages.size(); ++i) s += (i ? "," : "") + languages[i];
    }
    if (!source_prefixes.empty()) {
      s += "/src=";
      for (std::size_t i = 0; i < source_prefixes.size(); ++i) s += (i ? "|" : "") + source_prefixes[i];
    }
    s += '/';
    s += to_string(split);
    return s;
  }
};

enum class MlaadPlacement { split, all_val, all_train };

/// Per-language system-level split: `val_systems` whole TTS systems go to
/// validation, the rest to training, so the two never share a system.
struct MlaadRule {
  std::string language;
  MlaadPlacement placement = MlaadPlacement::split;
  std::size_t min_systems = 1;
  std::size_t val_systems = 0;
  std::size_t train_count = 0;
  std::size_t val_count = 0;
};

struct DeclaredTotals {
  std::optional<std::size_t> train_total, train_bonafide, train_spoof;
  std::optional<std::size_t> val_total, val_bonafide, val_spoof;
};

struct CompositionPreset {
  std::string name;
  int iteration = 1;
  std::vector<QuotaLine> quotas;
  std::vector<MlaadRule> mlaad_rules;
  int segment_length_s = 4;
  std::optional<DeclaredTotals> declared_totals;
  /// Carried through untouched (optimizer settings etc.); never interpreted.
  nlohmann::json training = nlohmann::json::object();
};

/// Quota lines equivalent to the MLAAD rules, one per (language, split)
/// with a nonzero count.
inline std::vector<QuotaLine> mlaad_quota_lines(const std::vector<MlaadRule>& rules) {
  std::vector<QuotaLine> lines;
  for (const auto& r : rules) {
    if (r.train_count > 0) lines.push_back({Dataset::MLAAD, Label::spoof, {r.language}, {}, Split::train, r.train_count});
    if (r.val_count > 0) lines.push_back({Dataset::MLAAD, Label::spoof, {r.language}, {}, Split::val, r.val_count});
  }
  return lines;
}

/// Every quota the preset implies, explicit lines first.
inline std::vector<QuotaLine> all_quota_lines(const CompositionPreset& p) {
  auto lines = p.quotas;
  const auto extra = mlaad_quota_lines(p.mlaad_rules);
  lines.insert(lines.end(), extra.begin(), extra.end());
  return lines;
}

/// Totals obtained by summing the preset's own component quotas.
inline DeclaredTotals component_totals(const CompositionPreset& p) {
  std::size_t tb = 0, ts = 0, vb = 0, vs = 0;
  for (const auto& q : all_quota_lines(p)) {
    const bool train = q.split == Split::train;
    const bool bona = q.label == Label::bonafide;
    (train ? (bona ? tb : ts) : (bona ? vb : vs)) += q.count;
  }
  return {tb + ts, tb, ts, vb + vs, vb, vs};
}

// ---------------------------------------------------------------------------
// JSON form

namespace detail {

inline std::size_t json_count(const nlohmann::json& j, const char* key, const std::string& ctx) {
  if (!j.contains(key)) return 0;
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw InputError(ctx + ": \"" + key + "\" must be a nonnegative integer");
  return v.get<std::size_t>();
}

inline std::vector<std::string> json_strings(const nlohmann::json& j, const char* key) {
  std::vector<std::string> out;
  if (j.contains(key))
    for (const auto& s : j.at(key)) out.push_back(s.get<std::string>());
  return out;
}

inline MlaadPlacement parse_placement(const std::string& s, const std::string& ctx) {
  if (s == "split") return MlaadPlacement::split;
  if (s == "all_val") return MlaadPlacement::all_val;
  if (s == "all_train") return MlaadPlacement::all_train;
  throw InputError(ctx + ": unknown placement \"" + s + "\"");
}

inline std::string_view placement_name(MlaadPlacement p) {
  switch (p) {
    case MlaadPlacement::split: return "split";
    case MlaadPlacement::all_val: return "all_val";
    case MlaadPlacement::all_train: return "all_train";
  }
  return "split";
}

}  // namespace detail

inline CompositionPreset preset_from_json(const nlohmann::json& j) {
  CompositionPreset p;
  try {
    p.name = j.value("name", std::string("custom"));
    p.iteration = j.at("iteration").get<int>();
    if (p.iteration < 1 || p.iteration > 4) throw InputError("preset iteration must be 1..4");
    p.segment_length_s = j.at("segment_length_s").get<int>();
    if (p.segment_length_s != 4 && p.segment_length_s != 12)
      throw InputError("preset segment_length_s must be 4 or 12");

    std::size_t idx = 0;
    for (const auto& q : j.value("quotas", nlohmann::json::array())) {
      const std::string ctx = "quota " + std::to_string(idx++);
      QuotaLine line;
      const auto ds = parse_dataset(q.at("dataset").get<std::string>());
      if (!ds) throw InputError(ctx + ": unknown dataset");
      line.dataset = *ds;
      const auto lb = parse_label(q.at("label").get<std::string>());
      if (!lb) throw InputError(ctx + ": unknown label");
      line.label = *lb;
      const auto sp = parse_split(q.at("split").get<std::string>());
      if (!sp) throw InputError(ctx + ": unknown split");
      line.split = *sp;
      line.languages = detail::json_strings(q, "languages");
      line.source_prefixes = detail::json_strings(q, "source_prefixes");
      line.count = detail::json_count(q, "count", ctx);
      p.quotas.push_back(std::move(line));
    }

    idx = 0;
    for (const auto& r : j.value("mlaad_rules", nlohmann::json::array())) {
      const std::string ctx = "mlaad rule " + std::to_string(idx++);
      MlaadRule rule;
      rule.language = r.at("language").get<std::string>();
      if (!is_language_code(rule.language)) throw InputError(ctx + ": bad language code");
      rule.placement = detail::parse_placement(r.value("placement", std::string("split")), ctx);
      rule.min_systems = r.contains("min_systems") ? detail::json_count(r, "min_systems", ctx) : 1;
      rule.val_systems = detail::json_count(r, "val_systems", ctx);
      rule.train_count = detail::json_count(r, "train_count", ctx);
      rule.val_count = detail::json_count(r, "val_count", ctx);
      if (rule.placement == MlaadPlacement::all_val && rule.train_count > 0)
        throw InputError(ctx + ": all_val rule with a train_count");
      if (rule.placement == MlaadPlacement::all_train && rule.val_count > 0)
        throw InputError(ctx + ": all_train rule with a val_count");
      p.mlaad_rules.push_back(std::move(rule));
    }

    if (j.contains("declared_totals")) {
      const auto& d = j.at("declared_totals");
      DeclaredTotals t;
      auto opt = [&](const char* k) -> std::optional<std::size_t> {
        if (!d.contains(k)) return std::nullopt;
        return detail::json_count(d, k, "declared_totals");
      };
      t.train_total = opt("train_total");
      t.train_bonafide = opt("train_bonafide");
      t.train_spoof = opt("train_spoof");
      t.val_total = opt("val_total");
      t.val_bonafide = opt("val_bonafide");
      t.val_spoof = opt("val_spoof");
      p.declared_totals = t;
    }
    if (j.contains("training")) p.training = j.at("training");
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed preset: ") + e.what());
  }
  return p;
}

inline nlohmann::json preset_to_json(const CompositionPreset& p) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["name"] = p.name;
  j["iteration"] = p.iteration;
  j["segment_length_s"] = p.segment_length_s;
  j["quotas"] = nlohmann::json::array();
  for (const auto& q : p.quotas) {
    nlohmann::json o{{"dataset", to_string(q.dataset)},
                     {"label", to_string(q.label)},
                     {"split", to_string(q.split)},
                     {"count", q.count}};
    if (!q.languages.empty()) o["languages"] = q.languages;
    if (!q.source_prefixes.empty()) o["source_prefixes"] = q.source_prefixes;
    j["quotas"].push_back(std::move(o));
  }
  if (!p.mlaad_rules.empty()) {
    j["mlaad_rules"] = nlohmann::json::array();
    for (const auto& r : p.mlaad_rules)
      j["mlaad_rules"].push_back({{"language", r.language},
                                  {"placement", detail::placement_name(r.placement)},
                                  {"min_systems", r.min_systems},
                                  {"val_systems", r.val_systems},
                                  {"train_count", r.train_count},
                                  {"val_count", r.val_count}});
  }
  if (p.declared_totals) {
    nlohmann::json d = nlohmann::json::object();
    const auto& t = *p.declared_totals;
    if (t.train_total) d["train_total"] = *t.train_total;
    if (t.train_bonafide) d["train_bonafide"] = *t.train_bonafide;
    if (t.train_spoof) d["train_spoof"] = *t.train_spoof;
    if (t.val_total) d["val_total"] = *t.val_total;
    if (t.val_bonafide) d["val_bonafide"] = *t.val_bonafide;
    if (t.val_spoof) d["val_spoof"] = *t.val_spoof;
    j["declared_totals"] = std::move(d);
  }
  j["training"] = p.training;
  return j;
}

inline CompositionPreset parse_preset(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("preset is not valid JSON: ") + e.what());
  }
  return preset_from_json(j);
}

}  // namespace adfkit
