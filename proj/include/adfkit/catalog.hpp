#pragma once

#include <algorithm>
#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "adfkit/error.hpp"
#include "adfkit/text.hpp"

namespace adfkit {

enum class Label { bonafide, spoof };

enum class Dataset { ASVspoof19LA, MAILABS, MLAAD, CodecFakeA2, FamousFigures, SpoofCeleb, Other };

inline constexpr std::array<Dataset, 7> kAllDatasets = {
    Dataset::ASVspoof19LA, Dataset::MAILABS,    Dataset::MLAAD, Dataset::CodecFakeA2,
    Dataset::FamousFigures, Dataset::SpoofCeleb, Dataset::Other};

inline std::string_view to_string(Label l) { return l == Label::bonafide ? "bonafide" : "spoof"; }

inline std::string_view to_string(Dataset d) {
  switch (d) {
    case Dataset::ASVspoof19LA: return "ASVspoof19LA";
    case Dataset::MAILABS: return "MAILABS";
    case Dataset::MLAAD: return "MLAAD";
    case Dataset::CodecFakeA2: return "CodecFakeA2";
    case Dataset::FamousFigures: return "FamousFigures";
    case Dataset::SpoofCeleb: return "SpoofCeleb";
    case Dataset::Other: return "Other";
  }
  return "Other";
}

inline std::optional<Label> parse_label(std::string_view s) {
  if (s == "bonafide") return Label::bonafide;
  if (s == "spoof") return Label::spoof;
  return std::nullopt;
}

inline std::optional<Dataset> parse_dataset(std::string_view s) {
  for (const Dataset d : kAllDatasets)
    if (to_string(d) == s) return d;
  return std::nullopt;
}

/// Lowercase two-letter ISO-639-1 code, or "und".
inline bool is_language_code(std::string_view s) {
  if (s == "und") return true;
  return s.size() == 2 && std::all_of(s.begin(), s.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

struct CatalogEntry {
  std::string sample_id;
  std::string path;
  Label label = Label::bonafide;
  Dataset dataset = Dataset::Other;
  std::string language = "und";
  /// TTS system for spoof, recording source for bonafide.
  std::string source_system;
  std::optional<double> duration_s;

  friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

/// Candidate order used for sampling and serialization: (dataset token, sample_id).
inline bool canonical_less(const CatalogEntry& a, const CatalogEntry& b) {
  const auto da = to_string(a.dataset), db = to_string(b.dataset);
  if (da != db) return da < db;
  return a.sample_id < b.sample_id;
}

struct Catalog {
  std::vector<CatalogEntry> entries;
};

inline constexpr std::string_view kCatalogHeader =
    "sample_id\tpath\tlabel\tdataset\tlanguage\tsource_system\tduration_s";

namespace detail {

/// Parses the seven catalog columns of `cols` starting at index 0.
inline CatalogEntry parse_catalog_columns(const std::vector<std::string_view>& cols, std::size_t line_no) {
  CatalogEntry e;
  e.sample_id = std::string(cols[0]);
  if (e.sample_id.empty()) throw ParseError(line_no, "empty sample_id");
  e.path = std::string(cols[1]);
  const auto label = parse_label(cols[2]);
  if (!label) throw ParseError(line_no, "unknown label \"" + std::string(cols[2]) + "\"");
  e.label = *label;
  const auto ds = parse_dataset(cols[3]);
  if (!ds) throw ParseError(line_no, "unknown dataset \"" + std::string(cols[3]) + "\"");
  e.dataset = *ds;
  if (!is_language_code(cols[4]))
    throw ParseError(line_no, "bad language code \"" + std::string(cols[4]) + "\"");
  e.language = std::string(cols[4]);
  e.source_system = std::string(cols[5]);
  if (e.label == Label::spoof && e.source_system.empty())
    throw ParseError(line_no, "spoof entry " + e.sample_id + " has no source_system");
  if (!cols[6].empty()) {
    const auto d = text::parse_double(cols[6]);
    if (!d || !std::isfinite(*d) || *d < 0)
      throw ParseError(line_no, "bad duration_s \"" + std::string(cols[6]) + "\"");
    e.duration_s = *d;
  }
  return e;
}

inline void append_catalog_columns(std::string& out, const CatalogEntry& e) {
  out += e.sample_id;
  out += '\t';
  out += e.path;
  out += '\t';
  out += to_string(e.label);
  out += '\t';
  out += to_string(e.dataset);
  out += '\t';
  out += e.language;
  out += '\t';
  out += e.source_system;
  out += '\t';
  if (e.duration_s) out += text::format_double(*e.duration_s);
}

}  // namespace detail

/// Parses catalog text. Lines starting with '#' are comments; the first
/// other line must be the header.
inline Catalog parse_catalog(std::string_view bytes) {
  Catalog cat;
  bool seen_header = false;
  std::unordered_set<std::string> ids;
  text::for_each_line(bytes, [&](std::size_t line_no, std::string_view line) {
    if (line.front() == '#') return;
    if (!seen_header) {
      if (line != kCatalogHeader) throw ParseError(line_no, "expected catalog header");
      seen_header = true;
      return;
    }
    const auto cols = text::split(line);
    if (cols.size() != 7)
      throw ParseError(line_no, "expected 7 columns, found " + std::to_string(cols.size()));
    CatalogEntry e = detail::parse_catalog_columns(cols, line_no);
    if (!ids.insert(e.sample_id).second) throw ParseError(line_no, "duplicate sample_id " + e.sample_id);
    cat.entries.push_back(std::move(e));
  });
  if (!seen_header) throw InputError("catalog has no header line");
  return cat;
}

inline Catalog load_catalog(const std::filesystem::path& path) {
  try {
    return parse_catalog(text::read_file(path));
  } catch (const ParseError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

inline std::string serialize_catalog(const Catalog& cat) {
  std::string out(kCatalogHeader);
  out += '\n';
  for (const auto& e : cat.entries) {
    detail::append_catalog_columns(out, e);
    out += '\n';
  }
  return out;
}

}  // namespace adfkit
