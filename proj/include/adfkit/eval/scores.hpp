#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "adfkit/error.hpp"
#include "adfkit/text.hpp"

namespace adfkit::eval {

/// One backend score. Higher means more likely bonafide.
struct ScoreRecord {
  std::string sample_id;
  double score = 0;

  friend bool operator==(const ScoreRecord&, const ScoreRecord&) = default;
};

inline constexpr std::string_view kScoreHeader = "sample_id\tscore";

inline std::vector<ScoreRecord> parse_scores(std::string_view bytes) {
  std::vector<ScoreRecord> out;
  std::unordered_set<std::string> ids;
  bool seen_header = false;
  text::for_each_line(bytes, [&](std::size_t line_no, std::string_view line) {
    if (line.front() == '#') return;
    if (!seen_header) {
      if (line != kScoreHeader) throw ParseError(line_no, "expected score header \"sample_id\\tscore\"");
      seen_header = true;
      return;
    }
    const auto cols = text::split(line);
    if (cols.size() != 2) throw ParseError(line_no, "expected 2 columns, found " + std::to_string(cols.size()));
    if (cols[0].empty()) throw ParseError(line_no, "empty sample_id");
    const auto v = text::parse_double(cols[1]);
    if (!v || !std::isfinite(*v)) throw ParseError(line_no, "score is not a finite number");
    if (!ids.insert(std::string(cols[0])).second) throw ParseError(line_no, "duplicate sample_id " + std::string(cols[0]));
    out.push_back({std::string(cols[0]), *v});
  });
  if (!seen_header) throw InputError("score file has no header line");
  return out;
}

inline std::vector<ScoreRecord> load_scores(const std::filesystem::path& path) {
  const std::string bytes = text::read_file(path);
  try {
    return parse_scores(bytes);
  } catch (const ParseError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

/// Header plus one row per record, sorted by sample_id.
inline std::string serialize_scores(std::vector<ScoreRecord> records) {
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) { return a.sample_id < b.sample_id; });
  std::string out(kScoreHeader);
  out += '\n';
  for (const auto& r : records) {
    if (!std::isfinite(r.score)) throw InputError("non-finite score for " + r.sample_id);
    out += r.sample_id;
    out += '\t';
    out += text::format_double(r.score);
    out += '\n';
  }
  return out;
}

}  // namespace adfkit::eval
