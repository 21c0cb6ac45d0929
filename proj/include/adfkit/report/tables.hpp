#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adfkit/error.hpp"
#include "adfkit/eval/metrics.hpp"
#include "adfkit/text.hpp"

namespace adfkit::report {

/// One row of the iteration-progression table.
struct IterationResult {
  int iteration = 1;
  std::string frontend;
  std::optional<double> task1, task2, task3;
  std::optional<double> itw_ba;
  std::optional<double> itw_eer_percent;
};

inline constexpr std::string_view kMissingCell = "—";

namespace detail {

inline std::string emphasize(const std::string& cell) { return "**" + cell + "**"; }

/// Display width counting UTF-8 code points.
inline std::size_t display_width(std::string_view s) {
  std::size_t w = 0;
  for (const char c : s) w += (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  return w;
}

inline std::string render_grid(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = display_width(header[c]);
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], display_width(r[c]));
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out = "|";
    for (std::size_t c = 0; c < cells.size(); ++c) {
      out += ' ' + cells[c] + std::string(width[c] - display_width(cells[c]), ' ') + " |";
    }
    return out + "\n";
  };
  std::string out = line(header);
  out += "|";
  for (const std::size_t w : width) out += std::string(w + 2, '-') + "|";
  out += "\n";
  for (const auto& r : rows) out += line(r);
  return out;
}

}  // namespace detail

/// Iter | SSL Model | Task1 | Task2 | Task3 | ITW BA | ITW EER.
/// BA columns are printed with three decimals and EER with two; the best
/// value per column (highest BA, lowest EER, compared at display precision)
/// is wrapped in ** **. Missing values print as an em dash.
inline std::string render_iteration_table(const std::vector<IterationResult>& results) {
  if (results.empty()) throw InputError("iteration table needs at least one row");

  using Getter = std::optional<double> IterationResult::*;
  const std::array<Getter, 5> cols = {&IterationResult::task1, &IterationResult::task2, &IterationResult::task3,
                                      &IterationResult::itw_ba, &IterationResult::itw_eer_percent};
  auto decimals = [](std::size_t c) { return c == 4 ? 2 : 3; };
  auto rounded = [&](double v, std::size_t c) { return text::fixed(v, decimals(c)); };

  std::array<std::optional<double>, 5> best;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (const auto& r : results) {
      const auto& v = r.*cols[c];
      if (!v) continue;
      const double shown = *text::parse_double(rounded(*v, c));
      if (!best[c] || (c == 4 ? shown < *best[c] : shown > *best[c])) best[c] = shown;
    }
  }

  std::vector<std::vector<std::string>> rows;
  for (const auto& r : results) {
    std::vector<std::string> cells = {std::to_string(r.iteration), r.frontend};
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const auto& v = r.*cols[c];
      if (!v) {
        cells.emplace_back(kMissingCell);
        continue;
      }
      const std::string s = rounded(*v, c);
      cells.push_back(*text::parse_double(s) == *best[c] ? detail::emphasize(s) : s);
    }
    rows.push_back(std::move(cells));
  }
  return detail::render_grid({"Iter", "SSL Model", "Task1", "Task2", "Task3", "ITW BA", "ITW EER"}, rows);
}

/// Per-source table, one block per category in first-appearance order.
/// Metrics use two decimals; rows at or below 0.60 are wrapped in ** **.
inline std::string render_source_table(const std::vector<eval::SourceRow>& rows) {
  if (rows.empty()) throw InputError("source table needs at least one row");
  std::vector<std::string> categories;
  for (const auto& r : rows)
    if (std::find(categories.begin(), categories.end(), r.category) == categories.end()) categories.push_back(r.category);

  std::string out;
  for (const auto& cat : categories) {
    if (!out.empty()) out += "\n";
    out += "[" + (cat.empty() ? std::string("sources") : cat) + "]\n";
    std::vector<std::vector<std::string>> grid;
    for (const auto& r : rows) {
      if (r.category != cat) continue;
      const std::string metric = text::fixed(r.metric, 2);
      grid.push_back({r.source, r.n ? std::to_string(*r.n) : std::string(kMissingCell),
                      eval::is_low(r.metric) ? detail::emphasize(metric) : metric,
                      r.recall ? text::fixed(*r.recall, 2) : std::string(kMissingCell)});
    }
    out += detail::render_grid({"Source", "n", "BA", "Recall"}, grid);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tab-separated inputs for the renderers.

inline constexpr std::string_view kIterationHeader =
    "iteration\tfrontend\ttask1\ttask2\ttask3\titw_ba\titw_eer_percent";
inline constexpr std::string_view kSourceHeader = "category\tsource\tmetric";

namespace detail {

inline std::optional<double> optional_cell(std::string_view s, std::size_t line_no) {
  if (s.empty() || s == "-" || s == kMissingCell) return std::nullopt;
  const auto v = text::parse_double(s);
  if (!v || !std::isfinite(*v)) throw ParseError(line_no, "bad number \"" + std::string(s) + "\"");
  return v;
}

}  // namespace detail

inline std::vector<IterationResult> parse_iteration_results(std::string_view bytes) {
  std::vector<IterationResult> out;
  bool seen_header = false;
  text::for_each_line(bytes, [&](std::size_t line_no, std::string_view line) {
    if (line.front() == '#') return;
    if (!seen_header) {
      if (line != kIterationHeader) throw ParseError(line_no, "expected iteration-results header");
      seen_header = true;
      return;
    }
    const auto c = text::split(line);
    if (c.size() != 7) throw ParseError(line_no, "expected 7 columns");
    IterationResult r;
    const auto it = text::parse_u64(c[0]);
    if (!it || *it < 1 || *it > 4) throw ParseError(line_no, "iteration must be 1..4");
    r.iteration = static_cast<int>(*it);
    r.frontend = std::string(c[1]);
    r.task1 = detail::optional_cell(c[2], line_no);
    r.task2 = detail::optional_cell(c[3], line_no);
    r.task3 = detail::optional_cell(c[4], line_no);
    r.itw_ba = detail::optional_cell(c[5], line_no);
    r.itw_eer_percent = detail::optional_cell(c[6], line_no);
    if (!r.task1 && !r.task2 && !r.task3 && !r.itw_ba && !r.itw_eer_percent)
      throw ParseError(line_no, "row has no metric");
    out.push_back(std::move(r));
  });
  if (!seen_header) throw InputError("iteration results have no header line");
  return out;
}

inline std::vector<eval::SourceRow> parse_source_rows(std::string_view bytes) {
  std::vector<eval::SourceRow> out;
  bool seen_header = false;
  text::for_each_line(bytes, [&](std::size_t line_no, std::string_view line) {
    if (line.front() == '#') return;
    if (!seen_header) {
      if (line != kSourceHeader) throw ParseError(line_no, "expected source-rows header");
      seen_header = true;
      return;
    }
    const auto c = text::split(line);
    if (c.size() != 3) throw ParseError(line_no, "expected 3 columns");
    const auto m = text::parse_double(c[2]);
    if (!m || *m < 0 || *m > 1) throw ParseError(line_no, "metric must be in [0, 1]");
    out.push_back({std::string(c[0]), std::string(c[1]), std::nullopt, *m, std::nullopt, eval::is_low(*m)});
  });
  if (!seen_header) throw InputError("source rows have no header line");
  return out;
}

}  // namespace adfkit::report
