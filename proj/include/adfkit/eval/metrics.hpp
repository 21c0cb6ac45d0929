#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adfkit/catalog.hpp"
#include "adfkit/error.hpp"

namespace adfkit::eval {

/// Bonafide is the positive class; decision is bonafide iff score >= threshold.
struct ConfusionCounts {
  std::size_t tp = 0, tn = 0, fp = 0, fn = 0;

  std::size_t total() const { return tp + tn + fp + fn; }
  double tpr() const { return static_cast<double>(tp) / static_cast<double>(tp + fn); }
  double tnr() const { return static_cast<double>(tn) / static_cast<double>(tn + fp); }
  double balanced_accuracy() const { return (tpr() + tnr()) / 2.0; }
};

namespace detail {

inline void require_paired(std::span<const double> scores, std::span<const Label> labels) {
  if (scores.size() != labels.size()) throw InputError("scores and labels differ in length");
}

inline void require_both_classes(std::span<const Label> labels, const char* what) {
  const auto bona = std::count(labels.begin(), labels.end(), Label::bonafide);
  if (bona == 0 || bona == static_cast<std::ptrdiff_t>(labels.size()))
    throw InputError(std::string(what) + " undefined: need both bonafide and spoof samples");
}

}  // namespace detail

inline ConfusionCounts confusion(std::span<const double> scores, std::span<const Label> labels, double threshold) {
  detail::require_paired(scores, labels);
  ConfusionCounts c;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool says_bona = scores[i] >= threshold;
    if (labels[i] == Label::bonafide) (says_bona ? c.tp : c.fn) += 1;
    else (says_bona ? c.fp : c.tn) += 1;
  }
  return c;
}

inline double balanced_accuracy(std::span<const double> scores, std::span<const Label> labels, double threshold) {
  detail::require_paired(scores, labels);
  detail::require_both_classes(labels, "balanced accuracy");
  return confusion(scores, labels, threshold).balanced_accuracy();
}

struct EerResult {
  double eer_percent = 0;
  double threshold = 0;
};

/// Equal error rate.
///
/// Operating points are the distinct score values v_0 < ... < v_{u-1} plus
/// +inf. At threshold t, FAR(t) is the share of spoof scores >= t and FRR(t)
/// the share of bonafide scores < t. Walking up the points, the first one with
/// FRR >= FAR closes the crossing step; the EER is where the straight segment
/// between that point and its predecessor meets FAR = FRR. A step across tied
/// scores moves both rates at once, so for fully tied classes this gives
/// (FAR + FRR) / 2 = 50%.
inline EerResult compute_eer(std::span<const double> scores, std::span<const Label> labels) {
  detail::require_paired(scores, labels);
  detail::require_both_classes(labels, "EER");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  double n_bona = 0, n_spoof = 0;
  for (const Label l : labels) (l == Label::bonafide ? n_bona : n_spoof) += 1;

  // bona_below: bonafide strictly below the current point; spoof_at_or_above likewise.
  double bona_below = 0, spoof_at_or_above = n_spoof;
  double prev_far = 1.0, prev_frr = 0.0, prev_thr = scores[order[0]];
  std::size_t i = 0;
  while (true) {
    double thr, far, frr;
    if (i < order.size()) {
      thr = scores[order[i]];
      far = spoof_at_or_above / n_spoof;
      frr = bona_below / n_bona;
    } else {
      thr = std::numeric_limits<double>::infinity();
      far = 0.0;
      frr = 1.0;
    }
    if (frr >= far) {
      if (frr == far) return {100.0 * far, thr};
      const double d0 = prev_far - prev_frr;
      const double d1 = frr - far;
      const double t = d0 / (d0 + d1);
      const double eer = prev_far + t * (far - prev_far);
      const double eer_thr = std::isinf(thr) ? prev_thr : prev_thr + t * (thr - prev_thr);
      return {100.0 * eer, eer_thr};
    }
    prev_far = far;
    prev_frr = frr;
    prev_thr = thr;
    // Advance past every sample tied at this value.
    const double v = scores[order[i]];
    while (i < order.size() && scores[order[i]] == v) {
      if (labels[order[i]] == Label::bonafide) bona_below += 1;
      else spoof_at_or_above -= 1;
      ++i;
    }
  }
}

struct SweepRow {
  double threshold = 0;
  double balanced_accuracy = 0;
};

struct ThresholdSweep {
  std::vector<SweepRow> rows;
  std::size_t best = 0;  // first row with maximal BA

  const SweepRow& best_row() const { return rows[best]; }
};

/// BA at -inf, at every distinct score value, and at +inf. Thresholding at
/// a distinct value v is the same decision as at any point between v's
/// predecessor and v, so the rows depend only on the order statistics.
inline ThresholdSweep threshold_sweep(std::span<const double> scores, std::span<const Label> labels) {
  detail::require_paired(scores, labels);
  detail::require_both_classes(labels, "threshold sweep");
  std::vector<double> distinct(scores.begin(), scores.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::vector<double> thresholds;
  thresholds.reserve(distinct.size() + 2);
  thresholds.push_back(-std::numeric_limits<double>::infinity());
  thresholds.insert(thresholds.end(), distinct.begin(), distinct.end());
  thresholds.push_back(std::numeric_limits<double>::infinity());

  // Incremental counts over the sorted scores.
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double n_bona = 0, n_spoof = 0;
  for (const Label l : labels) (l == Label::bonafide ? n_bona : n_spoof) += 1;

  ThresholdSweep sweep;
  double bona_below = 0, spoof_below = 0;
  std::size_t i = 0;
  for (const double t : thresholds) {
    while (i < order.size() && scores[order[i]] < t) {
      (labels[order[i]] == Label::bonafide ? bona_below : spoof_below) += 1;
      ++i;
    }
    const double tpr = (n_bona - bona_below) / n_bona;
    const double tnr = spoof_below / n_spoof;
    sweep.rows.push_back({t, (tpr + tnr) / 2.0});
    if (sweep.rows.back().balanced_accuracy > sweep.rows[sweep.best].balanced_accuracy) sweep.best = sweep.rows.size() - 1;
  }
  return sweep;
}

/// Source-level result. `metric` pairs the recall on this source with the
/// recall on the whole opposite class; `recall` is the source recall alone.
struct SourceRow {
  std::string category;
  std::string source;
  std::optional<std::size_t> n;
  double metric = 0;
  std::optional<double> recall;
  bool flag_low = false;
};

/// Sources at or below this value are flagged as weak.
inline constexpr double kLowMetricThreshold = 0.60;

inline bool is_low(double metric) { return metric <= kLowMetricThreshold; }

/// Rows keyed by (source, class), sorted by source name then class.
/// Categories are "pristine" for bonafide and "generated" for spoof.
inline std::vector<SourceRow> per_source_metrics(std::span<const double> scores, std::span<const Label> labels,
                                                 std::span<const std::string> sources, double threshold) {
  detail::require_paired(scores, labels);
  if (sources.size() != scores.size()) throw InputError("every scored sample needs a source");
  detail::require_both_classes(labels, "per-source balanced accuracy");

  const auto c = confusion(scores, labels, threshold);
  const double bona_recall = c.tpr();
  const double spoof_recall = c.tnr();

  struct Acc {
    std::size_t n = 0, correct = 0;
  };
  std::map<std::pair<std::string, int>, Acc> acc;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (sources[i].empty()) throw InputError("sample without a source");
    auto& a = acc[{sources[i], labels[i] == Label::bonafide ? 0 : 1}];
    ++a.n;
    const bool says_bona = scores[i] >= threshold;
    a.correct += (labels[i] == Label::bonafide) == says_bona;
  }

  std::vector<SourceRow> rows;
  for (const auto& [key, a] : acc) {
    const bool bona = key.second == 0;
    const double recall = static_cast<double>(a.correct) / static_cast<double>(a.n);
    const double metric = (recall + (bona ? spoof_recall : bona_recall)) / 2.0;
    rows.push_back({bona ? "pristine" : "generated", key.first, a.n, metric, recall, is_low(metric)});
  }
  return rows;
}

}  // namespace adfkit::eval
