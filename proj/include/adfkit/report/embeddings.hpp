#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "adfkit/catalog.hpp"
#include "adfkit/error.hpp"
#include "adfkit/rng.hpp"
#include "adfkit/text.hpp"

namespace adfkit::report {

struct EmbeddingRecord {
  std::string sample_id;
  Label label = Label::bonafide;
  std::vector<double> vector;
};

/// Fixed-dimension embeddings, e.g. 1024 for WavLM Large, 768 for MAE-AST Frame.
struct EmbeddingSet {
  std::size_t dim = 0;
  std::vector<EmbeddingRecord> records;

  void add(EmbeddingRecord r) {
    if (records.empty() && dim == 0) dim = r.vector.size();
    if (r.vector.size() != dim)
      throw InputError("embedding for " + r.sample_id + " has dimension " + std::to_string(r.vector.size()) +
                       ", expected " + std::to_string(dim));
    for (const double v : r.vector)
      if (!std::isfinite(v)) throw InputError("non-finite embedding value for " + r.sample_id);
    records.push_back(std::move(r));
  }
};

/// Header `sample_id\tlabel\tv0\tv1...`.
inline EmbeddingSet parse_embeddings(std::string_view bytes) {
  EmbeddingSet set;
  bool seen_header = false;
  std::unordered_set<std::string> ids;
  text::for_each_line(bytes, [&](std::size_t line_no, std::string_view line) {
    if (line.front() == '#') return;
    const auto cols = text::split(line);
    if (!seen_header) {
      if (cols.size() < 3 || cols[0] != "sample_id" || cols[1] != "label")
        throw ParseError(line_no, "expected embedding header sample_id\\tlabel\\tv0...");
      for (std::size_t i = 2; i < cols.size(); ++i)
        if (cols[i] != "v" + std::to_string(i - 2)) throw ParseError(line_no, "header column " + std::to_string(i) + " should be v" + std::to_string(i - 2));
      set.dim = cols.size() - 2;
      seen_header = true;
      return;
    }
    if (cols.size() != set.dim + 2)
      throw ParseError(line_no, "expected " + std::to_string(set.dim + 2) + " columns, found " + std::to_string(cols.size()));
    EmbeddingRecord r;
    r.sample_id = std::string(cols[0]);
    if (!ids.insert(r.sample_id).second) throw ParseError(line_no, "duplicate sample_id " + r.sample_id);
    const auto label = parse_label(cols[1]);
    if (!label) throw ParseError(line_no, "unknown label \"" + std::string(cols[1]) + "\"");
    r.label = *label;
    r.vector.reserve(set.dim);
    for (std::size_t i = 2; i < cols.size(); ++i) {
      const auto v = text::parse_double(cols[i]);
      if (!v || !std::isfinite(*v)) throw ParseError(line_no, "bad value in column " + std::to_string(i));
      r.vector.push_back(*v);
    }
    set.records.push_back(std::move(r));
  });
  if (!seen_header) throw InputError("embedding file has no header line");
  return set;
}

inline std::string serialize_embeddings(const EmbeddingSet& set) {
  std::string out = "sample_id\tlabel";
  for (std::size_t i = 0; i < set.dim; ++i) out += "\tv" + std::to_string(i);
  out += '\n';
  for (const auto& r : set.records) {
    out += r.sample_id;
    out += '\t';
    out += to_string(r.label);
    for (const double v : r.vector) {
      out += '\t';
      out += text::format_double(v);
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// PCA by power iteration

struct PowerIterationOptions {
  double tolerance = 1e-10;
  int max_iterations = 1000;
};

struct PcaResult {
  std::vector<std::vector<double>> components;  // k unit vectors of length d
  std::vector<double> eigenvalues;              // population covariance eigenvalues
  std::vector<double> explained_share;          // eigenvalue / total variance
  double total_variance = 0;
  std::vector<std::string> sample_ids;
  std::vector<std::vector<double>> projections;  // n rows of k coordinates
};

namespace detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

/// Flips `v` so its first non-negligible entry is positive.
inline void canonical_sign(std::vector<double>& v) {
  double biggest = 0;
  for (const double x : v) biggest = std::max(biggest, std::fabs(x));
  for (const double x : v) {
    if (std::fabs(x) > 1e-9 * biggest) {
      if (x < 0)
        for (auto& y : v) y = -y;
      return;
    }
  }
}

}  // namespace detail

/// Projects mean-centred embeddings onto their top-k principal directions.
/// Each direction comes from power iteration on the covariance (applied
/// implicitly as X^T X v / n) deflated by the directions already found,
/// starting from a fixed pseudo-random unit vector.
inline PcaResult pca_project(const EmbeddingSet& set, std::size_t k = 2, const PowerIterationOptions& opt = {}) {
  const std::size_t n = set.records.size();
  const std::size_t d = set.dim;
  if (n < 2) throw InputError("PCA needs at least 2 records");
  if (d < 2) throw InputError("PCA needs dimension >= 2");
  if (k < 1 || k > d) throw InputError("number of components must be in 1..d");

  std::vector<double> mean(d, 0.0);
  for (const auto& r : set.records)
    for (std::size_t j = 0; j < d; ++j) mean[j] += r.vector[j];
  for (auto& m : mean) m /= static_cast<double>(n);
  std::vector<std::vector<double>> x(n, std::vector<double>(d));
  double total = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      x[i][j] = set.records[i].vector[j] - mean[j];
      total += x[i][j] * x[i][j];
    }
  total /= static_cast<double>(n);
  if (!(total > 0)) throw InputError("zero variance: all embeddings are identical");

  PcaResult res;
  res.total_variance = total;

  auto cov_times = [&](const std::vector<double>& v) {
    std::vector<double> out(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double p = detail::dot(x[i], v);
      for (std::size_t j = 0; j < d; ++j) out[j] += p * x[i][j];
    }
    for (auto& o : out) o /= static_cast<double>(n);
    for (std::size_t c = 0; c < res.components.size(); ++c) {
      const double coef = res.eigenvalues[c] * detail::dot(res.components[c], v);
      for (std::size_t j = 0; j < d; ++j) out[j] -= coef * res.components[c][j];
    }
    return out;
  };
  auto orthonormalize = [&](std::vector<double>& v) {
    for (const auto& c : res.components) {
      const double p = detail::dot(c, v);
      for (std::size_t j = 0; j < d; ++j) v[j] -= p * c[j];
    }
    const double nv = detail::norm(v);
    for (auto& e : v) e /= nv;
  };

  SplitMix64 rng(0x5CA1AB1E5EEDULL);
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<double> v(d);
    for (auto& e : v) e = rng.unit() - 0.5;
    orthonormalize(v);
    double lambda = 0;
    for (int it = 0; it < opt.max_iterations; ++it) {
      auto w = cov_times(v);
      const double nw = detail::norm(w);
      if (nw <= 1e-14 * total) {  // remaining spectrum is (numerically) zero
        lambda = 0;
        break;
      }
      for (auto& e : w) e /= nw;
      orthonormalize(w);
      double diff = 0;
      for (std::size_t j = 0; j < d; ++j) diff += (w[j] - v[j]) * (w[j] - v[j]);
      v = std::move(w);
      lambda = nw;
      if (std::sqrt(diff) < opt.tolerance) break;
    }
    if (lambda > 0) lambda = detail::dot(v, cov_times(v));  // Rayleigh quotient
    detail::canonical_sign(v);
    res.components.push_back(std::move(v));
    res.eigenvalues.push_back(std::max(lambda, 0.0));
    res.explained_share.push_back(res.eigenvalues.back() / total);
  }

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> p(k);
    for (std::size_t c = 0; c < k; ++c) p[c] = detail::dot(x[i], res.components[c]);
    res.sample_ids.push_back(set.records[i].sample_id);
    res.projections.push_back(std::move(p));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Class separability

struct Separability {
  double fisher_ratio = 0;  // >= 0, +inf when both classes collapse to points
  double silhouette = 0;    // [-1, 1]
};

/// Fisher ratio along the class-mean axis, (m1 - m0)^2 / (s0^2 + s1^2) of the
/// projected populations, and mean Euclidean silhouette over all records.
inline Separability separability_scores(const EmbeddingSet& set) {
  const std::size_t n = set.records.size();
  const std::size_t d = set.dim;
  std::array<std::size_t, 2> count{0, 0};
  for (const auto& r : set.records) ++count[r.label == Label::bonafide ? 0 : 1];
  if (count[0] == 0 || count[1] == 0) throw InputError("separability needs both bonafide and spoof embeddings");
  if (count[0] < 2 || count[1] < 2) throw InputError("separability needs at least 2 embeddings per class");

  std::array<std::vector<double>, 2> mean{std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
  for (const auto& r : set.records) {
    auto& m = mean[r.label == Label::bonafide ? 0 : 1];
    for (std::size_t j = 0; j < d; ++j) m[j] += r.vector[j];
  }
  for (int c = 0; c < 2; ++c)
    for (auto& v : mean[c]) v /= static_cast<double>(count[c]);

  Separability out;
  std::vector<double> axis(d);
  for (std::size_t j = 0; j < d; ++j) axis[j] = mean[1][j] - mean[0][j];
  const double axis_norm = detail::norm(axis);
  if (axis_norm > 0) {
    for (auto& a : axis) a /= axis_norm;
    std::array<double, 2> pm{0, 0}, pv{0, 0};
    for (const auto& r : set.records) pm[r.label == Label::bonafide ? 0 : 1] += detail::dot(r.vector, axis);
    for (int c = 0; c < 2; ++c) pm[c] /= static_cast<double>(count[c]);
    for (const auto& r : set.records) {
      const int c = r.label == Label::bonafide ? 0 : 1;
      const double dv = detail::dot(r.vector, axis) - pm[c];
      pv[c] += dv * dv;
    }
    for (int c = 0; c < 2; ++c) pv[c] /= static_cast<double>(count[c]);
    const double between = (pm[1] - pm[0]) * (pm[1] - pm[0]);
    const double within = pv[0] + pv[1];
    out.fisher_ratio = within > 0 ? between / within : std::numeric_limits<double>::infinity();
  }

  double sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const int ci = set.records[i].label == Label::bonafide ? 0 : 1;
    std::array<double, 2> dist{0, 0};
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double s = 0;
      for (std::size_t t = 0; t < d; ++t) {
        const double diff = set.records[i].vector[t] - set.records[j].vector[t];
        s += diff * diff;
      }
      dist[set.records[j].label == Label::bonafide ? 0 : 1] += std::sqrt(s);
    }
    const double a = dist[ci] / static_cast<double>(count[ci] - 1);
    const double b = dist[1 - ci] / static_cast<double>(count[1 - ci]);
    const double m = std::max(a, b);
    sum += m > 0 ? (b - a) / m : 0.0;
  }
  out.silhouette = sum / static_cast<double>(n);
  return out;
}

/// 2-D scatter of the first two PCA coordinates; bonafide green, spoof red.
inline std::string render_scatter_svg(const PcaResult& pca, const EmbeddingSet& set, int size_px = 480) {
  if (pca.projections.empty() || pca.projections.front().size() < 2)
    throw InputError("scatter plot needs a 2-component projection");
  double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x, lo_y = lo_x, hi_y = -lo_x;
  for (const auto& p : pca.projections) {
    lo_x = std::min(lo_x, p[0]);
    hi_x = std::max(hi_x, p[0]);
    lo_y = std::min(lo_y, p[1]);
    hi_y = std::max(hi_y, p[1]);
  }
  const double span_x = hi_x > lo_x ? hi_x - lo_x : 1.0;
  const double span_y = hi_y > lo_y ? hi_y - lo_y : 1.0;
  const double margin = 20, inner = size_px - 2 * margin;

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(size_px) + "\" height=\"" +
                    std::to_string(size_px) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < pca.projections.size(); ++i) {
    const double px = margin + (pca.projections[i][0] - lo_x) / span_x * inner;
    const double py = margin + (1.0 - (pca.projections[i][1] - lo_y) / span_y) * inner;
    const bool bona = set.records[i].label == Label::bonafide;
    out += "<circle cx=\"" + text::fixed(px, 2) + "\" cy=\"" + text::fixed(py, 2) + "\" r=\"2\" fill=\"" +
           (bona ? "#2a9d44" : "#d1495b") + "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace adfkit::report
