#pragma once

// Sampling from finite joints and plug-in estimation of every precedence
// quantity from paired samples, with percentile bootstrap intervals.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "stochorder/error.hpp"
#include "stochorder/joint.hpp"
#include "stochorder/paired_sample.hpp"
#include "stochorder/precedence.hpp"
#include "stochorder/random.hpp"

namespace stochorder {

/// n i.i.d. draws from a finite joint by inverse cdf on the atom index.
inline PairedSample sample_joint(const FiniteJointDistribution& j, std::size_t n, SeededStream& stream) {
  if (n == 0) throw Error(ErrorCode::SampleTooSmall, "n must be at least 1");
  const auto atoms = j.atoms();
  std::vector<double> cumulative(atoms.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) cumulative[i] = acc += atoms[i].p;

  std::vector<Pair> pairs;
  pairs.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = stream.uniform() * acc;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), atoms.size() - 1);
    pairs.push_back({atoms[idx].x, atoms[idx].y});
  }
  return PairedSample(std::move(pairs));
}

struct EstimateWithCI {
  double point = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double level = 0.0;
  std::size_t n = 0;
  std::string method = "bootstrap-percentile";

  bool covers(double value) const { return ci_low <= value && value <= ci_high; }
};

struct EstimateOptions {
  double level = 0.95;
  std::size_t resamples = 1000;
  std::uint64_t seed = 0;
  /// Worker threads for the bootstrap; 0 picks the hardware concurrency.
  /// Results do not depend on this value.
  unsigned threads = 0;
};

struct EstimateReport {
  std::size_t n = 0;
  EstimateOptions options;
  /// Plug-in analogue of compare_all: the empirical law's probabilities,
  /// decompositions and the verdicts they imply.
  ComparisonReport point;
  EstimateWithCI p_less, p_equal, p_greater;
  EstimateWithCI l1_below, l1_above;
  EstimateWithCI kstar_below, kstar_above;
  EstimateWithCI mean_difference;  // E(Y) - E(X)
};

namespace detail {

/// Statistics of one (re)sample, in the order used by EstimateReport.
inline constexpr std::size_t kStatCount = 8;
using StatVector = std::array<double, kStatCount>;

// Every statistic depends on a pair only through d = y - x, so a (re)sample
// is summarised by how often each distinct d was drawn.
struct SampleStats {
  std::vector<double> diff;        // distinct y - x, ascending
  std::vector<double> kstar;       // |d| / (1 + |d|) per distinct d
  std::vector<std::uint32_t> id;   // row -> index into diff
  std::vector<std::uint64_t> multiplicity;
};

inline SampleStats summarise(const PairedSample& sample) {
  SampleStats s;
  const auto pairs = sample.pairs();
  std::vector<double> d(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) d[i] = pairs[i].y - pairs[i].x;
  s.diff = d;
  std::sort(s.diff.begin(), s.diff.end());
  s.diff.erase(std::unique(s.diff.begin(), s.diff.end()), s.diff.end());
  s.kstar.reserve(s.diff.size());
  for (double v : s.diff) s.kstar.push_back(kstar_term(v));
  s.id.resize(d.size());
  s.multiplicity.assign(s.diff.size(), 0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto k = static_cast<std::uint32_t>(std::lower_bound(s.diff.begin(), s.diff.end(), d[i]) - s.diff.begin());
    s.id[i] = k;
    ++s.multiplicity[k];
  }
  return s;
}

inline StatVector accumulate(const SampleStats& s, std::span<const std::uint64_t> counts, std::size_t n) {
  double less = 0, equal = 0, greater = 0, l1b = 0, l1a = 0, kb = 0, ka = 0, sum_d = 0;
  for (std::size_t k = 0; k < s.diff.size(); ++k) {
    if (counts[k] == 0) continue;
    const double c = static_cast<double>(counts[k]);
    const double d = s.diff[k];
    sum_d += c * d;
    if (d > 0.0) {
      less += c, l1b += c * d, kb += c * s.kstar[k];
    } else if (d < 0.0) {
      greater += c, l1a -= c * d, ka += c * s.kstar[k];
    } else {
      equal += c;
    }
  }
  const double inv = 1.0 / static_cast<double>(n);
  return {less * inv, equal * inv, greater * inv, l1b * inv, l1a * inv, kb * inv, ka * inv, sum_d * inv};
}

/// Linear-interpolated quantile of sorted values.
inline double quantile_sorted(std::span<const double> sorted, double q) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace detail

/// Plug-in estimates for a paired sample. With `with_ci` the percentile
/// bootstrap adds intervals; that needs n >= 2.
///
/// Bootstrap replicate r draws from SeededStream(seed).split(r), so the
/// report is bit-identical for any thread count.
inline EstimateReport estimate_orders(const PairedSample& sample, const EstimateOptions& options = {},
                                      bool with_ci = true) {
  const std::size_t n = sample.size();
  if (with_ci && n < 2) throw Error(ErrorCode::SampleTooSmall, "bootstrap intervals need at least 2 pairs");
  if (with_ci && !(options.level > 0.0 && options.level < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "confidence level must lie in (0, 1)");
  }
  if (with_ci && options.resamples == 0) throw Error(ErrorCode::InvalidArgument, "bootstrap needs at least 1 resample");

  const detail::SampleStats stats = detail::summarise(sample);
  double sum_x = 0.0, sum_y = 0.0;
  for (const Pair& p : sample.pairs()) {
    sum_x += p.x;
    sum_y += p.y;
  }
  const detail::StatVector point = detail::accumulate(stats, stats.multiplicity, n);

  EstimateReport report;
  report.n = n;
  report.options = options;
  ComparisonReport& cmp = report.point;
  cmp.probs = {point[0], point[1], point[2]};
  cmp.mean_x = sum_x / static_cast<double>(n);
  cmp.mean_y = sum_y / static_cast<double>(n);
  cmp.sp = decide_sp(point[0] + point[1], point[2] + point[1]);
  cmp.mean = decide_mean(cmp.mean_x, cmp.mean_y);
  cmp.l1 = make_decomposition(Metric::L1, point[3], point[4]);
  cmp.kstar = make_decomposition(Metric::KStar, point[5], point[6]);
  cmp.cp_l1 = decide_conditional(cmp.l1);
  cmp.cp_kstar = decide_conditional(cmp.kstar);

  EstimateWithCI* slots[detail::kStatCount] = {&report.p_less,      &report.p_equal,     &report.p_greater,
                                               &report.l1_below,    &report.l1_above,    &report.kstar_below,
                                               &report.kstar_above, &report.mean_difference};
  for (std::size_t s = 0; s < detail::kStatCount; ++s) {
    *slots[s] = {point[s], point[s], point[s], with_ci ? options.level : 0.0, n};
  }
  if (!with_ci) return report;

  const std::size_t b_count = options.resamples;
  std::vector<detail::StatVector> replicates(b_count);
  const SeededStream root(options.seed);
  auto run_range = [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint64_t> counts(stats.diff.size());
    for (std::size_t r = begin; r < end; ++r) {
      SeededStream stream = root.split(r);
      std::fill(counts.begin(), counts.end(), 0);
      for (std::size_t k = 0; k < n; ++k) ++counts[stats.id[stream.below(n)]];
      replicates[r] = detail::accumulate(stats, counts, n);
    }
  };
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, b_count));
  if (threads <= 1) {
    run_range(0, b_count);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (b_count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(b_count, t * chunk), end = std::min(b_count, begin + chunk);
      if (begin < end) pool.emplace_back(run_range, begin, end);
    }
  }

  const double alpha = 1.0 - options.level;
  std::vector<double> column(b_count);
  for (std::size_t s = 0; s < detail::kStatCount; ++s) {
    for (std::size_t r = 0; r < b_count; ++r) column[r] = replicates[r][s];
    std::sort(column.begin(), column.end());
    EstimateWithCI& e = *slots[s];
    // Percentile intervals need not contain the point estimate; widen so
    // ci_low <= point <= ci_high always holds.
    e.ci_low = std::min(detail::quantile_sorted(column, alpha / 2.0), e.point);
    e.ci_high = std::max(detail::quantile_sorted(column, 1.0 - alpha / 2.0), e.point);
  }
  return report;
}

}  // namespace stochorder
