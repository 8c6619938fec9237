#pragma once

// The four classical marginal-based partial orders:
//   usual stochastic   X <=st  Y  iff  F_X >= F_Y everywhere
//   hazard rate        X <=hr  Y  iff  r_X >= r_Y everywhere
//   likelihood ratio   X <=lr  Y  iff  f_Y / f_X is nondecreasing
//   mean residual life X <=mrl Y  iff  m_X <= m_Y everywhere
// Grid versions evaluate these at the grid nodes only.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stochorder/error.hpp"
#include "stochorder/grid.hpp"
#include "stochorder/joint.hpp"
#include "stochorder/verdict.hpp"

namespace stochorder {

/// Pointwise comparisons count as ties within this tolerance, scaled by
/// max(1, |lhs|, |rhs|).
inline constexpr double kPointwiseTol = 1e-9;
/// Nodes whose survival (hr, mrl) or first density (lr) is at or below this
/// are left out of the comparison.
inline constexpr double kRegionFloor = 1e-12;

/// Two abscissae where the defining inequality holds strictly in opposite
/// directions.
struct Witness {
  double first_holds_at = 0.0;
  double second_holds_at = 0.0;

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Verdict of one partial order. `verdict.first` and `verdict.second` are the
/// largest pointwise margins found in each direction.
struct PartialOrderReport {
  std::string order;
  Verdict verdict;
  std::optional<Witness> witness;  // present iff verdict is Incomparable
};

inline PartialOrderReport swapped(const PartialOrderReport& r) {
  PartialOrderReport out{r.order, swapped(r.verdict), std::nullopt};
  if (r.witness) out.witness = Witness{r.witness->second_holds_at, r.witness->first_holds_at};
  return out;
}

namespace detail {

/// First-side condition is lhs >= rhs at every node.
inline PartialOrderReport pointwise(std::string order, std::span<const double> at, std::span<const double> lhs,
                                    std::span<const double> rhs) {
  PartialOrderReport report{std::move(order), {}, std::nullopt};
  double up = 0.0, down = 0.0;
  std::optional<double> up_at, down_at;
  for (std::size_t i = 0; i < at.size(); ++i) {
    const double diff = lhs[i] - rhs[i];
    const double scale = std::max({1.0, std::abs(lhs[i]), std::abs(rhs[i])});
    if (std::abs(diff) <= kPointwiseTol * scale) continue;
    if (diff > 0.0) {
      if (!up_at || diff > up) up = diff, up_at = at[i];
    } else {
      if (!down_at || -diff > down) down = -diff, down_at = at[i];
    }
  }
  report.verdict.first = up;
  report.verdict.second = down;
  if (up_at && down_at) {
    report.verdict.outcome = Outcome::Incomparable;
    report.witness = Witness{*up_at, *down_at};
  } else if (up_at) {
    report.verdict.outcome = Outcome::FirstPrecedes;
  } else if (down_at) {
    report.verdict.outcome = Outcome::SecondPrecedes;
  } else {
    report.verdict.outcome = Outcome::Equal;
  }
  return report;
}

inline void require_region(const std::vector<double>& at, const char* order) {
  if (at.empty()) {
    throw Error(ErrorCode::EmptyComparisonRegion, std::string(order) + ": no grid node qualifies for comparison");
  }
}

}  // namespace detail

/// Usual stochastic order of two finite marginals, checked at every support
/// point of either.
inline PartialOrderReport compare_st(const FiniteMarginal& a, const FiniteMarginal& b) {
  std::vector<double> at;
  for (const auto& pt : a.points()) at.push_back(pt.value);
  for (const auto& pt : b.points()) at.push_back(pt.value);
  std::sort(at.begin(), at.end());
  at.erase(std::unique(at.begin(), at.end()), at.end());

  std::vector<double> fa, fb;
  fa.reserve(at.size());
  fb.reserve(at.size());
  double acc_a = 0.0, acc_b = 0.0;
  std::size_t ia = 0, ib = 0;
  for (double t : at) {
    while (ia < a.size() && a.points()[ia].value <= t) acc_a += a.points()[ia++].p;
    while (ib < b.size() && b.points()[ib].value <= t) acc_b += b.points()[ib++].p;
    fa.push_back(ia == a.size() ? 1.0 : acc_a);
    fb.push_back(ib == b.size() ? 1.0 : acc_b);
  }
  return detail::pointwise("st", at, fa, fb);
}

/// Usual stochastic order of the two gridded densities.
inline PartialOrderReport compare_st(const GridDensityPair& g) {
  return detail::pointwise("st", g.grid(), g.cdf(false), g.cdf(true));
}

inline PartialOrderReport compare_hr(const GridDensityPair& g) {
  const auto sa = g.survival(false), sb = g.survival(true);
  std::vector<double> at, ra, rb;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (sa[i] > kRegionFloor && sb[i] > kRegionFloor) {
      at.push_back(g.grid()[i]);
      ra.push_back(g.fx()[i] / sa[i]);
      rb.push_back(g.fy()[i] / sb[i]);
    }
  }
  detail::require_region(at, "hr");
  return detail::pointwise("hr", at, ra, rb);
}

/// Likelihood ratio order: monotonicity of f_Y / f_X over nodes where f_X is
/// above kRegionFloor. Decreases within kPointwiseTol (relative) are ignored.
inline PartialOrderReport compare_lr(const GridDensityPair& g) {
  std::vector<double> at, ratio;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.fx()[i] > kRegionFloor) {
      at.push_back(g.grid()[i]);
      ratio.push_back(g.fy()[i] / g.fx()[i]);
    }
  }
  detail::require_region(at, "lr");

  PartialOrderReport report{"lr", {}, std::nullopt};
  const auto [lo, hi] = std::minmax_element(ratio.begin(), ratio.end());
  if (*hi - *lo <= kPointwiseTol * std::abs(*hi)) {
    report.verdict = {Outcome::Equal, 0.0, 0.0};
    return report;
  }

  double rise = 0.0, fall = 0.0;
  std::optional<double> rise_at, fall_at;
  for (std::size_t i = 1; i < ratio.size(); ++i) {
    const double step = ratio[i] - ratio[i - 1];
    const double scale = std::max(std::abs(ratio[i]), std::abs(ratio[i - 1]));
    if (std::abs(step) <= kPointwiseTol * scale) continue;
    const double rel = std::abs(step) / scale;
    if (step > 0.0) {
      if (!rise_at || rel > rise) rise = rel, rise_at = at[i - 1];
    } else {
      if (!fall_at || rel > fall) fall = rel, fall_at = at[i - 1];
    }
  }
  report.verdict.first = rise;
  report.verdict.second = fall;
  if (rise_at && fall_at) {
    report.verdict.outcome = Outcome::Incomparable;
    report.witness = Witness{*rise_at, *fall_at};
  } else if (rise_at || (!fall_at && ratio.back() > ratio.front())) {
    report.verdict.outcome = Outcome::FirstPrecedes;
  } else {
    report.verdict.outcome = Outcome::SecondPrecedes;
  }
  return report;
}

/// Mean residual life order. Tail integrals of the survival stop at the last
/// grid node, so this approximates the full-line quantity for grids that
/// cover the bulk of both laws.
inline PartialOrderReport compare_mrl(const GridDensityPair& g) {
  const auto sa = g.survival(false), sb = g.survival(true);
  const auto grid = g.grid();
  const std::size_t m = g.size();
  auto tails = [&](const std::vector<double>& s) {
    std::vector<double> tail(m, 0.0);
    for (std::size_t i = m - 1; i-- > 0;) tail[i] = tail[i + 1] + 0.5 * (grid[i + 1] - grid[i]) * (s[i] + s[i + 1]);
    return tail;
  };
  const auto ta = tails(sa), tb = tails(sb);
  std::vector<double> at, ma, mb;
  for (std::size_t i = 0; i < m; ++i) {
    if (sa[i] > kRegionFloor && sb[i] > kRegionFloor) {
      at.push_back(grid[i]);
      ma.push_back(ta[i] / sa[i]);
      mb.push_back(tb[i] / sb[i]);
    }
  }
  detail::require_region(at, "mrl");
  return detail::pointwise("mrl", at, mb, ma);
}

}  // namespace stochorder
