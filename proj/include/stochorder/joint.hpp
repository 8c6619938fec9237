#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stochorder/error.hpp"

namespace stochorder {

/// Raw masses may miss 1 by this much and still be accepted without an
/// explicit request to normalize.
inline constexpr double kInputMassTol = 1e-9;
/// Internal mass-sum tolerance kept by every constructed distribution.
inline constexpr double kMassTol = 1e-12;
inline constexpr std::size_t kDefaultSupportCap = 10'000'000;

struct Atom {
  double x = 0.0;
  double y = 0.0;
  double p = 0.0;

  friend bool operator==(const Atom&, const Atom&) = default;
};

struct MassPoint {
  double value = 0.0;
  double p = 0.0;

  friend bool operator==(const MassPoint&, const MassPoint&) = default;
};

namespace detail {

inline double kahan_sum(auto&& range, auto&& proj) {
  double sum = 0.0, comp = 0.0;
  for (const auto& item : range) {
    const double y = proj(item) - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

inline void check_mass(double p, std::size_t index, const char* what) {
  if (!std::isfinite(p) || p < 0.0) {
    throw Error(ErrorCode::InvalidAtom, std::string(what) + " " + std::to_string(index) +
                                            " has invalid mass " + std::to_string(p));
  }
}

}  // namespace detail

/// Atomic joint law of a pair (X, Y).
///
/// Atoms are kept sorted by (x, y), merged, strictly positive, and sum to one.
/// Instances can only be produced by make_joint and the operations below.
class FiniteJointDistribution {
 public:
  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  friend bool operator==(const FiniteJointDistribution&, const FiniteJointDistribution&) = default;

 private:
  explicit FiniteJointDistribution(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}

  friend FiniteJointDistribution make_joint(std::vector<Atom> raw, bool normalize);

  std::vector<Atom> atoms_;
};

/// Discrete marginal law, values strictly increasing.
class FiniteMarginal {
 public:
  std::span<const MassPoint> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

  /// P(V <= t).
  double cdf(double t) const {
    double acc = 0.0;
    for (const auto& pt : points_) {
      if (pt.value > t) break;
      acc += pt.p;
    }
    return std::min(acc, 1.0);
  }

  friend bool operator==(const FiniteMarginal&, const FiniteMarginal&) = default;

 private:
  explicit FiniteMarginal(std::vector<MassPoint> points) : points_(std::move(points)) {}

  friend FiniteMarginal make_marginal(std::vector<MassPoint> raw, bool normalize);

  std::vector<MassPoint> points_;
};

/// Builds a joint law from raw atoms.
///
/// Zero-mass atoms are dropped and atoms sharing (x, y) are merged. The masses
/// are rescaled to sum to one; when they miss one by more than kInputMassTol
/// this needs `normalize`, otherwise NotNormalizable is thrown.
inline FiniteJointDistribution make_joint(std::vector<Atom> raw, bool normalize = false) {
  std::vector<Atom> kept;
  kept.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const Atom& a = raw[i];
    if (!std::isfinite(a.x) || !std::isfinite(a.y)) {
      throw Error(ErrorCode::InvalidAtom, "atom " + std::to_string(i) + " has a non-finite coordinate");
    }
    detail::check_mass(a.p, i, "atom");
    if (a.p > 0.0) kept.push_back(a);
  }
  if (kept.empty()) throw Error(ErrorCode::EmptyDistribution, "no atom carries positive mass");

  std::sort(kept.begin(), kept.end(), [](const Atom& a, const Atom& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  std::vector<Atom> merged;
  merged.reserve(kept.size());
  for (const Atom& a : kept) {
    if (!merged.empty() && merged.back().x == a.x && merged.back().y == a.y) {
      merged.back().p += a.p;
    } else {
      merged.push_back(a);
    }
  }

  const double total = detail::kahan_sum(merged, [](const Atom& a) { return a.p; });
  if (std::abs(total - 1.0) > kInputMassTol && !normalize) {
    throw Error(ErrorCode::NotNormalizable,
                "atom masses sum to " + std::to_string(total) + " and normalization was not requested");
  }
  for (Atom& a : merged) a.p /= total;
  return FiniteJointDistribution(std::move(merged));
}

/// Builds a marginal law from raw (value, mass) points, with the same rules as
/// make_joint.
inline FiniteMarginal make_marginal(std::vector<MassPoint> raw, bool normalize = false) {
  std::vector<MassPoint> kept;
  kept.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!std::isfinite(raw[i].value)) {
      throw Error(ErrorCode::InvalidAtom, "point " + std::to_string(i) + " has a non-finite value");
    }
    detail::check_mass(raw[i].p, i, "point");
    if (raw[i].p > 0.0) kept.push_back(raw[i]);
  }
  if (kept.empty()) throw Error(ErrorCode::EmptyDistribution, "no point carries positive mass");

  std::sort(kept.begin(), kept.end(), [](const MassPoint& a, const MassPoint& b) { return a.value < b.value; });
  std::vector<MassPoint> merged;
  for (const MassPoint& pt : kept) {
    if (!merged.empty() && merged.back().value == pt.value) {
      merged.back().p += pt.p;
    } else {
      merged.push_back(pt);
    }
  }
  const double total = detail::kahan_sum(merged, [](const MassPoint& m) { return m.p; });
  if (std::abs(total - 1.0) > kInputMassTol && !normalize) {
    throw Error(ErrorCode::NotNormalizable,
                "point masses sum to " + std::to_string(total) + " and normalization was not requested");
  }
  for (MassPoint& pt : merged) pt.p /= total;
  return FiniteMarginal(std::move(merged));
}

namespace detail {

template <class Coord>
FiniteMarginal project(const FiniteJointDistribution& j, Coord coord) {
  std::vector<MassPoint> raw;
  raw.reserve(j.size());
  for (const Atom& a : j.atoms()) raw.push_back({coord(a), a.p});
  return make_marginal(std::move(raw), /*normalize=*/true);
}

}  // namespace detail

inline FiniteMarginal marginal_x(const FiniteJointDistribution& j) {
  return detail::project(j, [](const Atom& a) { return a.x; });
}

inline FiniteMarginal marginal_y(const FiniteJointDistribution& j) {
  return detail::project(j, [](const Atom& a) { return a.y; });
}

/// The independent coupling of two marginals.
inline FiniteJointDistribution product_joint(const FiniteMarginal& mx, const FiniteMarginal& my,
                                             std::size_t support_cap = kDefaultSupportCap) {
  if (mx.size() > support_cap / my.size()) {
    throw Error(ErrorCode::SupportTooLarge, std::to_string(mx.size()) + " x " + std::to_string(my.size()) +
                                                " atoms exceed the cap of " + std::to_string(support_cap));
  }
  std::vector<Atom> raw;
  raw.reserve(mx.size() * my.size());
  for (const auto& px : mx.points()) {
    for (const auto& py : my.points()) raw.push_back({px.value, py.value, px.p * py.p});
  }
  return make_joint(std::move(raw), /*normalize=*/true);
}

/// Exchanges the roles of X and Y.
inline FiniteJointDistribution swap_coordinates(const FiniteJointDistribution& j) {
  std::vector<Atom> raw;
  raw.reserve(j.size());
  for (const Atom& a : j.atoms()) raw.push_back({a.y, a.x, a.p});
  return make_joint(std::move(raw), /*normalize=*/true);
}

/// Maps both coordinates through `phi`, merging atoms that collide.
///
/// `phi` must return a finite value for every support point; otherwise
/// UndefinedAtSupport is thrown.
template <class Phi>
  requires std::invocable<Phi&, double> && std::convertible_to<std::invoke_result_t<Phi&, double>, double>
FiniteJointDistribution apply_transform(const FiniteJointDistribution& j, Phi&& phi) {
  auto mapped = [&](double v) {
    const double out = static_cast<double>(std::invoke(phi, v));
    if (!std::isfinite(out)) {
      throw Error(ErrorCode::UndefinedAtSupport, "transform is not finite at " + std::to_string(v));
    }
    return out;
  };
  std::vector<Atom> raw;
  raw.reserve(j.size());
  for (const Atom& a : j.atoms()) raw.push_back({mapped(a.x), mapped(a.y), a.p});
  return make_joint(std::move(raw), /*normalize=*/true);
}

/// A transform given as a finite value table.
using TransformTable = std::map<double, double>;

inline FiniteJointDistribution apply_transform(const FiniteJointDistribution& j, const TransformTable& table) {
  return apply_transform(j, [&table](double v) {
    auto it = table.find(v);
    if (it == table.end()) {
      throw Error(ErrorCode::UndefinedAtSupport, "transform table has no entry for " + std::to_string(v));
    }
    return it->second;
  });
}

inline double expectation(const FiniteMarginal& m) {
  return detail::kahan_sum(m.points(), [](const MassPoint& pt) { return pt.value * pt.p; });
}

}  // namespace stochorder
