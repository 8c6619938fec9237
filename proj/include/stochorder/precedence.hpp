#pragma once

// Orders that read the joint law of (X, Y) rather than only the marginals:
// stochastic precedence, the mean order, and the two conditional precedence
// orders built on splitting a distance between X and Y over {X < Y} and
// {X > Y}.

#include <cmath>
#include <optional>
#include <string_view>

#include "stochorder/joint.hpp"
#include "stochorder/verdict.hpp"

namespace stochorder {

struct EventProbs {
  double less = 0.0;     // P(X < Y)
  double equal = 0.0;    // P(X = Y)
  double greater = 0.0;  // P(X > Y)
};

enum class Metric { L1, KStar };

inline constexpr std::string_view to_string(Metric m) { return m == Metric::L1 ? "L1" : "K*"; }

/// Split of a distance E d(X, Y) over the two strict events.
///
/// `below` is E(d | X < Y) P(X < Y) and `above` is E(d | X > Y) P(X > Y),
/// both accumulated as mass-weighted sums so an empty event contributes 0.
struct DecompositionReport {
  Metric metric = Metric::L1;
  double below = 0.0;
  double above = 0.0;
  double total = 0.0;
  std::optional<double> normalized_below;  // below / total, only when total > 0
};

/// Four-order comparison of one joint law plus the numbers behind it.
struct ComparisonReport {
  EventProbs probs;
  double mean_x = 0.0;
  double mean_y = 0.0;
  Verdict sp;
  Verdict mean;
  Verdict cp_l1;
  Verdict cp_kstar;
  DecompositionReport l1;
  DecompositionReport kstar;
};

/// Distance contributions of one difference y - x.
inline double l1_term(double diff) { return std::abs(diff); }
inline double kstar_term(double diff) {
  const double a = std::abs(diff);
  return a / (1.0 + a);
}

inline DecompositionReport make_decomposition(Metric metric, double below, double above) {
  DecompositionReport r{metric, below, above, below + above, std::nullopt};
  if (r.total > 0.0 && std::isfinite(r.total)) r.normalized_below = below / r.total;
  return r;
}

/// Stochastic precedence from P(X <= Y) and P(Y <= X): X precedes when the
/// first is at least one half, and both hold for Equal. `first`/`second` are
/// these two probabilities.
inline Verdict decide_sp(double p_x_le_y, double p_y_le_x) {
  constexpr double half = 0.5 - 1e-12;
  const bool x_le = p_x_le_y >= half, y_le = p_y_le_x >= half;
  Outcome o = Outcome::Equal;
  if (x_le && !y_le) o = Outcome::FirstPrecedes;
  if (!x_le && y_le) o = Outcome::SecondPrecedes;
  if (!x_le && !y_le) o = Outcome::Inconclusive;  // impossible for a probability law
  return {o, p_x_le_y, p_y_le_x};
}

/// Mean order. `first`/`second` are E(X) and E(Y).
inline Verdict decide_mean(double mean_x, double mean_y) {
  Verdict v = weigh(mean_y, mean_x);
  return {v.outcome, mean_x, mean_y};
}

/// Conditional precedence from a decomposition: X precedes when the
/// contribution on {X < Y} is the larger one. `first`/`second` are the
/// below and above terms.
inline Verdict decide_conditional(const DecompositionReport& d) { return weigh(d.below, d.above); }

inline EventProbs event_probs(const FiniteJointDistribution& j) {
  EventProbs e;
  for (const Atom& a : j.atoms()) {
    if (a.x < a.y) {
      e.less += a.p;
    } else if (a.x > a.y) {
      e.greater += a.p;
    } else {
      e.equal += a.p;
    }
  }
  return e;
}

inline Verdict compare_sp(const FiniteJointDistribution& j) {
  const EventProbs e = event_probs(j);
  return decide_sp(e.less + e.equal, e.greater + e.equal);
}

inline Verdict compare_mean(const FiniteJointDistribution& j) {
  return decide_mean(expectation(marginal_x(j)), expectation(marginal_y(j)));
}

namespace detail {

template <class Term>
DecompositionReport decompose(const FiniteJointDistribution& j, Metric metric, Term term) {
  double below = 0.0, above = 0.0;
  for (const Atom& a : j.atoms()) {
    if (a.x < a.y) {
      below += term(a.y - a.x) * a.p;
    } else if (a.x > a.y) {
      above += term(a.x - a.y) * a.p;
    }
  }
  return make_decomposition(metric, below, above);
}

}  // namespace detail

/// E|X - Y| split over {X < Y} and {X > Y}.
inline DecompositionReport l1_decompose(const FiniteJointDistribution& j) {
  return detail::decompose(j, Metric::L1, l1_term);
}

/// Ky Fan distance E(|X - Y| / (1 + |X - Y|)) split over {X < Y} and {X > Y}.
inline DecompositionReport kstar_decompose(const FiniteJointDistribution& j) {
  return detail::decompose(j, Metric::KStar, kstar_term);
}

inline Verdict compare_cp_l1(const FiniteJointDistribution& j) { return decide_conditional(l1_decompose(j)); }

inline Verdict compare_cp_kstar(const FiniteJointDistribution& j) {
  return decide_conditional(kstar_decompose(j));
}

inline ComparisonReport compare_all(const FiniteJointDistribution& j) {
  ComparisonReport r;
  r.probs = event_probs(j);
  r.mean_x = expectation(marginal_x(j));
  r.mean_y = expectation(marginal_y(j));
  r.sp = decide_sp(r.probs.less + r.probs.equal, r.probs.greater + r.probs.equal);
  r.mean = decide_mean(r.mean_x, r.mean_y);
  r.l1 = l1_decompose(j);
  r.kstar = kstar_decompose(j);
  r.cp_l1 = decide_conditional(r.l1);
  r.cp_kstar = decide_conditional(r.kstar);
  return r;
}

}  // namespace stochorder
