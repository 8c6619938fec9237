#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string_view>

namespace stochorder {

/// Outcome of comparing a first variable X against a second variable Y.
///
/// FirstPrecedes means X is the smaller one (X <= Y in the order), so Y is
/// the preferred variable. Incomparable is only produced by the partial
/// orders; Inconclusive only when a defining quantity is not finite.
enum class Outcome {
  FirstPrecedes,
  SecondPrecedes,
  Equal,
  Incomparable,
  Inconclusive,
};

inline constexpr std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::FirstPrecedes: return "FirstPrecedes";
    case Outcome::SecondPrecedes: return "SecondPrecedes";
    case Outcome::Equal: return "Equal";
    case Outcome::Incomparable: return "Incomparable";
    case Outcome::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

inline std::optional<Outcome> outcome_from_string(std::string_view s) {
  for (auto o : {Outcome::FirstPrecedes, Outcome::SecondPrecedes, Outcome::Equal,
                 Outcome::Incomparable, Outcome::Inconclusive}) {
    if (to_string(o) == s) return o;
  }
  return std::nullopt;
}

/// The variable an outcome favours, written the way a decision table reads:
/// "Y" when X precedes Y, "X" when Y precedes X.
inline constexpr std::string_view preferred_side(Outcome o) {
  switch (o) {
    case Outcome::FirstPrecedes: return "Y";
    case Outcome::SecondPrecedes: return "X";
    case Outcome::Equal: return "=";
    case Outcome::Incomparable: return "none";
    case Outcome::Inconclusive: return "?";
  }
  return "?";
}

inline constexpr Outcome swapped(Outcome o) {
  switch (o) {
    case Outcome::FirstPrecedes: return Outcome::SecondPrecedes;
    case Outcome::SecondPrecedes: return Outcome::FirstPrecedes;
    default: return o;
  }
}

/// An outcome together with the two quantities it was decided from.
///
/// What `first` and `second` hold is documented by each comparison; swapping
/// the roles of X and Y always swaps them.
struct Verdict {
  Outcome outcome = Outcome::Inconclusive;
  double first = 0.0;
  double second = 0.0;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

inline Verdict swapped(const Verdict& v) { return {swapped(v.outcome), v.second, v.first}; }

/// Relative tolerance under which two compared quantities count as tied.
inline constexpr double kVerdictRelTol = 1e-12;

inline bool nearly_equal(double a, double b, double rel_tol = kVerdictRelTol) {
  return std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b));
}

/// Decides between two nonnegative contributions: the larger one wins, ties
/// (including 0 = 0) are Equal, and non-finite inputs are Inconclusive.
inline Verdict weigh(double for_first, double for_second) {
  Verdict v{Outcome::Inconclusive, for_first, for_second};
  if (!std::isfinite(for_first) || !std::isfinite(for_second)) return v;
  if (nearly_equal(for_first, for_second)) {
    v.outcome = Outcome::Equal;
  } else {
    v.outcome = for_first > for_second ? Outcome::FirstPrecedes : Outcome::SecondPrecedes;
  }
  return v;
}

}  // namespace stochorder
