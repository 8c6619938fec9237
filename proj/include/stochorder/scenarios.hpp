#pragma once

// Canonical fixtures. Each carries its joint law and the values it is
// expected to reproduce; the numbers are never computed here.

#include <string>
#include <string_view>
#include <vector>

#include "stochorder/example4.hpp"
#include "stochorder/joint.hpp"
#include "stochorder/partial_order.hpp"
#include "stochorder/precedence.hpp"
#include "stochorder/verdict.hpp"

namespace stochorder {

/// Where an expected value comes from.
enum class Origin {
  Published,    // worked example as originally published
  Arithmetic,   // hand arithmetic on the fixture
  Enumeration,  // exhaustive enumeration of outcomes
  Integration,  // exact integration of a density
};

inline constexpr std::string_view to_string(Origin o) {
  switch (o) {
    case Origin::Published: return "published";
    case Origin::Arithmetic: return "arithmetic";
    case Origin::Enumeration: return "enumeration";
    case Origin::Integration: return "integration";
  }
  return "unknown";
}

struct ExpectedValue {
  std::string quantity;
  double value = 0.0;
  double tolerance = 0.0;
  Origin origin = Origin::Published;
};

struct ExpectedVerdict {
  std::string order;  // sp | mean | cp_l1 | cp_kstar | st
  Outcome outcome = Outcome::Equal;
  Origin origin = Origin::Published;
};

struct ScenarioFixture {
  std::string name;
  FiniteJointDistribution joint;
  std::vector<ExpectedValue> values;
  std::vector<ExpectedVerdict> verdicts;
};

/// Coin with P(head) = 0.6; scheme A pays 1000 on head and 0 on tail, scheme
/// B pays 999 either way. Both schemes are settled by the same toss.
inline ScenarioFixture example1() {
  return {
      "example1",
      make_joint({{1000.0, 999.0, 0.6}, {0.0, 999.0, 0.4}}),
      {
          {"p_less", 0.4, 1e-12, Origin::Published},
          {"p_equal", 0.0, 0.0, Origin::Published},
          {"p_greater", 0.6, 1e-12, Origin::Published},
          {"mean_x", 600.0, 1e-9, Origin::Published},
          {"mean_y", 999.0, 1e-9, Origin::Published},
          {"l1_below", 399.6, 1e-9, Origin::Published},
          {"l1_above", 0.6, 1e-9, Origin::Published},
          {"kstar_below", 0.3996, 1e-9, Origin::Published},
          {"kstar_above", 0.3, 1e-9, Origin::Published},
      },
      {
          {"sp", Outcome::SecondPrecedes, Origin::Published},
          {"mean", Outcome::FirstPrecedes, Origin::Published},
          {"cp_l1", Outcome::FirstPrecedes, Origin::Published},
          {"cp_kstar", Outcome::FirstPrecedes, Origin::Published},
          {"st", Outcome::Incomparable, Origin::Published},
      },
  };
}

/// P(head) = 0.9; scheme A pays 1100 on head, scheme B pays 999.
inline ScenarioFixture example2() {
  return {
      "example2",
      make_joint({{1100.0, 999.0, 0.9}, {0.0, 999.0, 0.1}}),
      {
          {"p_less", 0.1, 1e-12, Origin::Published},
          {"p_equal", 0.0, 0.0, Origin::Published},
          {"p_greater", 0.9, 1e-12, Origin::Published},
          {"mean_x", 990.0, 1e-9, Origin::Arithmetic},
          {"mean_y", 999.0, 1e-9, Origin::Arithmetic},
          {"l1_below", 99.9, 1e-9, Origin::Arithmetic},
          {"l1_above", 90.9, 1e-9, Origin::Arithmetic},
          {"kstar_below", 0.0999, 1e-4, Origin::Published},
          {"kstar_above", 0.8912, 1e-4, Origin::Published},
      },
      {
          {"sp", Outcome::SecondPrecedes, Origin::Published},
          {"mean", Outcome::FirstPrecedes, Origin::Published},
          {"cp_l1", Outcome::FirstPrecedes, Origin::Published},
          {"cp_kstar", Outcome::SecondPrecedes, Origin::Published},
      },
  };
}

/// The nondecreasing map 0 -> 0, 999 -> 1, 1000 -> 1000 on the example1
/// support.
inline const TransformTable& counterexample_transform() {
  static const TransformTable table{{0.0, 0.0}, {999.0, 1.0}, {1000.0, 1000.0}};
  return table;
}

/// example1 pushed through counterexample_transform: the conditional L1
/// verdict flips even though the map is monotone.
inline ScenarioFixture transform_counterexample() {
  return {
      "transform",
      apply_transform(example1().joint, counterexample_transform()),
      {
          {"l1_below", 0.4, 1e-12, Origin::Arithmetic},
          {"l1_above", 599.4, 1e-9, Origin::Arithmetic},
      },
      {
          {"cp_l1", Outcome::SecondPrecedes, Origin::Published},
      },
  };
}

/// Three independent dice whose stochastic precedence verdicts cycle:
/// A <=sp B, B <=sp C and C <=sp A, each with P(first < second) = 5/9.
struct IntransitiveDice {
  FiniteMarginal a, b, c;
  FiniteJointDistribution ab, bc, ca;
  double p_first_less = 5.0 / 9.0;  // by enumeration of the 36 face pairs
};

inline FiniteMarginal fair_die(std::initializer_list<double> faces) {
  std::vector<MassPoint> raw;
  for (double f : faces) raw.push_back({f, 1.0 / 6.0});
  return make_marginal(std::move(raw), /*normalize=*/true);
}

inline IntransitiveDice intransitive_demo() {
  auto a = fair_die({1, 1, 6, 6, 8, 8});
  auto b = fair_die({2, 2, 4, 4, 9, 9});
  auto c = fair_die({3, 3, 5, 5, 7, 7});
  return {a, b, c, product_joint(a, b), product_joint(b, c), product_joint(c, a)};
}

/// The continuous two-piece law of Example4Density with its integration
/// targets: P(X <= Y) by exact clipping, the sp verdict those probabilities
/// imply, and the usual stochastic order on a tabulated marginal grid.
struct Example4Fixture {
  Example4Density law;
  double p_x_le_y = 0.0;
  double p_y_le_x = 0.0;
  double quoted_p_x_le_y = 0.0;
  Verdict sp;
  PartialOrderReport st;
};

inline constexpr std::size_t kExample4GridNodes = 200;

inline Example4Fixture example4_spec(double eps, std::size_t grid_nodes = kExample4GridNodes) {
  Example4Density law(eps);
  Example4Fixture f{law, law.prob_x_le_y(), law.prob_y_le_x(), Example4Density::quoted_prob_x_le_y(eps), {}, {}};
  f.sp = decide_sp(f.p_x_le_y, f.p_y_le_x);
  f.st = compare_st(law.marginal_grid(grid_nodes));
  return f;
}

}  // namespace stochorder
