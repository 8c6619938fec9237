#pragma once

// A continuous joint law on (0,1)^2 where the usual stochastic order and
// stochastic precedence disagree. For 0 < eps < 1 the density is
//   (1-eps) / (eps (1 - eps/2))  on the band      0 <= x - y <= eps
//   2 / eps                      on the triangle  y - x > 1 - eps
// and zero elsewhere. Both pieces are convex polygons with constant density,
// so probabilities of half-planes are computed exactly by clipping.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "stochorder/error.hpp"
#include "stochorder/grid.hpp"
#include "stochorder/paired_sample.hpp"
#include "stochorder/random.hpp"

namespace stochorder {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

using Polygon = std::vector<Point2>;

/// Part of a convex polygon satisfying a*x + b*y <= c (Sutherland-Hodgman
/// against one half-plane).
inline Polygon clip(const Polygon& poly, double a, double b, double c) {
  Polygon out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = poly[i];
    const Point2& q = poly[(i + 1) % n];
    const double sp = a * p.x + b * p.y - c;
    const double sq = a * q.x + b * q.y - c;
    if (sp <= 0.0) out.push_back(p);
    if ((sp < 0.0 && sq > 0.0) || (sp > 0.0 && sq < 0.0)) {
      const double t = sp / (sp - sq);
      out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
    }
  }
  return out;
}

inline double area(const Polygon& poly) {
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2& p = poly[i];
    const Point2& q = poly[(i + 1) % poly.size()];
    twice += p.x * q.y - q.x * p.y;
  }
  return std::abs(twice) / 2.0;
}

/// Length of the section of a convex polygon by the line x = t (or y = t
/// when `along_x` is false).
inline double section_length(const Polygon& poly, double t, bool along_x) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    Point2 p = poly[i], q = poly[(i + 1) % poly.size()];
    if (!along_x) std::swap(p.x, p.y), std::swap(q.x, q.y);
    if ((p.x - t) * (q.x - t) > 0.0) continue;
    if (p.x == q.x) {
      lo = std::min({lo, p.y, q.y});
      hi = std::max({hi, p.y, q.y});
    } else {
      const double y = p.y + (t - p.x) / (q.x - p.x) * (q.y - p.y);
      lo = std::min(lo, y);
      hi = std::max(hi, y);
    }
  }
  return hi > lo ? hi - lo : 0.0;
}

class Example4Density {
 public:
  explicit Example4Density(double eps) : eps_(eps) {
    if (!(eps > 0.0 && eps < 1.0)) {
      throw Error(ErrorCode::InvalidEpsilon, "eps must lie in (0, 1), got " + std::to_string(eps));
    }
    pieces_[0] = {{{0.0, 0.0}, {eps, 0.0}, {1.0, 1.0 - eps}, {1.0, 1.0}},
                  (1.0 - eps) / (eps * (1.0 - eps / 2.0))};
    pieces_[1] = {{{0.0, 1.0 - eps}, {eps, 1.0}, {0.0, 1.0}}, 2.0 / eps};
  }

  double eps() const noexcept { return eps_; }

  /// Probability of the band and of the triangle: density times area.
  double band_mass() const { return pieces_[0].height * area(pieces_[0].shape); }
  double triangle_mass() const { return pieces_[1].height * area(pieces_[1].shape); }

  double density(double x, double y) const {
    if (!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0)) return 0.0;
    if (x - y >= 0.0 && x - y <= eps_) return pieces_[0].height;
    if (y - x > 1.0 - eps_) return pieces_[1].height;
    return 0.0;
  }

  /// Probability of the half-plane a*x + b*y <= c.
  double mass_where(double a, double b, double c) const {
    double mass = 0.0;
    for (const auto& piece : pieces_) mass += piece.height * area(clip(piece.shape, a, b, c));
    return mass;
  }

  double prob_x_le_y() const { return mass_where(1.0, -1.0, 0.0); }
  double prob_y_le_x() const { return mass_where(-1.0, 1.0, 0.0); }

  double cdf_x(double t) const { return mass_where(1.0, 0.0, t); }
  double cdf_y(double t) const { return mass_where(0.0, 1.0, t); }

  double marginal_density_x(double t) const { return marginal_density(t, true); }
  double marginal_density_y(double t) const { return marginal_density(t, false); }

  /// Marginal densities of X and Y tabulated on `nodes` equally spaced points
  /// of [0, 1], rescaled to unit trapezoid mass.
  GridDensityPair marginal_grid(std::size_t nodes) const {
    std::vector<double> grid(nodes), fx(nodes), fy(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
      grid[i] = static_cast<double>(i) / static_cast<double>(nodes - 1);
      fx[i] = marginal_density_x(grid[i]);
      fy[i] = marginal_density_y(grid[i]);
    }
    return GridDensityPair::normalized(std::move(grid), std::move(fx), std::move(fy));
  }

  /// The closed form eps^2 / 2 sometimes quoted for P(X <= Y). It equals the
  /// triangle's area, not its probability; prob_x_le_y() gives eps.
  static double quoted_prob_x_le_y(double eps) { return eps * eps / 2.0; }

 private:
  struct Piece {
    Polygon shape;
    double height = 0.0;
  };

  double marginal_density(double t, bool along_x) const {
    double f = 0.0;
    for (const auto& piece : pieces_) f += piece.height * section_length(piece.shape, t, along_x);
    return f;
  }

  double eps_;
  std::array<Piece, 2> pieces_;
};

/// n draws from Example4Density(eps). The piece is chosen by its mass, then a
/// point is drawn by rejection: the band from the strip x in (0,1),
/// y in (x - eps, x) (acceptance 1 - eps/2), the triangle from its bounding
/// box (0, eps) x (1 - eps, 1) (acceptance 1/2).
inline PairedSample sample_example4(double eps, std::size_t n, SeededStream& stream) {
  const Example4Density law(eps);
  if (n == 0) throw Error(ErrorCode::SampleTooSmall, "n must be at least 1");
  const double band = law.band_mass();
  std::vector<Pair> pairs;
  pairs.reserve(n);
  while (pairs.size() < n) {
    if (stream.uniform() < band) {
      for (;;) {
        const double x = stream.uniform_open();
        const double y = x - eps * stream.uniform_open();
        if (y > 0.0) {
          pairs.push_back({x, y});
          break;
        }
      }
    } else {
      for (;;) {
        const double x = eps * stream.uniform_open();
        const double y = 1.0 - eps * stream.uniform_open();
        if (y - x > 1.0 - eps) {
          pairs.push_back({x, y});
          break;
        }
      }
    }
  }
  return PairedSample(std::move(pairs));
}

}  // namespace stochorder
