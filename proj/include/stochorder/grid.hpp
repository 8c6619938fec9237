#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stochorder/error.hpp"

namespace stochorder {

/// Tolerance on the trapezoid integral of each tabulated density.
inline constexpr double kGridMassTol = 1e-6;

/// Two marginal densities tabulated on one strictly increasing grid.
///
/// All integrals use the trapezoid rule on the grid. Derived cdfs and
/// survivals are divided by the trapezoid mass so they run exactly from 0 to 1
/// across the grid.
class GridDensityPair {
 public:
  /// Validates the tables; each density must integrate to 1 within kGridMassTol.
  static GridDensityPair make(std::vector<double> grid, std::vector<double> fx, std::vector<double> fy) {
    GridDensityPair g(std::move(grid), std::move(fx), std::move(fy));
    for (int side = 0; side < 2; ++side) {
      const double mass = g.mass_[side];
      if (std::abs(mass - 1.0) > kGridMassTol) {
        throw Error(ErrorCode::InvalidGrid, std::string(side == 0 ? "fx" : "fy") + " integrates to " +
                                                std::to_string(mass) + " on the grid");
      }
    }
    return g;
  }

  /// Rescales both densities to unit trapezoid mass before validating. Useful
  /// for densities truncated to a finite grid.
  static GridDensityPair normalized(std::vector<double> grid, std::vector<double> fx, std::vector<double> fy) {
    GridDensityPair g(std::move(grid), std::move(fx), std::move(fy));
    for (double& v : g.fx_) v /= g.mass_[0];
    for (double& v : g.fy_) v /= g.mass_[1];
    g.mass_[0] = trapezoid(g.grid_, g.fx_);
    g.mass_[1] = trapezoid(g.grid_, g.fy_);
    return g;
  }

  std::span<const double> grid() const noexcept { return grid_; }
  std::span<const double> fx() const noexcept { return fx_; }
  std::span<const double> fy() const noexcept { return fy_; }
  std::size_t size() const noexcept { return grid_.size(); }

  /// Same grid with the densities exchanged.
  GridDensityPair swapped() const {
    GridDensityPair g = *this;
    std::swap(g.fx_, g.fy_);
    std::swap(g.mass_[0], g.mass_[1]);
    return g;
  }

  /// Cumulative distribution at every node, 0 at the first and 1 at the last.
  std::vector<double> cdf(bool second) const {
    const auto& f = second ? fy_ : fx_;
    std::vector<double> out(grid_.size(), 0.0);
    double acc = 0.0;
    for (std::size_t i = 1; i < grid_.size(); ++i) {
      acc += 0.5 * (grid_[i] - grid_[i - 1]) * (f[i] + f[i - 1]);
      out[i] = acc / mass_[second ? 1 : 0];
    }
    out.back() = 1.0;
    return out;
  }

  /// Survival at every node, accumulated from the right so small tails keep
  /// their relative accuracy.
  std::vector<double> survival(bool second) const {
    const auto& f = second ? fy_ : fx_;
    const std::size_t m = grid_.size();
    std::vector<double> out(m, 0.0);
    double acc = 0.0;
    for (std::size_t i = m - 1; i-- > 0;) {
      acc += 0.5 * (grid_[i + 1] - grid_[i]) * (f[i + 1] + f[i]);
      out[i] = acc / mass_[second ? 1 : 0];
    }
    out.front() = 1.0;
    return out;
  }

  static double trapezoid(std::span<const double> grid, std::span<const double> f) {
    double acc = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) acc += 0.5 * (grid[i] - grid[i - 1]) * (f[i] + f[i - 1]);
    return acc;
  }

 private:
  GridDensityPair(std::vector<double> grid, std::vector<double> fx, std::vector<double> fy)
      : grid_(std::move(grid)), fx_(std::move(fx)), fy_(std::move(fy)) {
    if (grid_.size() < 3) throw Error(ErrorCode::InvalidGrid, "a grid needs at least 3 nodes");
    if (fx_.size() != grid_.size() || fy_.size() != grid_.size()) {
      throw Error(ErrorCode::InvalidGrid, "density tables must match the grid length");
    }
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      if (!std::isfinite(grid_[i])) throw Error(ErrorCode::InvalidGrid, "grid node " + std::to_string(i) + " is not finite");
      if (i > 0 && !(grid_[i] > grid_[i - 1])) {
        throw Error(ErrorCode::InvalidGrid, "grid is not strictly increasing at node " + std::to_string(i));
      }
      if (!std::isfinite(fx_[i]) || fx_[i] < 0.0 || !std::isfinite(fy_[i]) || fy_[i] < 0.0) {
        throw Error(ErrorCode::InvalidGrid, "density value at node " + std::to_string(i) + " is negative or not finite");
      }
    }
    mass_[0] = trapezoid(grid_, fx_);
    mass_[1] = trapezoid(grid_, fy_);
    if (!(mass_[0] > 0.0) || !(mass_[1] > 0.0)) throw Error(ErrorCode::InvalidGrid, "a density has zero mass");
  }

  std::vector<double> grid_, fx_, fy_;
  double mass_[2] = {1.0, 1.0};
};

}  // namespace stochorder
