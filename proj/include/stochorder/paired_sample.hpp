#pragma once

#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stochorder/error.hpp"

namespace stochorder {

struct Pair {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Pair&, const Pair&) = default;
};

/// n >= 1 observed (x, y) pairs with finite coordinates.
class PairedSample {
 public:
  explicit PairedSample(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {
    if (pairs_.empty()) throw Error(ErrorCode::SampleTooSmall, "a paired sample needs at least one pair");
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      if (!std::isfinite(pairs_[i].x) || !std::isfinite(pairs_[i].y)) {
        throw Error(ErrorCode::InvalidAtom, "pair " + std::to_string(i) + " has a non-finite coordinate");
      }
    }
  }

  std::span<const Pair> pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }

  friend bool operator==(const PairedSample&, const PairedSample&) = default;

 private:
  std::vector<Pair> pairs_;
};

}  // namespace stochorder
