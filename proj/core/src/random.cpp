#include "stablefs/random.hpp"

#include <cmath>
#include <numbers>

namespace stablefs {

std::uint64_t Rng::below(std::uint64_t bound) {
  // Rejection on the top of the range keeps every residue equally likely.
  const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound);
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % bound;
}

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace stablefs
