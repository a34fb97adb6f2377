#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>

namespace vasnet {

// Flux limiters Psi(theta) blending upwind (Psi = 0) and Lax-Wendroff
// (Psi = 1) fluxes. minmod, van_leer and mc stay inside
// 0 <= Psi <= 2, 0 <= Psi/theta <= 2 with Psi(1) = 1. upwind and
// lax_wendroff pin Psi to 0 and 1 and exist for reduction tests.
enum class Limiter { minmod, van_leer, mc, upwind, lax_wendroff };

template <Limiter L>
inline double limiter_weight(double theta) {
  if constexpr (L == Limiter::minmod) {
    return std::max(0.0, std::min(1.0, theta));
  } else if constexpr (L == Limiter::van_leer) {
    // (theta + |theta|) / (1 + |theta|), arranged so huge or denormal theta
    // cannot overflow
    return theta > 0.0 ? 2.0 / (1.0 + 1.0 / theta) : 0.0;
  } else if constexpr (L == Limiter::mc) {
    return std::max(0.0, std::min({2.0 * theta, 0.5 * (1.0 + theta), 2.0}));
  } else if constexpr (L == Limiter::upwind) {
    return 0.0;
  } else {
    return 1.0;
  }
}

// Psi(num / den); a zero denominator falls back to first order.
template <Limiter L>
inline double limiter_ratio(double num, double den) {
  if (den == 0.0) return 0.0;
  return limiter_weight<L>(num / den);
}

double limiter_weight(Limiter lim, double theta);

Limiter parse_limiter(std::string_view name);
std::string to_string(Limiter lim);

}  // namespace vasnet
