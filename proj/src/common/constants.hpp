#pragma once

#include <numbers>

namespace zh::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double euler_gamma = 0.577215664901532860606512090082;
// Riemann zeta at the origin: zeta(0) = -1/2, zeta'(0) = -log(2 pi)/2.
inline constexpr double riemann_zeta_0 = -0.5;
inline constexpr double riemann_zeta_prime_0 = -0.918938533204672741780329736406;

}  // namespace zh::constants
