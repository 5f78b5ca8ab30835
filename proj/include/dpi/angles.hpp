#pragma once

#include <cmath>
#include <numbers>

namespace dpi {

/// Angle of the point (x, y) in (-pi, pi]; 0 at the origin.
template <typename Scalar>
inline Scalar phase_angle(Scalar y, Scalar x) {
  if (y == Scalar(0) && x == Scalar(0)) return Scalar(0);
  const Scalar a = std::atan2(y, x);
  return a <= -std::numbers::pi_v<Scalar> ? std::numbers::pi_v<Scalar> : a;
}

/// Maps the difference of two angles in (-pi, pi] back into (-pi, pi].
/// wrap_difference(a, b) == -wrap_difference(b, a) unless the result is pi.
template <typename Scalar>
inline Scalar wrap_difference(Scalar a, Scalar b) {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  constexpr Scalar two_pi = 2 * pi;
  Scalar d = a - b;
  if (d > pi)
    d -= two_pi;
  else if (d <= -pi)
    d += two_pi;
  return d;
}

/// Wraps an arbitrary angle into (-pi, pi].
template <typename Scalar>
inline Scalar wrap_angle(Scalar a) {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  Scalar r = std::remainder(a, 2 * pi);
  return r <= -pi ? r + 2 * pi : r;
}

}  // namespace dpi
