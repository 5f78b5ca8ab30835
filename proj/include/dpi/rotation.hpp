#pragma once

// Rotation of 2D fields and of their Riesz vector fields, and rotation
// estimation by matching Riesz fields under the covariance identity
//   R(f o rho) = rho^T [(R f) o rho].
//
// Angles are in degrees. rotate_field(f, theta) samples f at
// c + rho_theta (p - c), where c is the grid centre and rho_theta turns
// axis 0 towards axis 1. Riesz component j belongs to axis j.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "dpi/field.hpp"
#include "dpi/riesz.hpp"

namespace dpi {

template <typename Scalar>
struct MaskedField {
  Field<Scalar> field;
  /// true inside the inscribed circle.
  Eigen::Array<bool, Eigen::Dynamic, 1> mask;
};

struct RotationEstimate {
  double angle_deg = 0;
  double score = 0;
  /// (angle_deg, score) for every angle on the search grid.
  std::vector<std::pair<double, double>> curve;
};

namespace detail {

inline double normalize_degrees(double deg) {
  double d = std::fmod(deg, 360.0);
  if (d < 0) d += 360.0;
  return d == 360.0 ? 0.0 : d;
}

/// Quarter-turn count if deg is an exact multiple of 90, else -1.
inline int quarter_turns(double deg) {
  const double d = normalize_degrees(deg);
  for (int q = 0; q < 4; ++q)
    if (d == 90.0 * q) return q;
  return -1;
}

/// (cos, sin) of an angle in degrees, exact at multiples of 90.
inline std::pair<double, double> cos_sin_degrees(double deg) {
  switch (quarter_turns(deg)) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    case 3: return {0.0, -1.0};
    default: break;
  }
  const double rad = normalize_degrees(deg) * std::numbers::pi / 180.0;
  return {std::cos(rad), std::sin(rad)};
}

template <typename Scalar>
Field<Scalar> quarter_turn(const Field<Scalar>& f, int q) {
  const Index n = f.rows();
  Field<Scalar> out(f.shape());
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      switch (q) {
        case 1: out(i, j) = f(n - 1 - j, i); break;
        case 2: out(i, j) = f(n - 1 - i, n - 1 - j); break;
        case 3: out(i, j) = f(j, n - 1 - i); break;
        default: out(i, j) = f(i, j); break;
      }
    }
  return out;
}

template <typename Scalar>
Scalar bilinear_sample(const Field<Scalar>& f, double r, double c) {
  const Index h = f.rows(), w = f.cols();
  const double r0f = std::floor(r), c0f = std::floor(c);
  const auto r0 = static_cast<Index>(r0f), c0 = static_cast<Index>(c0f);
  const double fr = r - r0f, fc = c - c0f;
  auto at = [&](Index i, Index j) -> double {
    return (i < 0 || j < 0 || i >= h || j >= w) ? 0.0 : static_cast<double>(f(i, j));
  };
  const double top = (1 - fc) * at(r0, c0) + fc * at(r0, c0 + 1);
  const double bottom = (1 - fc) * at(r0 + 1, c0) + fc * at(r0 + 1, c0 + 1);
  return static_cast<Scalar>((1 - fr) * top + fr * bottom);
}

template <typename Scalar>
void require_2d(const Field<Scalar>& f, const char* what) {
  if (f.dims() != 2) throw InvalidInput(std::string(what) + " needs a 2D field");
}

}  // namespace detail

/// Zeroes everything outside the circle of radius min(H, W)/2 about the
/// grid centre; points at exactly the radius are kept.
template <typename Scalar>
MaskedField<Scalar> circular_mask(const Field<Scalar>& f) {
  detail::require_2d(f, "circular_mask");
  const Index h = f.rows(), w = f.cols();
  const double cr = (h - 1) / 2.0, cc = (w - 1) / 2.0;
  const double radius = std::min(h, w) / 2.0;
  MaskedField<Scalar> out{f, Eigen::Array<bool, Eigen::Dynamic, 1>(f.size())};
  for (Index i = 0; i < h; ++i)
    for (Index j = 0; j < w; ++j) {
      const double dr = i - cr, dc = j - cc;
      const bool inside = dr * dr + dc * dc <= radius * radius;
      out.mask[i * w + j] = inside;
      if (!inside) out.field(i, j) = Scalar(0);
    }
  return out;
}

/// Bilinear rotation about the grid centre; samples falling outside the
/// grid read as 0. Multiples of 90 degrees on square grids are exact index
/// permutations.
template <typename Scalar>
Field<Scalar> rotate_field(const Field<Scalar>& f, double angle_deg) {
  detail::require_2d(f, "rotate_field");
  const int q = detail::quarter_turns(angle_deg);
  if (q == 0) return f;
  if (q > 0 && f.is_square()) return detail::quarter_turn(f, q);

  const auto [c, s] = detail::cos_sin_degrees(angle_deg);
  const Index h = f.rows(), w = f.cols();
  const double cr = (h - 1) / 2.0, cc = (w - 1) / 2.0;
  Field<Scalar> out(f.shape());
  for (Index i = 0; i < h; ++i)
    for (Index j = 0; j < w; ++j) {
      const double u = i - cr, v = j - cc;
      out(i, j) = detail::bilinear_sample(f, cr + c * u - s * v, cc + s * u + c * v);
    }
  return out;
}

/// Rotates each component spatially, then mixes them by rho^T, so that
/// rotate_riesz_field(riesz_transform(f), a) matches
/// riesz_transform(rotate_field(f, a)).
template <typename Scalar>
RieszField<Scalar> rotate_riesz_field(const RieszField<Scalar>& rf, double angle_deg) {
  if (rf.dims() != 2) throw InvalidInput("rotate_riesz_field needs a 2D Riesz field");
  const Field<Scalar> r0 = rotate_field(rf.components[0], angle_deg);
  const Field<Scalar> r1 = rotate_field(rf.components[1], angle_deg);
  const auto [cd, sd] = detail::cos_sin_degrees(angle_deg);
  const auto c = static_cast<Scalar>(cd), s = static_cast<Scalar>(sd);
  RieszField<Scalar> out;
  out.components.emplace_back(r0.shape(), c * r0.values() + s * r1.values());
  out.components.emplace_back(r0.shape(), -s * r0.values() + c * r1.values());
  return out;
}

/// Normalised cross-correlation of two 2D vector fields over the masked points.
template <typename Scalar>
double masked_correlation(const RieszField<Scalar>& a, const RieszField<Scalar>& b,
                          const Eigen::Array<bool, Eigen::Dynamic, 1>& mask) {
  double ab = 0, aa = 0, bb = 0;
  for (Index k = 0; k < mask.size(); ++k) {
    if (!mask[k]) continue;
    for (std::size_t j = 0; j < a.components.size(); ++j) {
      const double x = a.components[j].values()[k], y = b.components[j].values()[k];
      ab += x * y;
      aa += x * x;
      bb += y * y;
    }
  }
  if (aa == 0 || bb == 0) return 0;
  return std::clamp(ab / (std::sqrt(aa) * std::sqrt(bb)), -1.0, 1.0);
}

namespace detail {

// Circular restriction with the in-circle mean removed, so that a constant
// offset does not turn the disc boundary into the dominant structure.
template <typename Scalar>
MaskedField<Scalar> prepare_for_matching(const Field<Scalar>& f) {
  MaskedField<Scalar> m = circular_mask(f);
  double sum = 0;
  Index count = 0;
  for (Index k = 0; k < m.field.size(); ++k)
    if (m.mask[k]) {
      sum += static_cast<double>(m.field.values()[k]);
      ++count;
    }
  const auto mean = static_cast<Scalar>(sum / static_cast<double>(count));
  for (Index k = 0; k < m.field.size(); ++k)
    if (m.mask[k]) m.field.values()[k] -= mean;
  return m;
}

}  // namespace detail

/// Angle in [0, 360) by which target is rotated relative to reference.
/// Both images are restricted to their inscribed circle and centred there
/// (in-circle mean subtracted); the reference's
/// Riesz field is rotated over {0, step, 2 step, ...} and correlated with
/// the target's. Ties go to the smallest angle.
template <typename Scalar>
RotationEstimate estimate_rotation(const Field<Scalar>& reference, const Field<Scalar>& target,
                                   double step_deg = 1.0) {
  detail::require_2d(reference, "estimate_rotation");
  detail::require_2d(target, "estimate_rotation");
  require_same_shape(reference.shape(), target.shape(), "estimate_rotation");
  if (!reference.is_square()) throw InvalidInput("estimate_rotation needs square images");
  if (!(step_deg > 0 && step_deg <= 90)) throw InvalidInput("angle step must lie in (0, 90]");

  const MaskedField<Scalar> ref = detail::prepare_for_matching(reference);
  const MaskedField<Scalar> tgt = detail::prepare_for_matching(target);
  const auto& mask = ref.mask;
  // Constant inside the circle means nothing is left once the mean is removed.
  auto flat_in_mask = [&](const Field<Scalar>& f) {
    Scalar lo = std::numeric_limits<Scalar>::max(), hi = std::numeric_limits<Scalar>::lowest();
    for (Index k = 0; k < f.size(); ++k)
      if (mask[k]) {
        lo = std::min(lo, f.values()[k]);
        hi = std::max(hi, f.values()[k]);
      }
    return !(hi > lo);
  };
  if (flat_in_mask(ref.field) || flat_in_mask(tgt.field))
    throw DegenerateInput("estimate_rotation: image is constant inside the circular mask");

  const RieszField<Scalar> rref = riesz_transform(ref.field);
  const RieszField<Scalar> rtgt = riesz_transform(tgt.field);

  RotationEstimate est;
  est.score = -2;
  for (Index k = 0;; ++k) {
    const double angle = static_cast<double>(k) * step_deg;
    if (angle >= 360.0) break;
    const double score = masked_correlation(rotate_riesz_field(rref, angle), rtgt, mask);
    est.curve.emplace_back(angle, score);
    if (score > est.score) {
      est.score = score;
      est.angle_deg = angle;
    }
  }
  return est;
}

}  // namespace dpi
