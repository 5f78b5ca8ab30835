#pragma once

// Riesz transforms of n-D fields and the phase vectors built from them.
// Component j of every vector field belongs to grid axis j.

#include <cmath>
#include <vector>

#include "dpi/angles.hpp"
#include "dpi/field.hpp"
#include "dpi/spectra.hpp"

namespace dpi {

/// (R_0 f, ..., R_{n-1} f) for an n-D field f.
template <typename Scalar>
struct RieszField {
  std::vector<Field<Scalar>> components;

  Index dims() const noexcept { return static_cast<Index>(components.size()); }
  const Shape& shape() const { return components.at(0).shape(); }
};

/// Per-axis phases atan2(R_j f, f), each in (-pi, pi].
template <typename Scalar>
struct PhaseVectorField {
  std::vector<Field<Scalar>> components;

  Index dims() const noexcept { return static_cast<Index>(components.size()); }
  const Shape& shape() const { return components.at(0).shape(); }
};

using RieszFieldd = RieszField<double>;
using PhaseVectorFieldd = PhaseVectorField<double>;

template <typename Scalar>
RieszField<Scalar> riesz_transform(const Field<Scalar>& f) {
  const FrequencyGrid grid = frequency_grid(f.shape());
  const ComplexArray<Scalar> spec = spectrum(f);
  RieszField<Scalar> out;
  for (Index j = 0; j < f.dims(); ++j)
    out.components.push_back(apply_to_spectrum(spec, riesz_multiplier<Scalar>(j, grid)));
  return out;
}

namespace detail {

template <typename Scalar>
Field<Scalar> phase_of(const Field<Scalar>& quadrature, const Field<Scalar>& f) {
  Field<Scalar> out(f.shape());
  for (Index k = 0; k < f.size(); ++k)
    out.values()[k] = phase_angle(quadrature.values()[k], f.values()[k]);
  return out;
}

}  // namespace detail

template <typename Scalar>
PhaseVectorField<Scalar> phase_vector(const Field<Scalar>& f, const RieszField<Scalar>& rf) {
  PhaseVectorField<Scalar> out;
  for (const auto& c : rf.components) out.components.push_back(detail::phase_of(c, f));
  return out;
}

template <typename Scalar>
PhaseVectorField<Scalar> phase_vector(const Field<Scalar>& f) {
  return phase_vector(f, riesz_transform(f));
}

/// cos(theta) R_0 f + sin(theta) R_1 f for a 2D field.
template <typename Scalar>
Field<Scalar> steered_riesz(const RieszField<Scalar>& rf, double theta) {
  if (rf.dims() != 2) throw InvalidInput("steered Riesz transform needs a 2D field");
  const auto c = static_cast<Scalar>(std::cos(theta));
  const auto s = static_cast<Scalar>(std::sin(theta));
  return Field<Scalar>(rf.shape(), c * rf.components[0].values() + s * rf.components[1].values());
}

template <typename Scalar>
Field<Scalar> steered_riesz(const Field<Scalar>& f, double theta) {
  if (f.dims() != 2) throw InvalidInput("steered Riesz transform needs a 2D field");
  return steered_riesz(riesz_transform(f), theta);
}

/// Root-mean-square over the grid of the wrapped difference between the
/// steered phases atan2(R_theta f, f) and atan2(R_theta g, g).
template <typename Scalar>
Scalar steered_phase_difference(const Field<Scalar>& f, const Field<Scalar>& g, double theta) {
  require_same_shape(f.shape(), g.shape(), "steered_phase_difference");
  const Field<Scalar> pf = detail::phase_of(steered_riesz(f, theta), f);
  const Field<Scalar> pg = detail::phase_of(steered_riesz(g, theta), g);
  Scalar sum = 0;
  for (Index k = 0; k < f.size(); ++k) {
    const Scalar d = wrap_difference(pf.values()[k], pg.values()[k]);
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<Scalar>(f.size()));
}

}  // namespace dpi
