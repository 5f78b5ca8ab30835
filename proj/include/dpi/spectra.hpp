#pragma once

// Frequency grids and Fourier multipliers. Frequencies are in cycles/sample
// and follow DFT bin order: 0, 1/N, ..., then the negative frequencies. For
// even N the Nyquist bin carries -1/2.

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <vector>

#include "dpi/field.hpp"

namespace dpi {

template <typename Scalar>
using ComplexArray = Eigen::Array<std::complex<Scalar>, Eigen::Dynamic, 1>;

struct FrequencyGrid {
  Shape shape;
  std::vector<Eigen::ArrayXd> freqs;

  Index dims() const noexcept { return static_cast<Index>(shape.size()); }
};

/// Signed frequency of DFT bin k on an axis of length n.
inline double bin_frequency(Index k, Index n) {
  const Index signed_k = k <= (n - 1) / 2 ? k : k - n;
  return static_cast<double>(signed_k) / static_cast<double>(n);
}

inline FrequencyGrid frequency_grid(const Shape& shape) {
  check_shape(shape);
  FrequencyGrid grid{shape, {}};
  for (Index n : shape) {
    Eigen::ArrayXd f(n);
    for (Index k = 0; k < n; ++k) f[k] = bin_frequency(k, n);
    grid.freqs.push_back(std::move(f));
  }
  return grid;
}

/// Fourier-domain symbol, one complex value per spectrum bin.
template <typename Scalar>
struct Multiplier {
  Shape shape;
  ComplexArray<Scalar> values;

  static Multiplier constant(const Shape& shape, std::complex<Scalar> v) {
    return {shape, ComplexArray<Scalar>::Constant(shape_size(shape), v)};
  }
};

/// -i sign(xi) on a 1D grid; the DC bin and the even-N Nyquist bin are 0.
template <typename Scalar = double>
Multiplier<Scalar> hilbert_multiplier(const FrequencyGrid& grid) {
  if (grid.dims() != 1) throw InvalidInput("hilbert_multiplier needs a one-dimensional grid");
  const Index n = grid.shape[0];
  Multiplier<Scalar> m{grid.shape, ComplexArray<Scalar>::Zero(n)};
  for (Index k = 1; k < n; ++k) {
    if (2 * k == n) continue;
    const Scalar s = grid.freqs[0][k] > 0 ? Scalar(1) : Scalar(-1);
    m.values[k] = {Scalar(0), -s};
  }
  return m;
}

/// -i xi_axis / |xi| on an n-D grid; 0 at xi = 0. Nyquist bins are kept.
template <typename Scalar = double>
Multiplier<Scalar> riesz_multiplier(Index axis, const FrequencyGrid& grid) {
  if (axis < 0 || axis >= grid.dims())
    throw InvalidInput("riesz axis " + std::to_string(axis) + " out of range for " +
                       std::to_string(grid.dims()) + "-D grid");
  const Index total = shape_size(grid.shape);
  Multiplier<Scalar> m{grid.shape, ComplexArray<Scalar>::Zero(total)};
  std::vector<Index> idx(grid.shape.size(), 0);
  for (Index flat = 0; flat < total; ++flat) {
    double norm2 = 0;
    for (std::size_t a = 0; a < idx.size(); ++a) norm2 += grid.freqs[a][idx[a]] * grid.freqs[a][idx[a]];
    if (norm2 > 0) {
      const double sigma = grid.freqs[axis][idx[axis]] / std::sqrt(norm2);
      m.values[flat] = {Scalar(0), static_cast<Scalar>(-sigma)};
    }
    for (Index a = static_cast<Index>(idx.size()) - 1; a >= 0; --a) {
      if (++idx[a] < grid.shape[a]) break;
      idx[a] = 0;
    }
  }
  return m;
}

namespace detail {

// Separable n-D DFT: a 1D transform along every line of every axis.
// The inverse carries the 1/N normalisation.
template <typename Scalar>
void fft_in_place(ComplexArray<Scalar>& data, const Shape& shape, bool inverse) {
  Eigen::FFT<Scalar> fft;
  std::vector<std::complex<Scalar>> line, out;
  Index stride = 1;
  for (Index a = static_cast<Index>(shape.size()) - 1; a >= 0; --a) {
    const Index n = shape[a];
    // kissfft cannot plan a length-1 transform; it is the identity anyway.
    if (n > 1) {
      const Index outer = data.size() / (n * stride);
      line.resize(n);
      for (Index o = 0; o < outer; ++o) {
        for (Index s = 0; s < stride; ++s) {
          const Index base = o * n * stride + s;
          for (Index k = 0; k < n; ++k) line[k] = data[base + k * stride];
          if (inverse)
            fft.inv(out, line);
          else
            fft.fwd(out, line);
          for (Index k = 0; k < n; ++k) data[base + k * stride] = out[k];
        }
      }
    }
    stride *= n;
  }
}

}  // namespace detail

template <typename Scalar>
ComplexArray<Scalar> spectrum(const Field<Scalar>& f) {
  ComplexArray<Scalar> data = f.values().template cast<std::complex<Scalar>>();
  detail::fft_in_place(data, f.shape(), false);
  return data;
}

/// Inverse DFT of a spectrum, including the imaginary part.
template <typename Scalar>
ComplexArray<Scalar> inverse_spectrum(ComplexArray<Scalar> data, const Shape& shape) {
  detail::fft_in_place(data, shape, true);
  return data;
}

/// Real part of the inverse DFT of (m .* spec).
template <typename Scalar>
Field<Scalar> apply_to_spectrum(const ComplexArray<Scalar>& spec, const Multiplier<Scalar>& m) {
  ComplexArray<Scalar> product = spec * m.values;
  detail::fft_in_place(product, m.shape, true);
  return Field<Scalar>(m.shape, product.real());
}

template <typename Scalar>
Field<Scalar> apply_multiplier(const Field<Scalar>& f, const Multiplier<Scalar>& m) {
  require_same_shape(f.shape(), m.shape, "apply_multiplier");
  if (m.values.size() != f.size()) throw InvalidInput("apply_multiplier: malformed multiplier");
  return apply_to_spectrum(spectrum(f), m);
}

}  // namespace dpi
