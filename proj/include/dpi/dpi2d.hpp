#pragma once

// Divergence Phase Index between fields: pointwise vector and norm, region
// means, blockwise matrices over uniform partitions, elbow binarization.

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "dpi/angles.hpp"
#include "dpi/field.hpp"
#include "dpi/riesz.hpp"

namespace dpi {

/// Pixel rectangle [row, row + height) x [col, col + width).
struct Block {
  Index row = 0;
  Index col = 0;
  Index height = 0;
  Index width = 0;

  friend bool operator==(const Block&, const Block&) = default;
};

struct DPIMatrix {
  Index ns = 0;
  Eigen::MatrixXd values;
  /// Row-major over (i, j): block_bounds[i * ns + j] is cell (i, j).
  std::vector<Block> block_bounds;
};

struct BinaryMask {
  Index ns = 0;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> flags;
  double threshold = 0;
};

/// Component j is the wrapped difference of the j-th phases of f and g.
template <typename Scalar>
PhaseVectorField<Scalar> dpi_vector_field(const Field<Scalar>& f, const Field<Scalar>& g) {
  require_same_shape(f.shape(), g.shape(), "dpi_vector_field");
  const PhaseVectorField<Scalar> pf = phase_vector(f);
  const PhaseVectorField<Scalar> pg = phase_vector(g);
  PhaseVectorField<Scalar> out;
  for (Index j = 0; j < pf.dims(); ++j) {
    Field<Scalar> d(f.shape());
    for (Index k = 0; k < f.size(); ++k)
      d.values()[k] = wrap_difference(pf.components[j].values()[k], pg.components[j].values()[k]);
    out.components.push_back(std::move(d));
  }
  return out;
}

/// Euclidean norm of the DPI vector at every grid point.
template <typename Scalar>
Field<Scalar> dpi_norm_field(const Field<Scalar>& f, const Field<Scalar>& g) {
  const PhaseVectorField<Scalar> d = dpi_vector_field(f, g);
  Field<Scalar> out(f.shape());
  for (const auto& c : d.components) out.values() += c.values().square();
  out.values() = out.values().sqrt();
  return out;
}

template <typename Scalar>
Scalar mean_dpi(const Field<Scalar>& f, const Field<Scalar>& g) {
  return dpi_norm_field(f, g).values().mean();
}

/// ns x ns tiling of a height x width image. Side lengths differ by at most
/// one pixel; the leading blocks take the remainder.
std::vector<Block> partition_blocks(Index height, Index width, Index ns);

/// Cell (i, j) is mean_dpi of f and g restricted to block (i, j). The Riesz
/// transforms are taken on each block on its own.
template <typename Scalar>
DPIMatrix blockwise_dpi(const Field<Scalar>& f, const Field<Scalar>& g, Index ns) {
  require_same_shape(f.shape(), g.shape(), "blockwise_dpi");
  if (f.dims() != 2) throw InvalidInput("blockwise_dpi needs 2D fields");
  DPIMatrix m{ns, Eigen::MatrixXd::Zero(ns, ns), partition_blocks(f.rows(), f.cols(), ns)};
  for (Index i = 0; i < ns; ++i)
    for (Index j = 0; j < ns; ++j) {
      const Block& b = m.block_bounds[i * ns + j];
      m.values(i, j) = static_cast<double>(mean_dpi(f.block(b.row, b.col, b.height, b.width),
                                                    g.block(b.row, b.col, b.height, b.width)));
    }
  return m;
}

/// Knee of the ascending sorted values: the point farthest from the chord
/// joining the first and last points (smallest index on ties).
double elbow_threshold(std::span<const double> values);

/// Flags cells strictly above the elbow threshold of all cell values.
BinaryMask binarize(const DPIMatrix& m);

}  // namespace dpi
