#pragma once

#include <Eigen/Core>

#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "dpi/errors.hpp"

namespace dpi {

using Index = Eigen::Index;

/// Per-axis sample counts, slowest-varying axis first (row-major).
using Shape = std::vector<Index>;

inline Index shape_size(const Shape& shape) {
  return std::accumulate(shape.begin(), shape.end(), Index{1}, std::multiplies<>());
}

inline std::string shape_string(const Shape& shape) {
  std::string out = "[";
  for (std::size_t a = 0; a < shape.size(); ++a) {
    if (a) out += "x";
    out += std::to_string(shape[a]);
  }
  return out + "]";
}

inline void check_shape(const Shape& shape) {
  if (shape.empty() || shape.size() > 3)
    throw InvalidInput("field dimensionality must be 1, 2 or 3, got " + std::to_string(shape.size()));
  for (Index n : shape)
    if (n < 1) throw InvalidInput("zero-length axis in shape " + shape_string(shape));
}

/// Real scalar field on a regular grid with 1 to 3 axes, stored row-major.
template <typename Scalar>
class Field {
 public:
  using Values = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
  using RowMajorMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using MatrixMap = Eigen::Map<RowMajorMatrix>;
  using ConstMatrixMap = Eigen::Map<const RowMajorMatrix>;

  Field() = default;

  explicit Field(Shape shape) : shape_(std::move(shape)) {
    check_shape(shape_);
    values_ = Values::Zero(shape_size(shape_));
  }

  Field(Shape shape, Values values) : shape_(std::move(shape)), values_(std::move(values)) {
    check_shape(shape_);
    if (values_.size() != shape_size(shape_))
      throw InvalidInput("field of shape " + shape_string(shape_) + " needs " +
                         std::to_string(shape_size(shape_)) + " values, got " +
                         std::to_string(values_.size()));
    if (!values_.allFinite()) throw InvalidInput("field contains non-finite values");
  }

  static Field constant(Shape shape, Scalar value) {
    Field f(std::move(shape));
    f.values_.setConstant(value);
    return f;
  }

  /// 2D field whose axis 0 runs over the matrix rows.
  template <typename Derived>
  static Field from_matrix(const Eigen::DenseBase<Derived>& m) {
    Field f(Shape{m.rows(), m.cols()});
    f.matrix() = m.template cast<Scalar>();
    return f;
  }

  const Shape& shape() const noexcept { return shape_; }
  Index dims() const noexcept { return static_cast<Index>(shape_.size()); }
  Index size() const noexcept { return values_.size(); }
  Index rows() const { return shape_.at(0); }
  Index cols() const { return dims() >= 2 ? shape_[1] : 1; }
  bool is_square() const { return dims() == 2 && shape_[0] == shape_[1]; }

  const Values& values() const noexcept { return values_; }
  Values& values() noexcept { return values_; }

  MatrixMap matrix() {
    require_2d();
    return MatrixMap(values_.data(), shape_[0], shape_[1]);
  }
  ConstMatrixMap matrix() const {
    require_2d();
    return ConstMatrixMap(values_.data(), shape_[0], shape_[1]);
  }

  Scalar operator()(Index i, Index j) const { return values_[i * shape_[1] + j]; }
  Scalar& operator()(Index i, Index j) { return values_[i * shape_[1] + j]; }

  /// Copy of the rectangle [row, row+height) x [col, col+width) of a 2D field.
  Field block(Index row, Index col, Index height, Index width) const {
    require_2d();
    if (row < 0 || col < 0 || height < 1 || width < 1 || row + height > shape_[0] ||
        col + width > shape_[1])
      throw InvalidInput("block outside field of shape " + shape_string(shape_));
    return from_matrix(matrix().block(row, col, height, width));
  }

  template <typename Other>
  Field<Other> cast() const {
    return Field<Other>(shape_, values_.template cast<Other>());
  }

  friend bool operator==(const Field& a, const Field& b) {
    return a.shape_ == b.shape_ && (a.values_ == b.values_).all();
  }

 private:
  void require_2d() const {
    if (shape_.size() != 2) throw InvalidInput("operation requires a 2D field");
  }

  Shape shape_;
  Values values_;
};

using Fieldd = Field<double>;
using Fieldf = Field<float>;

inline void require_same_shape(const Shape& a, const Shape& b, const char* what) {
  if (a != b)
    throw InvalidInput(std::string(what) + ": shape mismatch " + shape_string(a) + " vs " +
                       shape_string(b));
}

}  // namespace dpi
