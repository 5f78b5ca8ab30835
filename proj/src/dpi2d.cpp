#include "dpi/dpi2d.hpp"

#include <algorithm>
#include <string>

namespace dpi {

namespace {

std::vector<Index> split_axis(Index n, Index parts) {
  std::vector<Index> sizes(parts, n / parts);
  for (Index k = 0; k < n % parts; ++k) ++sizes[k];
  return sizes;
}

}  // namespace

std::vector<Block> partition_blocks(Index height, Index width, Index ns) {
  if (height < 1 || width < 1) throw InvalidInput("image dimensions must be positive");
  if (ns < 1 || ns > std::min(height, width))
    throw InvalidInput("partition count " + std::to_string(ns) + " invalid for " +
                       std::to_string(height) + "x" + std::to_string(width) + " image");
  const auto heights = split_axis(height, ns);
  const auto widths = split_axis(width, ns);
  std::vector<Block> blocks;
  blocks.reserve(ns * ns);
  Index row = 0;
  for (Index i = 0; i < ns; ++i) {
    Index col = 0;
    for (Index j = 0; j < ns; ++j) {
      blocks.push_back({row, col, heights[i], widths[j]});
      col += widths[j];
    }
    row += heights[i];
  }
  return blocks;
}

double elbow_threshold(std::span<const double> values) {
  if (values.size() < 2) throw InvalidInput("elbow threshold needs at least 2 values");
  std::vector<double> y(values.begin(), values.end());
  std::sort(y.begin(), y.end());
  const double lo = y.front(), hi = y.back();
  if (hi - lo < 1e-12) return hi;

  // Perpendicular distance is |cross| / chord length; the length is common
  // to all points, so the cross product alone ranks them.
  const double dx = static_cast<double>(y.size() - 1);
  const double dy = hi - lo;
  std::size_t best = 0;
  double best_dist = -1;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double dist = std::abs(dx * (y[i] - lo) - static_cast<double>(i) * dy);
    if (dist > best_dist) {
      best_dist = dist;
      best = i;
    }
  }
  return y[best];
}

BinaryMask binarize(const DPIMatrix& m) {
  const Eigen::MatrixXd& v = m.values;
  const double t = elbow_threshold(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
  return {m.ns, (v.array() > t), t};
}

}  // namespace dpi
