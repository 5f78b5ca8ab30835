#pragma once

// Raster images, grayscale conversion, intensity scaling, Netpbm I/O and
// synthetic test textures.

#include <Eigen/Core>

#include <cstdint>
#include <string>

#include "dpi/field.hpp"

namespace dpi {

/// Interleaved row-major image with values in [0, 1].
struct RasterImage {
  Index height = 0;
  Index width = 0;
  int channels = 1;
  Eigen::ArrayXd values;

  double at(Index row, Index col, int channel = 0) const {
    return values[(row * width + col) * channels + channel];
  }
};

/// Checks dimensions, channel count and the [0, 1] value range.
void validate(const RasterImage& img);

/// 1-channel images pass through; RGB uses BT.601 luma weights.
Fieldd to_grayscale(const RasterImage& img);

/// Single-channel image from a 2D field whose values already lie in [0, 1].
RasterImage from_field(const Fieldd& f);

template <typename Scalar>
Field<Scalar> scale_intensity(const Field<Scalar>& f, Scalar lambda) {
  if (!(lambda > 0)) throw InvalidInput("intensity scale must be positive");
  return Field<Scalar>(f.shape(), f.values() * lambda);
}

/// Reads binary or ASCII Netpbm (P2, P3, P5, P6) at 8 or 16 bits.
RasterImage load_image(const std::string& path);

/// Writes P5 (gray) or P6 (RGB) with the given bit depth (8 or 16).
void save_image(const RasterImage& img, const std::string& path, int bit_depth = 16);

enum class TextureKind { plane_wave, gaussian_blobs, filtered_noise };

TextureKind parse_texture_kind(const std::string& name);
std::string to_string(TextureKind kind);

struct SynthParams {
  Index height = 64;
  Index width = 64;
  /// plane_wave: whole cycles across the image along axis 0 and axis 1.
  double cycles0 = 8;
  double cycles1 = 0;
  /// filtered_noise: radial cutoff in cycles/sample, in (0, 0.5].
  double cutoff = 0.1;
  /// gaussian_blobs
  int blob_count = 12;
  double blob_sigma = 4;
};

/// Deterministic in (kind, params, seed).
///   plane_wave      cos(2 pi (cycles0 i / H + cycles1 j / W))
///   gaussian_blobs  sum of isotropic Gaussians, scaled to peak 1
///   filtered_noise  white noise with every bin |xi| > cutoff (and DC)
///                   removed, scaled to unit RMS
Fieldd synth_texture(TextureKind kind, const SynthParams& params, std::uint64_t seed);

/// Fixed affine map offset + gain * x (clamped to [0, 1]) used to store a
/// texture of the given kind as an image.
struct DisplayMap {
  double offset;
  double gain;
};
DisplayMap display_map(TextureKind kind);
RasterImage texture_to_image(const Fieldd& texture, TextureKind kind);

}  // namespace dpi
