#include "dpi/imaging.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <vector>

#include "dpi/spectra.hpp"

namespace dpi {

void validate(const RasterImage& img) {
  if (img.height < 1 || img.width < 1) throw InvalidInput("image dimensions must be positive");
  if (img.channels != 1 && img.channels != 3)
    throw InvalidInput("unsupported channel count " + std::to_string(img.channels));
  if (img.values.size() != img.height * img.width * img.channels)
    throw InvalidInput("image value count does not match its dimensions");
  if (!img.values.allFinite() || (img.values < 0).any() || (img.values > 1).any())
    throw InvalidInput("image values must lie in [0, 1]");
}

Fieldd to_grayscale(const RasterImage& img) {
  validate(img);
  Fieldd out(Shape{img.height, img.width});
  if (img.channels == 1) {
    out.values() = img.values;
    return out;
  }
  for (Index p = 0; p < img.height * img.width; ++p)
    out.values()[p] = 0.299 * img.values[3 * p] + 0.587 * img.values[3 * p + 1] +
                      0.114 * img.values[3 * p + 2];
  return out;
}

RasterImage from_field(const Fieldd& f) {
  if (f.dims() != 2) throw InvalidInput("image needs a 2D field");
  RasterImage img{f.rows(), f.cols(), 1, f.values()};
  validate(img);
  return img;
}

// Netpbm ---------------------------------------------------------------------

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string header_token(std::istream& in, const std::string& path) {
  std::string tok;
  char c;
  while (in.get(c)) {
    if (c == '#') {
      std::string discard;
      std::getline(in, discard);
      if (!tok.empty()) break;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(c);
  }
  if (tok.empty()) throw IoError(path, "truncated Netpbm header");
  return tok;
}

long header_number(std::istream& in, const std::string& path, const char* field) {
  const std::string tok = header_token(in, path);
  try {
    std::size_t used = 0;
    const long v = std::stol(tok, &used);
    if (used != tok.size() || v < 1) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw IoError(path, std::string("bad ") + field + " '" + tok + "' in Netpbm header");
  }
}

}  // namespace

RasterImage load_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open image");
  std::string magic(2, '\0');
  if (!in.read(magic.data(), 2)) throw IoError(path, "empty file");
  int channels = 0;
  bool binary = false;
  if (magic == "P5" || magic == "P2")
    channels = 1;
  else if (magic == "P6" || magic == "P3")
    channels = 3;
  else
    throw IoError(path, "unsupported image format (expected Netpbm P2/P3/P5/P6)");
  binary = magic == "P5" || magic == "P6";

  const long width = header_number(in, path, "width");
  const long height = header_number(in, path, "height");
  const long maxval = header_number(in, path, "maxval");
  if (maxval > 65535) throw IoError(path, "maxval above 65535");

  RasterImage img{height, width, channels, Eigen::ArrayXd(height * width * channels)};
  const Index count = img.values.size();
  if (binary) {
    const int bytes = maxval < 256 ? 1 : 2;
    std::vector<unsigned char> raw(static_cast<std::size_t>(count * bytes));
    if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size())))
      throw IoError(path, "truncated pixel data");
    for (Index k = 0; k < count; ++k) {
      const long v = bytes == 1 ? raw[k] : (raw[2 * k] << 8) | raw[2 * k + 1];
      if (v > maxval) throw IoError(path, "sample exceeds maxval");
      img.values[k] = static_cast<double>(v) / static_cast<double>(maxval);
    }
  } else {
    for (Index k = 0; k < count; ++k) {
      long v;
      if (!(in >> v) || v < 0 || v > maxval)
        throw IoError(path, "bad sample at index " + std::to_string(k));
      img.values[k] = static_cast<double>(v) / static_cast<double>(maxval);
    }
  }
  return img;
}

void save_image(const RasterImage& img, const std::string& path, int bit_depth) {
  validate(img);
  if (bit_depth != 8 && bit_depth != 16) throw InvalidInput("bit depth must be 8 or 16");
  const long maxval = bit_depth == 8 ? 255 : 65535;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path, "cannot open for writing");
  out << (img.channels == 1 ? "P5" : "P6") << '\n'
      << img.width << ' ' << img.height << '\n'
      << maxval << '\n';
  std::vector<unsigned char> raw;
  raw.reserve(static_cast<std::size_t>(img.values.size() * (bit_depth / 8)));
  for (Index k = 0; k < img.values.size(); ++k) {
    const auto v = static_cast<long>(std::lround(img.values[k] * static_cast<double>(maxval)));
    if (bit_depth == 16) raw.push_back(static_cast<unsigned char>(v >> 8));
    raw.push_back(static_cast<unsigned char>(v & 0xff));
  }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw IoError(path, "write failed");
}

// Synthesis ------------------------------------------------------------------

TextureKind parse_texture_kind(const std::string& name) {
  if (name == "plane_wave") return TextureKind::plane_wave;
  if (name == "gaussian_blobs") return TextureKind::gaussian_blobs;
  if (name == "filtered_noise") return TextureKind::filtered_noise;
  throw InvalidInput("unknown texture kind '" + name + "'");
}

std::string to_string(TextureKind kind) {
  switch (kind) {
    case TextureKind::plane_wave: return "plane_wave";
    case TextureKind::gaussian_blobs: return "gaussian_blobs";
    case TextureKind::filtered_noise: return "filtered_noise";
  }
  return "unknown";
}

namespace {

Fieldd plane_wave(const SynthParams& p) {
  Fieldd f(Shape{p.height, p.width});
  const double two_pi = 2 * std::numbers::pi;
  for (Index i = 0; i < p.height; ++i)
    for (Index j = 0; j < p.width; ++j)
      f(i, j) = std::cos(two_pi * (p.cycles0 * static_cast<double>(i) / static_cast<double>(p.height) +
                                   p.cycles1 * static_cast<double>(j) / static_cast<double>(p.width)));
  return f;
}

Fieldd gaussian_blobs(const SynthParams& p, std::mt19937_64& rng) {
  if (p.blob_count < 1) throw InvalidInput("blob count must be positive");
  if (!(p.blob_sigma > 0)) throw InvalidInput("blob sigma must be positive");
  std::uniform_real_distribution<double> row(0, static_cast<double>(p.height));
  std::uniform_real_distribution<double> col(0, static_cast<double>(p.width));
  std::uniform_real_distribution<double> amp(0.2, 1.0);
  Fieldd f(Shape{p.height, p.width});
  const double denom = 2 * p.blob_sigma * p.blob_sigma;
  for (int b = 0; b < p.blob_count; ++b) {
    const double r = row(rng), c = col(rng), a = amp(rng);
    for (Index i = 0; i < p.height; ++i)
      for (Index j = 0; j < p.width; ++j) {
        const double dr = static_cast<double>(i) - r, dc = static_cast<double>(j) - c;
        f(i, j) += a * std::exp(-(dr * dr + dc * dc) / denom);
      }
  }
  const double peak = f.values().maxCoeff();
  if (peak > 0) f.values() /= peak;
  return f;
}

Fieldd filtered_noise(const SynthParams& p, std::mt19937_64& rng) {
  if (!(p.cutoff > 0 && p.cutoff <= 0.5)) throw InvalidInput("noise cutoff must lie in (0, 0.5]");
  std::normal_distribution<double> normal;
  Fieldd white(Shape{p.height, p.width});
  for (Index k = 0; k < white.size(); ++k) white.values()[k] = normal(rng);

  const FrequencyGrid grid = frequency_grid(white.shape());
  Multiplier<double> lowpass = Multiplier<double>::constant(white.shape(), 0.0);
  for (Index i = 0; i < p.height; ++i)
    for (Index j = 0; j < p.width; ++j) {
      const double r = std::hypot(grid.freqs[0][i], grid.freqs[1][j]);
      if (r > 0 && r <= p.cutoff) lowpass.values[i * p.width + j] = 1.0;
    }
  Fieldd f = apply_multiplier(white, lowpass);
  const double rms = std::sqrt(f.values().square().mean());
  if (rms > 0) f.values() /= rms;
  return f;
}

}  // namespace

Fieldd synth_texture(TextureKind kind, const SynthParams& params, std::uint64_t seed) {
  if (params.height < 1 || params.width < 1) throw InvalidInput("texture size must be positive");
  std::mt19937_64 rng(seed);
  switch (kind) {
    case TextureKind::plane_wave: return plane_wave(params);
    case TextureKind::gaussian_blobs: return gaussian_blobs(params, rng);
    case TextureKind::filtered_noise: return filtered_noise(params, rng);
  }
  throw InvalidInput("unknown texture kind");
}

DisplayMap display_map(TextureKind kind) {
  switch (kind) {
    case TextureKind::plane_wave: return {0.5, 0.5};
    case TextureKind::gaussian_blobs: return {0.0, 1.0};
    case TextureKind::filtered_noise: return {0.5, 0.125};
  }
  return {0.0, 1.0};
}

RasterImage texture_to_image(const Fieldd& texture, TextureKind kind) {
  const DisplayMap m = display_map(kind);
  Fieldd mapped(texture.shape(), (m.offset + m.gain * texture.values()).cwiseMax(0.0).cwiseMin(1.0));
  return from_field(mapped);
}

}  // namespace dpi
