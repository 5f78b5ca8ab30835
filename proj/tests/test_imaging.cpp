#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dpi/imaging.hpp"
#include "support/oracles.hpp"
#include "support/scratch.hpp"

using namespace dpi;
using dpi::testing::ScratchDir;

namespace {

RasterImage rgb_pixel(double r, double g, double b) {
  RasterImage img{1, 1, 3, Eigen::ArrayXd(3)};
  img.values << r, g, b;
  return img;
}

}  // namespace

TEST_CASE("grayscale conversion") {
  CHECK(to_grayscale(rgb_pixel(1, 1, 1))(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(to_grayscale(rgb_pixel(0, 0, 0))(0, 0) == 0.0);
  CHECK(to_grayscale(rgb_pixel(1, 0, 0))(0, 0) == doctest::Approx(0.299));
  CHECK(to_grayscale(rgb_pixel(0, 1, 0))(0, 0) == doctest::Approx(0.587));
  CHECK(to_grayscale(rgb_pixel(0, 0, 1))(0, 0) == doctest::Approx(0.114));

  RasterImage gray{2, 3, 1, Eigen::ArrayXd(6)};
  gray.values << 0, 0.1, 0.2, 0.3, 0.4, 0.5;
  const Fieldd f = to_grayscale(gray);
  CHECK(f.shape() == Shape{2, 3});
  CHECK(f(1, 2) == 0.5);

  RasterImage bad = gray;
  bad.values[0] = 1.5;
  CHECK_THROWS_AS(validate(bad), InvalidInput);
  bad = gray;
  bad.channels = 2;
  CHECK_THROWS_AS(validate(bad), InvalidInput);
}

TEST_CASE("intensity scaling") {
  const Fieldd f = Fieldd::from_matrix(Eigen::MatrixXd::Constant(3, 3, 0.4));
  CHECK(scale_intensity(f, 2.0)(1, 1) == 0.8);
  CHECK_THROWS_AS(scale_intensity(f, 0.0), InvalidInput);
  CHECK_THROWS_AS(scale_intensity(f, -1.0), InvalidInput);
}

TEST_CASE("netpbm round trip") {
  ScratchDir dir("imaging");
  RasterImage img{3, 4, 1, Eigen::ArrayXd(12)};
  for (Index k = 0; k < 12; ++k) img.values[k] = k / 11.0;

  SUBCASE("16-bit") {
    save_image(img, dir.file("a.pgm"), 16);
    const auto back = load_image(dir.file("a.pgm"));
    CHECK(back.height == 3);
    CHECK(back.width == 4);
    CHECK(back.channels == 1);
    CHECK((back.values - img.values).abs().maxCoeff() <= 0.5 / 65535 + 1e-15);
  }
  SUBCASE("8-bit") {
    save_image(img, dir.file("b.pgm"), 8);
    const auto back = load_image(dir.file("b.pgm"));
    CHECK((back.values - img.values).abs().maxCoeff() <= 0.5 / 255 + 1e-15);
    CHECK(dpi::testing::read_bytes(dir.file("b.pgm")).size() == std::string("P5\n4 3\n255\n").size() + 12);
  }
  SUBCASE("RGB") {
    RasterImage c{2, 2, 3, Eigen::ArrayXd::LinSpaced(12, 0, 1)};
    save_image(c, dir.file("c.ppm"), 16);
    const auto back = load_image(dir.file("c.ppm"));
    CHECK(back.channels == 3);
    CHECK((back.values - c.values).abs().maxCoeff() <= 0.5 / 65535 + 1e-15);
    CHECK(to_grayscale(back).shape() == Shape{2, 2});
  }
  SUBCASE("ASCII formats with comments") {
    dpi::testing::write_text(dir.file("p2.pgm"), "P2\n# comment\n2 1\n# another\n10\n0 10\n");
    const auto g = load_image(dir.file("p2.pgm"));
    CHECK(g.values[0] == 0.0);
    CHECK(g.values[1] == 1.0);
    dpi::testing::write_text(dir.file("p3.ppm"), "P3 1 1 255 255 0 0\n");
    CHECK(to_grayscale(load_image(dir.file("p3.ppm")))(0, 0) == doctest::Approx(0.299));
  }
  SUBCASE("errors") {
    const std::string missing = dir.file("missing.pgm");
    try {
      load_image(missing);
      FAIL("no exception");
    } catch (const IoError& e) {
      CHECK(e.path() == missing);
      CHECK(std::string(e.what()).find(missing) != std::string::npos);
    }
    dpi::testing::write_text(dir.file("bad.pgm"), "P7\n1 1\n255\n");
    CHECK_THROWS_AS(load_image(dir.file("bad.pgm")), IoError);
    dpi::testing::write_text(dir.file("short.pgm"), "P5\n4 4\n255\nab");
    CHECK_THROWS_AS(load_image(dir.file("short.pgm")), IoError);
    CHECK_THROWS_AS(save_image(img, dir.file("x.pgm"), 12), InvalidInput);
  }
}

TEST_CASE("synthetic textures") {
  SynthParams p;
  p.height = 24;
  p.width = 20;

  SUBCASE("deterministic in the seed") {
    for (auto kind : {TextureKind::plane_wave, TextureKind::gaussian_blobs, TextureKind::filtered_noise}) {
      CHECK(synth_texture(kind, p, 4) == synth_texture(kind, p, 4));
      CHECK(parse_texture_kind(to_string(kind)) == kind);
    }
    CHECK(!(synth_texture(TextureKind::filtered_noise, p, 4) == synth_texture(TextureKind::filtered_noise, p, 5)));
    CHECK_THROWS_AS(parse_texture_kind("stripes"), InvalidInput);
  }
  SUBCASE("plane wave") {
    p.cycles0 = 3;
    p.cycles1 = 2;
    const Fieldd f = synth_texture(TextureKind::plane_wave, p, 0);
    for (Index i = 0; i < p.height; ++i)
      for (Index j = 0; j < p.width; ++j)
        CHECK(f(i, j) == doctest::Approx(std::cos(2 * std::numbers::pi * (3.0 * i / 24 + 2.0 * j / 20))));
  }
  SUBCASE("gaussian blobs peak at one") {
    const Fieldd f = synth_texture(TextureKind::gaussian_blobs, p, 1);
    CHECK(f.values().maxCoeff() == doctest::Approx(1.0));
    CHECK((f.values() >= 0).all());
  }
  SUBCASE("filtered noise is band limited, zero mean and unit RMS") {
    const Fieldd f = synth_texture(TextureKind::filtered_noise, p, 2);
    CHECK(std::abs(f.values().mean()) < 1e-12);
    CHECK(std::sqrt(f.values().square().mean()) == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<oracle::cplx> x(f.values().begin(), f.values().end());
    const auto spec = oracle::direct_dft(x, f.shape(), -1);
    double outside = 0;
    for (Index k = 0; k < f.size(); ++k) {
      const auto idx = oracle::unravel(k, f.shape());
      const double a = oracle::signed_bin(idx[0], 24) / 24, b = oracle::signed_bin(idx[1], 20) / 20;
      if (std::hypot(a, b) > p.cutoff) outside += std::norm(spec[k]);
    }
    CHECK(outside / static_cast<double>(f.size()) < 1e-10);
  }
  SUBCASE("parameter errors") {
    SynthParams bad = p;
    bad.cutoff = 0.6;
    CHECK_THROWS_AS(synth_texture(TextureKind::filtered_noise, bad, 0), InvalidInput);
    bad = p;
    bad.height = 0;
    CHECK_THROWS_AS(synth_texture(TextureKind::plane_wave, bad, 0), InvalidInput);
  }
  SUBCASE("display mapping stays in range") {
    const RasterImage img = texture_to_image(synth_texture(TextureKind::filtered_noise, p, 3), TextureKind::filtered_noise);
    CHECK_NOTHROW(validate(img));
    CHECK(img.height == 24);
    CHECK(img.width == 20);
  }
}
