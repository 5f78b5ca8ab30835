#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"
#include "dpi/dpi2d.hpp"
#include "dpi/imaging.hpp"
#include "dpi/rotation.hpp"
#include "dpi/text_io.hpp"
#include "support/scratch.hpp"

using namespace dpi;
using dpi::testing::read_bytes;
using dpi::testing::ScratchDir;
using std::numbers::pi;

namespace {

int run_tool(const std::string& args) {
  const std::string cmd = std::string(DPI_TOOL_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void write_csv(const std::string& path, const std::vector<std::string>& labels,
               const std::vector<Eigen::ArrayXd>& columns) {
  std::ofstream out(path);
  for (std::size_t c = 0; c < labels.size(); ++c) out << (c ? "," : "") << labels[c];
  out << '\n';
  for (Index r = 0; r < columns[0].size(); ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << format_number(columns[c][r]);
    out << '\n';
  }
}

Eigen::ArrayXd wave(double hz, double phase, double fs = 200, Index n = 2000) {
  Eigen::ArrayXd s(n);
  for (Index m = 0; m < n; ++m) s[m] = std::cos(2 * pi * hz * m / fs + phase);
  return s;
}

std::string synth_noise(const ScratchDir& dir, const std::string& name, const std::string& extra,
                        int size = 128) {
  REQUIRE(run_tool("synth --kind filtered_noise --size " + std::to_string(size) + " --name " + name + " " + extra + " --out " +
                   dir.file("synth")) == 0);
  return dir.file("synth/" + name);
}

double rotation_angle(const std::string& dir) {
  std::istringstream in(read_bytes(dir + "/rotation.txt"));
  std::string key;
  double angle = -1;
  in >> key >> angle;
  CHECK(key == "angle_deg");
  return angle;
}

}  // namespace

TEST_CASE("parse_pair") {
  CHECK(cli::parse_pair("1,3", "--band") == std::pair{1.0, 3.0});
  CHECK(cli::parse_pair("0.5,-2e1", "--x") == std::pair{0.5, -20.0});
  CHECK_THROWS_AS(cli::parse_pair("1", "--band"), InvalidInput);
  CHECK_THROWS_AS(cli::parse_pair("1,x", "--band"), InvalidInput);
  CHECK_THROWS_AS(cli::parse_pair("1,3z", "--band"), InvalidInput);
}

TEST_CASE("dpi1d") {
  ScratchDir dir("cli1d");
  write_csv(dir.file("sc.csv"), {"sin", "cos", "cos2"}, {wave(2, -pi / 2), wave(2, 0), wave(2, 0)});

  SUBCASE("quarter-turn pair and duplicate channel") {
    REQUIRE(run_tool("dpi1d " + dir.file("sc.csv") + " --rate 200 --band 1,3 --out " + dir.file("o")) == 0);
    const Eigen::MatrixXd m = read_matrix(dir.file("o/dpi_window_0.txt"));
    REQUIRE(m.rows() == 3);
    CHECK(std::abs(m(0, 1) - pi / 2) < 1e-6);
    CHECK(m(1, 2) == 0.0);
    CHECK(read_bytes(dir.file("o/labels.txt")) == "sin\ncos\ncos2\n");
    const auto manifest = nlohmann::json::parse(read_bytes(dir.file("o/manifest.json")));
    CHECK(manifest["subcommand"] == "dpi1d");
  }
  SUBCASE("windows") {
    REQUIRE(run_tool("dpi1d " + dir.file("sc.csv") + " --rate 200 --window 0,5 --window 5,10 --out " +
                     dir.file("w")) == 0);
    CHECK(std::filesystem::exists(dir.file("w/dpi_window_0.txt")));
    CHECK(std::filesystem::exists(dir.file("w/dpi_window_1.txt")));
    CHECK(run_tool("dpi1d " + dir.file("sc.csv") + " --rate 200 --window 5,11 --out " + dir.file("w2")) ==
          cli::kInputError);
  }
  SUBCASE("input errors") {
    write_csv(dir.file("one.csv"), {"a"}, {wave(2, 0)});
    CHECK(run_tool("dpi1d " + dir.file("one.csv") + " --rate 200 --out " + dir.file("e")) == cli::kInputError);
    CHECK(run_tool("dpi1d " + dir.file("missing.csv") + " --rate 200 --out " + dir.file("e")) ==
          cli::kInputError);
    CHECK(run_tool("dpi1d " + dir.file("sc.csv") + " --rate 200 --band 3,1 --out " + dir.file("e")) ==
          cli::kInputError);
    CHECK(run_tool("dpi1d " + dir.file("sc.csv") + " --out " + dir.file("e")) == cli::kInputError);
    CHECK(run_tool("frobnicate") == cli::kInputError);
  }
}

TEST_CASE("dpi2d") {
  ScratchDir dir("cli2d");
  const std::string a = synth_noise(dir, "a.pgm", "--seed 7", 64);

  SUBCASE("self comparison") {
    REQUIRE(run_tool("dpi2d " + a + " " + a + " --ns 4 --out " + dir.file("self")) == 0);
    const Eigen::MatrixXd m = read_matrix(dir.file("self/dpi_matrix.txt"));
    CHECK(m.rows() == 4);
    CHECK(m.isZero(0));
    CHECK(read_matrix(dir.file("self/mask.txt")).isZero(0));
    CHECK(load_image(dir.file("self/mask.ppm")).height == 64);
  }
  SUBCASE("a modified block is flagged") {
    RasterImage img = load_image(a);
    const RasterImage other = load_image(synth_noise(dir, "b.pgm", "--seed 99", 64));
    // Block (1, 2) of a 4x4 partition of 64x64 covers rows 16..31, columns 32..47.
    for (Index r = 16; r < 32; ++r)
      for (Index c = 32; c < 48; ++c) img.values[r * 64 + c] = other.values[r * 64 + c];
    save_image(img, dir.file("mod.pgm"));
    REQUIRE(run_tool("dpi2d " + a + " " + dir.file("mod.pgm") + " --ns 4 --out " + dir.file("mod")) == 0);
    const Eigen::MatrixXd mask = read_matrix(dir.file("mod/mask.txt"));
    CHECK(mask(1, 2) == 1.0);
    CHECK(mask.sum() == 1.0);
  }
  SUBCASE("errors") {
    const std::string small = synth_noise(dir, "small.pgm", "--seed 7", 32);
    CHECK(run_tool("dpi2d " + a + " " + small + " --out " + dir.file("e")) == cli::kInputError);
    CHECK(run_tool("dpi2d " + a + " " + a + " --ns 0 --out " + dir.file("e")) == cli::kInputError);
  }
}

TEST_CASE("intensity-scaled images through the library path") {
  ScratchDir dir("cliscale");
  cli::SynthConfig cfg;
  cfg.params.height = cfg.params.width = 64;
  cfg.seed = 3;
  cfg.bit_depth = 16;
  cfg.out_dir = dir.file("s");
  cfg.file_name = "full.pgm";
  cli::run_synth(cfg);
  cfg.file_name = "half.pgm";
  cfg.intensity = 0.5;
  cli::run_synth(cfg);
  // Quantisation makes these two differ slightly; an exact half in memory does not.
  const Fieldd full = to_grayscale(load_image(dir.file("s/full.pgm")));
  CHECK(blockwise_dpi(full, scale_intensity(full, 0.5), 4).values.isZero(0));
}

TEST_CASE("rotate") {
  ScratchDir dir("clirot");
  const std::string ref = synth_noise(dir, "ref.pgm", "--seed 7");

  SUBCASE("self and quarter turn") {
    REQUIRE(run_tool("rotate " + ref + " " + ref + " --out " + dir.file("self")) == 0);
    CHECK(rotation_angle(dir.file("self")) == 0.0);
    const std::string r90 = synth_noise(dir, "r90.pgm", "--seed 7 --angle 90");
    REQUIRE(run_tool("rotate " + ref + " " + r90 + " --out " + dir.file("r90")) == 0);
    CHECK(rotation_angle(dir.file("r90")) == 90.0);
    CHECK(read_matrix(dir.file("r90/curve.txt")).rows() == 360);
  }
  SUBCASE("generic angles") {
    for (double angle : {137.0, 354.0}) {
      const std::string name = "r" + format_number(angle);
      const std::string tgt = synth_noise(dir, name + ".pgm", "--seed 7 --angle " + format_number(angle));
      REQUIRE(run_tool("rotate " + ref + " " + tgt + " --step 1 --out " + dir.file(name)) == 0);
      CHECK(std::abs(rotation_angle(dir.file(name)) - angle) <= 1.0);
    }
  }
  SUBCASE("errors") {
    const std::string rect = dir.file("rect.pgm");
    REQUIRE(run_tool("synth --height 32 --width 48 --name rect.pgm --out " + dir.path().string()) == 0);
    CHECK(run_tool("rotate " + rect + " " + rect + " --out " + dir.file("e")) == cli::kInputError);
    CHECK(run_tool("rotate " + ref + " " + ref + " --step 0 --out " + dir.file("e")) == cli::kInputError);
    const std::string flat = dir.file("flat.pgm");
    save_image(RasterImage{128, 128, 1, Eigen::ArrayXd::Constant(128 * 128, 0.5)}, flat);
    CHECK(run_tool("rotate " + flat + " " + ref + " --out " + dir.file("e")) == cli::kInputError);
  }
}

TEST_CASE("synth") {
  ScratchDir dir("clisynth");
  for (const std::string kind : {"plane_wave", "gaussian_blobs", "filtered_noise"}) {
    const std::string args = "synth --kind " + kind + " --size 48 --seed 5 --angle 30 --out ";
    REQUIRE(run_tool(args + dir.file("a")) == 0);
    REQUIRE(run_tool(args + dir.file("b")) == 0);
    CHECK(read_bytes(dir.file("a/texture.pgm")) == read_bytes(dir.file("b/texture.pgm")));
    CHECK(read_bytes(dir.file("a/manifest.json")) == read_bytes(dir.file("b/manifest.json")));
  }
  CHECK(run_tool("synth --kind stripes --out " + dir.file("e")) == cli::kInputError);
  CHECK(run_tool("synth --bits 12 --out " + dir.file("e")) == cli::kInputError);
  CHECK(run_tool("synth --cycles 3 --out " + dir.file("e")) == cli::kInputError);
  CHECK(run_tool("synth --intensity 0 --out " + dir.file("e")) == cli::kInputError);
  CHECK(run_tool("--help") == cli::kOk);
}
