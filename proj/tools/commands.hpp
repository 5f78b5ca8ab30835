#pragma once

// Subcommand implementations behind the `dpi` executable. Each run_* writes
// its outputs and a manifest.json into out_dir and throws on failure.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dpi/imaging.hpp"

namespace dpi::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kInternalError = 3 };

struct Dpi1dConfig {
  std::string input;
  double rate_hz = 0;
  double band_lo_hz = 1;
  double band_hi_hz = 3;
  /// [start, end) in seconds; empty means the whole recording.
  std::vector<std::pair<double, double>> windows;
  std::string out_dir;
};

struct Dpi2dConfig {
  std::string image_a;
  std::string image_b;
  long ns = 5;
  std::string out_dir;
};

struct RotateConfig {
  std::string reference;
  std::string target;
  double step_deg = 1;
  std::string out_dir;
};

struct SynthConfig {
  std::string kind = "filtered_noise";
  SynthParams params;
  std::uint64_t seed = 0;
  /// Applied to the texture before it is mapped to [0, 1].
  double angle_deg = 0;
  /// Applied after the mapping.
  double intensity = 1;
  int bit_depth = 16;
  std::string out_dir;
  std::string file_name = "texture.pgm";
};

void run_dpi1d(const Dpi1dConfig& cfg);
void run_dpi2d(const Dpi2dConfig& cfg);
void run_rotate(const RotateConfig& cfg);
void run_synth(const SynthConfig& cfg);

/// Parses "A,B" into two numbers.
std::pair<double, double> parse_pair(const std::string& text, const std::string& flag);

/// Full command line entry point; returns the process exit code.
int main(int argc, char** argv);

}  // namespace dpi::cli
