#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "dpi/dpi2d.hpp"
#include "dpi/phase1d.hpp"
#include "dpi/rotation.hpp"
#include "dpi/text_io.hpp"

namespace dpi::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr Index kHeatmapCellPixels = 16;

fs::path prepare_out_dir(const std::string& dir) {
  if (dir.empty()) throw InvalidInput("--out is required");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError(dir, "cannot create output directory");
  return fs::path(dir);
}

void write_manifest(const fs::path& dir, const std::string& subcommand, ordered_json config,
                    const std::vector<std::string>& outputs) {
  ordered_json manifest;
  manifest["tool"] = "dpi";
  manifest["version"] = kVersion;
  manifest["subcommand"] = subcommand;
  manifest["config"] = std::move(config);
  manifest["outputs"] = outputs;
  const fs::path path = dir / "manifest.json";
  std::ofstream out(path);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  out << manifest.dump(2) << '\n';
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  out << text;
  if (!out) throw IoError(path.string(), "write failed");
}

// Red cells are not significant, green cells are.
RasterImage mask_heatmap(const BinaryMask& mask) {
  const Index side = mask.ns * kHeatmapCellPixels;
  RasterImage img{side, side, 3, Eigen::ArrayXd::Zero(side * side * 3)};
  for (Index r = 0; r < side; ++r)
    for (Index c = 0; c < side; ++c) {
      const bool hit = mask.flags(r / kHeatmapCellPixels, c / kHeatmapCellPixels);
      img.values[(r * side + c) * 3 + (hit ? 1 : 0)] = 1.0;
    }
  return img;
}

Fieldd load_gray(const std::string& path) { return to_grayscale(load_image(path)); }

}  // namespace

std::pair<double, double> parse_pair(const std::string& text, const std::string& flag) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw InvalidInput(flag + " expects two comma-separated numbers, got '" + text + "'");
  try {
    std::size_t used_a = 0, used_b = 0;
    const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
    const double x = std::stod(a, &used_a), y = std::stod(b, &used_b);
    if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument(text);
    return {x, y};
  } catch (const std::logic_error&) {
    throw InvalidInput(flag + " expects two comma-separated numbers, got '" + text + "'");
  }
}

void run_dpi1d(const Dpi1dConfig& cfg) {
  if (!(cfg.rate_hz > 0)) throw InvalidInput("--rate must be positive");
  const CsvTable table = read_csv(cfg.input);
  const Index samples = table.data.rows();
  if (table.labels.size() < 2) throw InvalidInput(cfg.input + ": need at least 2 channels");
  if (samples < 2) throw InvalidInput(cfg.input + ": need at least 2 samples");

  std::vector<std::pair<double, double>> windows = cfg.windows;
  if (windows.empty()) windows.emplace_back(0.0, static_cast<double>(samples) / cfg.rate_hz);

  struct SampleWindow {
    Index begin, end;
  };
  std::vector<SampleWindow> ranges;
  for (const auto& [start, end] : windows) {
    const auto b = static_cast<Index>(std::llround(start * cfg.rate_hz));
    const auto e = static_cast<Index>(std::llround(end * cfg.rate_hz));
    if (!(start >= 0) || !(end > start) || e - b < 2)
      throw InvalidInput("window " + format_number(start) + "," + format_number(end) + " is empty or inverted");
    if (e > samples)
      throw InvalidInput("window " + format_number(start) + "," + format_number(end) +
                         " s ends past the recording (" + std::to_string(samples) + " samples at " +
                         format_number(cfg.rate_hz) + " Hz)");
    ranges.push_back({b, e});
  }

  const fs::path dir = prepare_out_dir(cfg.out_dir);
  std::vector<std::string> outputs;
  ordered_json window_json = ordered_json::array();
  for (std::size_t w = 0; w < ranges.size(); ++w) {
    const auto [b, e] = ranges[w];
    std::vector<Signald> channels;
    for (Index c = 0; c < table.data.cols(); ++c)
      channels.emplace_back(table.data.col(c).segment(b, e - b).array(), cfg.rate_hz);
    const PairwiseDPIMatrix m =
        pairwise_dpi_matrix(ChannelSet<double>(std::move(channels), table.labels), cfg.band_lo_hz, cfg.band_hi_hz);
    const std::string name = "dpi_window_" + std::to_string(w) + ".txt";
    write_matrix((dir / name).string(), m.values);
    outputs.push_back(name);
    window_json.push_back({{"start_s", windows[w].first},
                           {"end_s", windows[w].second},
                           {"begin_sample", b},
                           {"end_sample", e},
                           {"matrix", name}});
  }
  std::string labels;
  for (const auto& l : table.labels) labels += l + "\n";
  write_text(dir / "labels.txt", labels);
  outputs.push_back("labels.txt");

  write_manifest(dir, "dpi1d",
                 {{"input", cfg.input},
                  {"rate_hz", cfg.rate_hz},
                  {"band_hz", {cfg.band_lo_hz, cfg.band_hi_hz}},
                  {"channels", table.labels},
                  {"samples", samples},
                  {"windows", window_json}},
                 outputs);
}

void run_dpi2d(const Dpi2dConfig& cfg) {
  const Fieldd a = load_gray(cfg.image_a);
  const Fieldd b = load_gray(cfg.image_b);
  if (a.shape() != b.shape())
    throw InvalidInput("image sizes differ: " + shape_string(a.shape()) + " vs " + shape_string(b.shape()));
  const DPIMatrix m = blockwise_dpi(a, b, cfg.ns);
  const BinaryMask mask = binarize(m);

  const fs::path dir = prepare_out_dir(cfg.out_dir);
  write_matrix((dir / "dpi_matrix.txt").string(), m.values);
  write_matrix((dir / "mask.txt").string(), mask.flags.cast<double>().matrix());
  write_text(dir / "threshold.txt", format_number(mask.threshold) + "\n");
  save_image(mask_heatmap(mask), (dir / "mask.ppm").string(), 8);

  write_manifest(dir, "dpi2d",
                 {{"image_a", cfg.image_a},
                  {"image_b", cfg.image_b},
                  {"ns", cfg.ns},
                  {"height", a.rows()},
                  {"width", a.cols()},
                  {"grayscale", "bt601"},
                  {"threshold", mask.threshold}},
                 {"dpi_matrix.txt", "mask.txt", "threshold.txt", "mask.ppm"});
}

void run_rotate(const RotateConfig& cfg) {
  const Fieldd ref = load_gray(cfg.reference);
  const Fieldd tgt = load_gray(cfg.target);
  if (ref.shape() != tgt.shape())
    throw InvalidInput("image sizes differ: " + shape_string(ref.shape()) + " vs " + shape_string(tgt.shape()));
  if (!ref.is_square()) throw InvalidInput("rotation estimation needs square images, got " + shape_string(ref.shape()));
  const RotationEstimate est = estimate_rotation(ref, tgt, cfg.step_deg);

  const fs::path dir = prepare_out_dir(cfg.out_dir);
  write_text(dir / "rotation.txt",
             "angle_deg " + format_number(est.angle_deg) + "\nscore " + format_number(est.score) + "\n");
  Eigen::MatrixXd curve(static_cast<Index>(est.curve.size()), 2);
  for (std::size_t k = 0; k < est.curve.size(); ++k) {
    curve(static_cast<Index>(k), 0) = est.curve[k].first;
    curve(static_cast<Index>(k), 1) = est.curve[k].second;
  }
  write_matrix((dir / "curve.txt").string(), curve);

  write_manifest(dir, "rotate",
                 {{"reference", cfg.reference},
                  {"target", cfg.target},
                  {"step_deg", cfg.step_deg},
                  {"size", ref.rows()},
                  {"angle_deg", est.angle_deg},
                  {"score", est.score}},
                 {"rotation.txt", "curve.txt"});
}

void run_synth(const SynthConfig& cfg) {
  const TextureKind kind = parse_texture_kind(cfg.kind);
  if (!(cfg.intensity > 0 && cfg.intensity <= 1)) throw InvalidInput("--intensity must lie in (0, 1]");
  if (cfg.file_name.empty() || fs::path(cfg.file_name).has_parent_path())
    throw InvalidInput("--name must be a plain file name");
  Fieldd texture = synth_texture(kind, cfg.params, cfg.seed);
  if (cfg.angle_deg != 0) texture = rotate_field(texture, cfg.angle_deg);
  RasterImage img = texture_to_image(texture, kind);
  img.values *= cfg.intensity;

  const fs::path dir = prepare_out_dir(cfg.out_dir);
  save_image(img, (dir / cfg.file_name).string(), cfg.bit_depth);

  const DisplayMap map = display_map(kind);
  write_manifest(dir, "synth",
                 {{"kind", cfg.kind},
                  {"height", cfg.params.height},
                  {"width", cfg.params.width},
                  {"cycles", {cfg.params.cycles0, cfg.params.cycles1}},
                  {"cutoff", cfg.params.cutoff},
                  {"blob_count", cfg.params.blob_count},
                  {"blob_sigma", cfg.params.blob_sigma},
                  {"seed", cfg.seed},
                  {"angle_deg", cfg.angle_deg},
                  {"intensity", cfg.intensity},
                  {"display_offset", map.offset},
                  {"display_gain", map.gain},
                  {"bit_depth", cfg.bit_depth}},
                 {cfg.file_name});
}

int main(int argc, char** argv) {
  CLI::App app{"Divergence Phase Index toolkit: Hilbert/Riesz phase comparison of signals and images"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Dpi1dConfig d1;
  std::string band = "1,3";
  std::vector<std::string> window_args;
  auto* c1 = app.add_subcommand("dpi1d", "pairwise channel DPI matrices from a CSV recording");
  c1->add_option("input", d1.input, "CSV: header of channel labels, one column per channel")->required();
  c1->add_option("--rate", d1.rate_hz, "sample rate in Hz")->required();
  c1->add_option("--band", band, "band-pass edges LO,HI in Hz (inclusive)")->capture_default_str();
  c1->add_option("--window", window_args, "analysis window START,END in seconds (repeatable)");
  c1->add_option("--out", d1.out_dir, "output directory")->required();

  Dpi2dConfig d2;
  auto* c2 = app.add_subcommand("dpi2d", "blockwise DPI matrix and elbow mask between two images");
  c2->add_option("image_a", d2.image_a, "first image (Netpbm)")->required();
  c2->add_option("image_b", d2.image_b, "second image (Netpbm)")->required();
  c2->add_option("--ns", d2.ns, "partitions per side")->capture_default_str();
  c2->add_option("--out", d2.out_dir, "output directory")->required();

  RotateConfig rot;
  auto* c3 = app.add_subcommand("rotate", "estimate the rotation of target relative to reference");
  c3->add_option("reference", rot.reference, "reference image (Netpbm, square)")->required();
  c3->add_option("target", rot.target, "target image (Netpbm, square)")->required();
  c3->add_option("--step", rot.step_deg, "angle grid step in degrees")->capture_default_str();
  c3->add_option("--out", rot.out_dir, "output directory")->required();

  SynthConfig syn;
  long size = 0;
  std::string cycles;
  auto* c4 = app.add_subcommand("synth", "generate a synthetic test texture");
  c4->add_option("--kind", syn.kind, "plane_wave | gaussian_blobs | filtered_noise")->capture_default_str();
  c4->add_option("--size", size, "square side length (overrides --height/--width)");
  c4->add_option("--height", syn.params.height)->capture_default_str();
  c4->add_option("--width", syn.params.width)->capture_default_str();
  c4->add_option("--cycles", cycles, "plane_wave cycles K0,K1 along axis 0 and axis 1");
  c4->add_option("--cutoff", syn.params.cutoff, "filtered_noise cutoff in cycles/sample")->capture_default_str();
  c4->add_option("--blobs", syn.params.blob_count)->capture_default_str();
  c4->add_option("--sigma", syn.params.blob_sigma, "blob width in pixels")->capture_default_str();
  c4->add_option("--angle", syn.angle_deg, "rotate the texture by this many degrees")->capture_default_str();
  c4->add_option("--intensity", syn.intensity, "scale the stored image by this factor")->capture_default_str();
  c4->add_option("--seed", syn.seed)->capture_default_str();
  c4->add_option("--bits", syn.bit_depth, "8 or 16")->capture_default_str();
  c4->add_option("--name", syn.file_name, "image file name inside --out")->capture_default_str();
  c4->add_option("--out", syn.out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*c1) {
      std::tie(d1.band_lo_hz, d1.band_hi_hz) = parse_pair(band, "--band");
      for (const auto& w : window_args) d1.windows.push_back(parse_pair(w, "--window"));
      run_dpi1d(d1);
    } else if (*c2) {
      run_dpi2d(d2);
    } else if (*c3) {
      run_rotate(rot);
    } else if (*c4) {
      if (size > 0) syn.params.height = syn.params.width = size;
      if (!cycles.empty()) std::tie(syn.params.cycles0, syn.params.cycles1) = parse_pair(cycles, "--cycles");
      run_synth(syn);
    }
  } catch (const InvalidInput& e) {
    std::cerr << "dpi: invalid input: " << e.what() << '\n';
    return kInputError;
  } catch (const IoError& e) {
    std::cerr << "dpi: " << e.what() << '\n';
    return kInputError;
  } catch (const DegenerateInput& e) {
    std::cerr << "dpi: degenerate input: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "dpi: internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kOk;
}

}  // namespace dpi::cli
