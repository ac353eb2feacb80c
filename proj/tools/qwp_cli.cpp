// Command-line front end for the quasi-analytic wavelet-packet library.
// Talks to the shared library exclusively through the C interface.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwp/qwp_c.h"

namespace {

using json = nlohmann::json;

struct CliError {
  int code;
  std::string msg;
};

[[noreturn]] void die(int code, const std::string& msg) { throw CliError{code, msg}; }

void check_status(qwp_status st) {
  if (st != QWP_OK) die(static_cast<int>(st), std::string(qwp_status_str(st)) + ": " + qwp_last_error());
}

// ---------------------------------------------------------------------------
// image / signal I/O

struct Image {
  std::uint64_t width = 0;
  std::uint64_t height = 0;
  std::vector<double> px;  // row-major, 0..255 scale
};

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int pgm_token(std::istream& in) {
  // Skips whitespace and '#' comments, returns the next integer token.
  while (true) {
    int c = in.peek();
    if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else if (std::isspace(c)) {
      in.get();
    } else {
      break;
    }
  }
  int value = -1;
  in >> value;
  if (!in) value = -1;
  return value;
}

Image read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die(3, "cannot open: " + path);
  std::string magic(2, '\0');
  in.read(magic.data(), 2);
  if (magic != "P5") die(3, path + ": only binary PGM (P5) input is supported");
  const int width = pgm_token(in);
  const int height = pgm_token(in);
  const int maxval = pgm_token(in);
  if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 65535)
    die(3, path + ": malformed PGM header");
  in.get();  // single whitespace after maxval

  Image img;
  img.width = static_cast<std::uint64_t>(width);
  img.height = static_cast<std::uint64_t>(height);
  img.px.resize(img.width * img.height);
  const std::size_t count = img.px.size();
  if (maxval < 256) {
    std::vector<std::uint8_t> buf(count);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(count));
    if (!in) die(3, path + ": truncated pixel data");
    for (std::size_t i = 0; i < count; ++i) img.px[i] = buf[i];
  } else {
    // 16-bit samples are big-endian per the format; accepted read-only and
    // rescaled onto the 0..255 range.
    std::vector<std::uint8_t> buf(count * 2);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(count * 2));
    if (!in) die(3, path + ": truncated pixel data");
    for (std::size_t i = 0; i < count; ++i) {
      const unsigned v = (static_cast<unsigned>(buf[2 * i]) << 8) | buf[2 * i + 1];
      img.px[i] = 255.0 * static_cast<double>(v) / static_cast<double>(maxval);
    }
  }
  return img;
}

void write_pgm(const std::string& path, const Image& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) die(3, "cannot write: " + path);
  out << "P5\n" << img.width << " " << img.height << "\n255\n";
  std::vector<std::uint8_t> buf(img.px.size());
  for (std::size_t i = 0; i < img.px.size(); ++i) {
    const double v = std::round(img.px[i]);
    buf[i] = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
  }
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out) die(3, "write failed: " + path);
}

void write_f64(const std::string& path, const std::vector<double>& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) die(3, "cannot write: " + path);
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(double)));
  if (!out) die(3, "write failed: " + path);
}

std::vector<double> read_f64(const std::string& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) die(3, "cannot open: " + path);
  const std::streamsize bytes = in.tellg();
  if (bytes % sizeof(double) != 0) die(3, path + ": size is not a multiple of 8 bytes");
  in.seekg(0);
  std::vector<double> data(static_cast<std::size_t>(bytes) / sizeof(double));
  in.read(reinterpret_cast<char*>(data.data()), bytes);
  if (!in) die(3, path + ": read failed");
  return data;
}

std::vector<double> read_signal_txt(const std::string& path) {
  std::ifstream in(path);
  if (!in) die(3, "cannot open: " + path);
  std::vector<double> data;
  double v = 0.0;
  while (in >> v) data.push_back(v);
  if (data.empty()) die(3, path + ": no samples found");
  return data;
}

void write_signal_txt(const std::string& path, const std::vector<double>& data) {
  std::ofstream out(path);
  if (!out) die(3, "cannot write: " + path);
  out << std::setprecision(17);
  for (double v : data) out << v << "\n";
  if (!out) die(3, "write failed: " + path);
}

// Kernel file: one row of whitespace-separated taps per line.
std::vector<double> read_kernel_txt(const std::string& path, int& kh, int& kw) {
  std::ifstream in(path);
  if (!in) die(3, "cannot open: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<double> row;
    double v = 0.0;
    while (ls >> v) row.push_back(v);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) die(3, path + ": empty kernel file");
  for (const auto& row : rows)
    if (row.size() != rows[0].size()) die(3, path + ": ragged kernel rows");
  kh = static_cast<int>(rows.size());
  kw = static_cast<int>(rows[0].size());
  std::vector<double> taps;
  for (const auto& row : rows) taps.insert(taps.end(), row.begin(), row.end());
  return taps;
}

std::uint64_t square_side(const Image& img, const std::string& path) {
  if (img.width != img.height) die(2, path + ": image must be square");
  return img.width;
}

// ---------------------------------------------------------------------------
// run manifest

struct Manifest {
  std::string command;
  std::uint64_t seed = 0;
  json config = json::object();
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;

  void write(const std::string& anchor) const {
    json doc;
    doc["command"] = command;
    doc["library_version"] = qwp_version();
    doc["seed"] = seed;
    doc["config"] = config;
    doc["inputs"] = inputs;
    doc["outputs"] = outputs;
    const std::string path = anchor + ".manifest.json";
    std::ofstream out(path);
    if (!out) die(3, "cannot write: " + path);
    out << doc.dump(2) << "\n";
  }
};

std::ostream& value6(std::ostream& os) { return os << std::setprecision(6); }

// Deterministic gaussian samples; avoids stdlib distribution differences.
double gaussian(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double u1 = 0.0;
  do {
    u1 = uni(rng);
  } while (u1 <= 1e-300);
  const double u2 = uni(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

// ---------------------------------------------------------------------------
// subcommands

struct TransformArgs {
  std::string input;
  std::string out;
  int order = 8;
  int levels = 3;
  bool tensor = false;
  bool extend = false;
  std::uint64_t seed = 0;
};

int run_transform(const TransformArgs& a) {
  qwp_forest* forest = nullptr;
  Manifest manifest;
  manifest.command = "transform";
  manifest.seed = a.seed;
  manifest.config = {{"order", a.order},
                     {"levels", a.levels},
                     {"tensor", a.tensor},
                     {"extend", a.extend}};
  manifest.inputs = {a.input};
  manifest.outputs = {a.out};

  if (has_suffix(a.input, ".pgm")) {
    const Image img = read_pgm(a.input);
    const std::uint64_t n = square_side(img, a.input);
    check_status(qwp_forward_2d(img.px.data(), n, a.order, a.levels, a.tensor ? 0 : 1,
                                a.extend ? 1 : 0, &forest));
  } else {
    if (a.extend) die(2, "--extend only applies to image input");
    const std::vector<double> x = read_signal_txt(a.input);
    check_status(qwp_forward_1d(x.data(), x.size(), a.order, a.levels, a.tensor ? 0 : 1, &forest));
  }
  check_status(qwp_forest_save(forest, a.out.c_str()));

  qwp_forest_kind kind;
  std::uint64_t n = 0, out_n = 0;
  int order = 0, levels = 0;
  check_status(qwp_forest_info(forest, &kind, &n, &out_n, &order, &levels));
  const bool dual = kind == QWP_FOREST_QWP1D || kind == QWP_FOREST_QWP2D;
  const int trees = dual ? 2 : 1;

  std::cout << value6 << "forest kind=" << static_cast<int>(kind) << " n=" << n
            << " order=" << order << " levels=" << levels << "\n";
  for (int level = 1; level <= levels; ++level) {
    std::uint64_t count = 0;
    check_status(qwp_forest_band_count(forest, level, &count));
    double level_total = 0.0;
    for (int tree = 0; tree < trees; ++tree)
      for (std::uint64_t band = 0; band < count; ++band) {
        double e = 0.0;
        check_status(qwp_forest_band_energy(forest, tree, level, band, &e));
        level_total += e;
      }
    std::cout << "level " << level << " bands_per_tree=" << count
              << " total_energy=" << level_total << "\n";
  }
  std::uint64_t count = 0;
  check_status(qwp_forest_band_count(forest, levels, &count));
  std::cout << "band energies at level " << levels << ":\n";
  for (int tree = 0; tree < trees; ++tree) {
    for (std::uint64_t band = 0; band < count; ++band) {
      double e = 0.0;
      check_status(qwp_forest_band_energy(forest, tree, levels, band, &e));
      std::cout << (dual ? (tree == 0 ? "plus " : "minus") : "real ") << " band " << std::setw(4)
                << band << " energy " << e << "\n";
    }
  }
  qwp_forest_free(forest);
  manifest.write(a.out);
  return 0;
}

struct ReconstructArgs {
  std::string input;
  std::string out;
};

int run_reconstruct(const ReconstructArgs& a) {
  qwp_forest* forest = nullptr;
  check_status(qwp_forest_load(a.input.c_str(), &forest));
  qwp_forest_kind kind;
  std::uint64_t n = 0, out_n = 0;
  int order = 0, levels = 0;
  check_status(qwp_forest_info(forest, &kind, &n, &out_n, &order, &levels));

  Manifest manifest;
  manifest.command = "reconstruct";
  manifest.config = {{"order", order}, {"levels", levels}, {"kind", static_cast<int>(kind)}};
  manifest.inputs = {a.input};
  manifest.outputs = {a.out};

  if (kind == QWP_FOREST_WP1D || kind == QWP_FOREST_QWP1D) {
    std::vector<double> x(n);
    check_status(qwp_inverse_1d(forest, x.data()));
    if (has_suffix(a.out, ".f64"))
      write_f64(a.out, x);
    else
      write_signal_txt(a.out, x);
  } else {
    std::vector<double> img(out_n * out_n);
    check_status(qwp_inverse_2d(forest, img.data()));
    if (has_suffix(a.out, ".f64")) {
      write_f64(a.out, img);
    } else {
      Image im;
      im.width = im.height = out_n;
      im.px = std::move(img);
      write_pgm(a.out, im);
    }
  }
  qwp_forest_free(forest);
  manifest.write(a.out);
  return 0;
}

std::vector<double> load_samples(const std::string& path, std::uint64_t* side) {
  if (has_suffix(path, ".pgm")) {
    Image img = read_pgm(path);
    if (side) *side = img.width == img.height ? img.width : 0;
    return std::move(img.px);
  }
  if (has_suffix(path, ".f64")) {
    std::vector<double> data = read_f64(path);
    if (side) *side = 0;
    return data;
  }
  std::vector<double> data = read_signal_txt(path);
  if (side) *side = 0;
  return data;
}

struct PsnrArgs {
  std::string a, b;
  std::string out;
};

int run_psnr(const PsnrArgs& a) {
  const std::vector<double> va = load_samples(a.a, nullptr);
  const std::vector<double> vb = load_samples(a.b, nullptr);
  if (va.size() != vb.size()) die(2, "inputs have different sample counts");
  double db = 0.0;
  check_status(qwp_psnr(va.data(), vb.data(), va.size(), &db));
  std::cout << value6 << "psnr_db = " << db << "\n";

  Manifest manifest;
  manifest.command = "psnr";
  manifest.inputs = {a.a, a.b};
  if (!a.out.empty()) {
    std::ofstream out(a.out);
    if (!out) die(3, "cannot write: " + a.out);
    out << value6 << db << "\n";
    manifest.outputs = {a.out};
    manifest.write(a.out);
  } else {
    manifest.write("psnr");
  }
  return 0;
}

struct AtlasArgs {
  std::string out_dir;
  int order = 8;
  int levels = 3;
  std::uint64_t size = 256;
};

void write_normalized_pgm(const std::string& path, const std::vector<double>& data,
                          std::uint64_t n) {
  double lo = data[0], hi = data[0];
  for (double v : data) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double span = hi > lo ? hi - lo : 1.0;
  Image img;
  img.width = img.height = n;
  img.px.resize(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) img.px[i] = 255.0 * (data[i] - lo) / span;
  write_pgm(path, img);
}

int run_atlas(const AtlasArgs& a) {
  namespace fs = std::filesystem;
  fs::create_directories(a.out_dir);
  const std::uint64_t n = a.size;
  const std::uint64_t side = std::uint64_t(1) << a.levels;

  Manifest manifest;
  manifest.command = "atlas";
  manifest.config = {{"order", a.order}, {"levels", a.levels}, {"size", a.size}};

  std::vector<double> vartheta(n * n), theta(n * n), spec(n * n);
  for (int sign = 0; sign < 2; ++sign) {
    for (std::uint64_t j = 0; j < side; ++j) {
      for (std::uint64_t l = 0; l < side; ++l) {
        long kappa = 0, nu = 0;
        check_status(qwp_atom_2d(n, a.order, a.levels, j, l, sign == 0 ? 1 : -1,
                                 vartheta.data(), theta.data(), spec.data(), &kappa, &nu));
        std::ostringstream base;
        base << a.out_dir << "/m" << a.levels << "_j" << j << "_l" << l << "_"
             << (sign == 0 ? "plus" : "minus");
        for (const auto& [tag, data] :
             {std::pair<const char*, std::vector<double>*>{"vartheta", &vartheta},
              {"theta", &theta},
              {"spec", &spec}}) {
          write_normalized_pgm(base.str() + "_" + tag + ".pgm", *data, n);
          write_f64(base.str() + "_" + tag + ".f64", *data);
          manifest.outputs.push_back(base.str() + "_" + tag + ".pgm");
        }
      }
    }
  }

  std::uint64_t directions = 0;
  check_status(qwp_orientation_census(n, a.order, a.levels, &directions));
  const std::string census_path = a.out_dir + "/census_m" + std::to_string(a.levels) + ".txt";
  {
    std::ofstream out(census_path);
    if (!out) die(3, "cannot write: " + census_path);
    out << "level " << a.levels << " distinct_orientations " << directions << "\n";
    out << "sign j l kappa nu\n";
    for (int sign = 0; sign < 2; ++sign)
      for (std::uint64_t j = 0; j < side; ++j)
        for (std::uint64_t l = 0; l < side; ++l) {
          long kappa = 0, nu = 0;
          check_status(qwp_atom_2d(n, a.order, a.levels, j, l, sign == 0 ? 1 : -1, nullptr,
                                   nullptr, nullptr, &kappa, &nu));
          out << (sign == 0 ? "+" : "-") << " " << j << " " << l << " " << kappa << " " << nu
              << "\n";
        }
  }
  manifest.outputs.push_back(census_path);
  std::cout << "atoms " << (2 * side * side) << " distinct_orientations " << directions << "\n";
  manifest.write(a.out_dir + "/atlas");
  return 0;
}

struct DenoiseArgs {
  std::string input;
  std::string ref;
  std::string out;
  int order = 8;
  int levels = 3;
  std::string cost = "entropy";
  std::uint64_t rank = 0;
  bool tensor = false;
  bool extend = false;
};

int run_denoise(const DenoiseArgs& a) {
  const Image noisy = read_pgm(a.input);
  const std::uint64_t n = square_side(noisy, a.input);
  std::vector<double> ref_px;
  if (!a.ref.empty()) {
    const Image ref = read_pgm(a.ref);
    if (ref.width != noisy.width || ref.height != noisy.height)
      die(2, "reference image size mismatch");
    ref_px = ref.px;
  }

  qwp_denoise_params params{};
  params.order = a.order;
  params.levels = a.levels;
  params.directional = a.tensor ? 0 : 1;
  params.cost = a.cost == "l1" ? 1 : 0;
  params.extend = a.extend ? 1 : 0;
  params.rank = a.rank;

  std::vector<double> restored(n * n);
  qwp_denoise_report report{};
  check_status(qwp_denoise(noisy.px.data(), n, &params, ref_px.empty() ? nullptr : ref_px.data(),
                           restored.data(), &report));

  Image out_img;
  out_img.width = out_img.height = n;
  out_img.px = restored;
  write_pgm(a.out, out_img);

  json rep;
  rep["threshold_plus"] = report.threshold_plus;
  rep["threshold_minus"] = report.threshold_minus;
  if (!ref_px.empty()) rep["psnr_vs_ref"] = report.psnr_vs_ref;
  rep["basis_plus"] = report.basis_plus ? report.basis_plus : "";
  rep["basis_minus"] = report.basis_minus ? report.basis_minus : "";
  const std::string report_path = a.out + ".report.json";
  {
    std::ofstream out(report_path);
    if (!out) die(3, "cannot write: " + report_path);
    out << rep.dump(2) << "\n";
  }

  std::cout << value6 << "threshold_plus = " << report.threshold_plus << "\n";
  if (!a.tensor) std::cout << value6 << "threshold_minus = " << report.threshold_minus << "\n";
  if (!ref_px.empty()) std::cout << value6 << "psnr_vs_ref = " << report.psnr_vs_ref << "\n";
  qwp_string_free(report.basis_plus);
  qwp_string_free(report.basis_minus);

  Manifest manifest;
  manifest.command = "denoise";
  manifest.config = {{"order", a.order}, {"levels", a.levels}, {"cost", a.cost},
                     {"rank_L", a.rank}, {"tensor", a.tensor},  {"extend", a.extend}};
  manifest.inputs = {a.input};
  if (!a.ref.empty()) manifest.inputs.push_back(a.ref);
  manifest.outputs = {a.out, report_path};
  manifest.write(a.out);
  return 0;
}

struct InpaintArgs {
  std::string input;
  std::string mask;
  std::string kernel;
  std::string ref;
  std::string out;
  int order = 8;
  int levels = 3;
  double lambda = 1.0;
  double mu = 0.01;
  int sbi_iters = 50;
  int cg_iters = 30;
  bool extend = false;
};

int run_inpaint(const InpaintArgs& a) {
  const Image degraded = read_pgm(a.input);
  const std::uint64_t n = square_side(degraded, a.input);

  std::vector<std::uint8_t> mask;
  if (!a.mask.empty()) {
    const Image m = read_pgm(a.mask);
    if (m.width != degraded.width || m.height != degraded.height)
      die(2, "mask size mismatch");
    mask.resize(m.px.size());
    for (std::size_t i = 0; i < m.px.size(); ++i) mask[i] = m.px[i] > 0.0 ? 1 : 0;
  }

  std::vector<double> taps;
  int kh = 0, kw = 0;
  if (!a.kernel.empty()) taps = read_kernel_txt(a.kernel, kh, kw);

  std::vector<double> ref_px;
  if (!a.ref.empty()) {
    const Image ref = read_pgm(a.ref);
    if (ref.width != degraded.width || ref.height != degraded.height)
      die(2, "reference image size mismatch");
    ref_px = ref.px;
  }

  qwp_sbi_params params{};
  params.order = a.order;
  params.levels = a.levels;
  params.lambda = a.lambda;
  params.mu = a.mu;
  params.outer_iters = a.sbi_iters;
  params.cg_iters = a.cg_iters;
  params.cg_tol = 0.0;
  params.extend = a.extend ? 1 : 0;

  std::vector<double> restored(n * n);
  std::vector<double> trace(static_cast<std::size_t>(a.sbi_iters) * 3);
  check_status(qwp_sbi_restore(degraded.px.data(), n, mask.empty() ? nullptr : mask.data(),
                               taps.empty() ? nullptr : taps.data(), kh, kw, &params,
                               ref_px.empty() ? nullptr : ref_px.data(), restored.data(),
                               trace.data()));

  Image out_img;
  out_img.width = out_img.height = n;
  out_img.px = restored;
  write_pgm(a.out, out_img);

  const std::string trace_path = a.out + ".trace.csv";
  {
    std::ofstream out(trace_path);
    if (!out) die(3, "cannot write: " + trace_path);
    out << "iteration,objective,cg_rel_residual,psnr\n";
    out << std::setprecision(6);
    for (int i = 0; i < a.sbi_iters; ++i)
      out << (i + 1) << "," << trace[3 * i] << "," << trace[3 * i + 1] << ","
          << trace[3 * i + 2] << "\n";
  }

  if (!ref_px.empty())
    std::cout << value6 << "psnr_vs_ref = " << trace[3 * (a.sbi_iters - 1) + 2] << "\n";
  std::cout << value6 << "final_objective = " << trace[3 * (a.sbi_iters - 1)] << "\n";

  Manifest manifest;
  manifest.command = "inpaint";
  manifest.config = {{"order", a.order},       {"levels", a.levels}, {"lambda", a.lambda},
                     {"mu", a.mu},             {"sbi_iters", a.sbi_iters},
                     {"cg_iters", a.cg_iters}, {"extend", a.extend}};
  manifest.inputs = {a.input};
  if (!a.mask.empty()) manifest.inputs.push_back(a.mask);
  if (!a.kernel.empty()) manifest.inputs.push_back(a.kernel);
  if (!a.ref.empty()) manifest.inputs.push_back(a.ref);
  manifest.outputs = {a.out, trace_path};
  manifest.write(a.out);
  return 0;
}

struct DegradeArgs {
  std::string input;
  std::string out;
  std::string mask_out;
  std::string kernel;
  double noise_std = 0.0;
  double mask_frac = 0.0;
  std::uint64_t seed = 0;
};

int run_degrade(const DegradeArgs& a) {
  const Image src = read_pgm(a.input);
  const std::uint64_t n = square_side(src, a.input);
  std::vector<double> px = src.px;

  if (!a.kernel.empty()) {
    int kh = 0, kw = 0;
    const std::vector<double> taps = read_kernel_txt(a.kernel, kh, kw);
    std::vector<double> blurred(px.size());
    check_status(qwp_convolve(px.data(), n, taps.data(), kh, kw, 0, blurred.data()));
    px = std::move(blurred);
  }

  std::mt19937_64 rng(a.seed);
  std::vector<std::uint8_t> mask(px.size(), 1);
  if (a.mask_frac > 0.0) {
    if (a.mask_frac >= 1.0) die(2, "--mask-frac must be in [0, 1)");
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = uni(rng) < a.mask_frac ? 0 : 1;
    for (std::size_t i = 0; i < px.size(); ++i)
      if (mask[i] == 0) px[i] = 0.0;
  }
  if (a.noise_std > 0.0) {
    for (std::size_t i = 0; i < px.size(); ++i)
      if (mask[i] != 0) px[i] += a.noise_std * gaussian(rng);
  }

  Image out_img;
  out_img.width = out_img.height = n;
  out_img.px = std::move(px);
  write_pgm(a.out, out_img);

  Manifest manifest;
  manifest.command = "degrade";
  manifest.seed = a.seed;
  manifest.config = {{"noise_std", a.noise_std}, {"mask_frac", a.mask_frac},
                     {"kernel", a.kernel}};
  manifest.inputs = {a.input};
  manifest.outputs = {a.out};

  if (!a.mask_out.empty()) {
    Image m;
    m.width = m.height = n;
    m.px.resize(mask.size());
    for (std::size_t i = 0; i < mask.size(); ++i) m.px[i] = mask[i] ? 255.0 : 0.0;
    write_pgm(a.mask_out, m);
    manifest.outputs.push_back(a.mask_out);
  }
  manifest.write(a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"periodic spline wavelet packet toolbox"};
  app.require_subcommand(1);

  TransformArgs targs;
  auto* transform = app.add_subcommand("transform", "decompose a signal or image");
  transform->add_option("input", targs.input, "PGM image or text signal")->required();
  transform->add_option("--order", targs.order, "spline order 2r (even, 2..12)");
  transform->add_option("--levels", targs.levels, "decomposition depth");
  transform->add_flag("--tensor", targs.tensor, "tensor packets instead of the dual tree");
  transform->add_flag("--extend", targs.extend, "symmetric extension before transforming");
  transform->add_option("--seed", targs.seed, "seed recorded in the manifest");
  transform->add_option("--out", targs.out, "forest container path")->required();

  ReconstructArgs rargs;
  auto* reconstruct = app.add_subcommand("reconstruct", "invert a forest container");
  reconstruct->add_option("input", rargs.input, "forest container")->required();
  reconstruct->add_option("--out", rargs.out, "output (.pgm, .f64 or text)")->required();

  PsnrArgs pargs;
  auto* psnr_cmd = app.add_subcommand("psnr", "peak signal-to-noise ratio of two inputs");
  psnr_cmd->add_option("a", pargs.a, "first input")->required();
  psnr_cmd->add_option("b", pargs.b, "second input")->required();
  psnr_cmd->add_option("--out", pargs.out, "optional file for the value");

  AtlasArgs aargs;
  auto* atlas = app.add_subcommand("atlas", "render directional atoms and the census");
  atlas->add_option("--order", aargs.order, "spline order 2r");
  atlas->add_option("--levels", aargs.levels, "atom level m");
  atlas->add_option("--size", aargs.size, "raster side length");
  atlas->add_option("--out", aargs.out_dir, "output directory")->required();

  DenoiseArgs dargs;
  auto* denoise = app.add_subcommand("denoise", "best-basis rank-threshold denoising");
  denoise->add_option("input", dargs.input, "noisy PGM image")->required();
  denoise->add_option("--order", dargs.order, "spline order 2r");
  denoise->add_option("--levels", dargs.levels, "decomposition depth");
  denoise->add_option("--cost", dargs.cost, "basis cost")->check(CLI::IsMember({"entropy", "l1"}));
  denoise->add_option("--rank-L", dargs.rank, "rank L of the threshold")->required();
  denoise->add_flag("--tensor", dargs.tensor, "tensor packets instead of the dual tree");
  denoise->add_flag("--extend", dargs.extend, "symmetric extension");
  denoise->add_option("--ref", dargs.ref, "clean reference for PSNR reporting");
  denoise->add_option("--out", dargs.out, "restored image path")->required();

  InpaintArgs iargs;
  auto* inpaint = app.add_subcommand("inpaint", "split Bregman restoration");
  inpaint->add_option("input", iargs.input, "degraded PGM image")->required();
  inpaint->add_option("--mask", iargs.mask, "observed-pixel mask PGM (0 = missing)");
  inpaint->add_option("--kernel", iargs.kernel, "blur kernel text file");
  inpaint->add_option("--order", iargs.order, "spline order 2r");
  inpaint->add_option("--levels", iargs.levels, "decomposition depth");
  inpaint->add_option("--lambda", iargs.lambda, "sparsity weight");
  inpaint->add_option("--mu", iargs.mu, "coupling weight");
  inpaint->add_option("--sbi-iters", iargs.sbi_iters, "outer iterations");
  inpaint->add_option("--cg-iters", iargs.cg_iters, "inner CG iterations");
  inpaint->add_flag("--extend", iargs.extend, "symmetric extension");
  inpaint->add_option("--ref", iargs.ref, "clean reference for the PSNR trace");
  inpaint->add_option("--out", iargs.out, "restored image path")->required();

  DegradeArgs gargs;
  auto* degrade = app.add_subcommand("degrade", "blur, mask and add noise (seeded)");
  degrade->add_option("input", gargs.input, "clean PGM image")->required();
  degrade->add_option("--kernel", gargs.kernel, "blur kernel text file");
  degrade->add_option("--noise-std", gargs.noise_std, "gaussian noise sigma");
  degrade->add_option("--mask-frac", gargs.mask_frac, "fraction of pixels to drop");
  degrade->add_option("--seed", gargs.seed, "random seed");
  degrade->add_option("--mask-out", gargs.mask_out, "write the generated mask here");
  degrade->add_option("--out", gargs.out, "degraded image path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*transform) return run_transform(targs);
    if (*reconstruct) return run_reconstruct(rargs);
    if (*psnr_cmd) return run_psnr(pargs);
    if (*atlas) return run_atlas(aargs);
    if (*denoise) return run_denoise(dargs);
    if (*inpaint) return run_inpaint(iargs);
    if (*degrade) return run_degrade(gargs);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.msg << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
