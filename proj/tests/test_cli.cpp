// End-to-end checks of the command line tool; QWP_CLI_PATH comes from CMake.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

const std::string cli = QWP_CLI_PATH;
const std::string dir = "/tmp/qwp_cli_test";

int run(const std::string& args) {
  const std::string cmd = cli + " " + args + " > " + dir + "/stdout.txt 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string last_stdout() {
  std::ifstream in(dir + "/stdout.txt");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_test_pgm(const std::string& path, std::size_t n) {
  std::ofstream out(path, std::ios::binary);
  out << "P5\n" << n << " " << n << "\n255\n";
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const double v =
          128.0 + 90.0 * std::sin(2.0 * M_PI * (2.0 * double(c) + 5.0 * double(r)) / double(n));
      out.put(static_cast<char>(static_cast<unsigned char>(std::lround(v))));
    }
}

bool file_exists(const std::string& path) { return std::ifstream(path).good(); }

}  // namespace

TEST_CASE("setup scratch directory") {
  CHECK(std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str()) == 0);
  write_test_pgm(dir + "/img.pgm", 64);
  CHECK(file_exists(dir + "/img.pgm"));
}

TEST_CASE("bad invocations exit with the validation code") {
  CHECK(run("") == 2);
  CHECK(run("transform") == 2);                                       // missing args
  CHECK(run("transform missing.pgm --out " + dir + "/x") == 3);      // missing input
  CHECK(run("transform " + dir + "/img.pgm --order 7 --out " + dir + "/x") == 2);
}

TEST_CASE("transform writes a forest a summary and a manifest") {
  CHECK(run("transform " + dir + "/img.pgm --order 8 --levels 2 --out " + dir + "/img.forest") ==
        0);
  CHECK(file_exists(dir + "/img.forest"));
  CHECK(file_exists(dir + "/img.forest.manifest.json"));
  const std::string out = last_stdout();
  CHECK(out.find("band energies") != std::string::npos);

  std::ifstream mf(dir + "/img.forest.manifest.json");
  std::stringstream ss;
  ss << mf.rdbuf();
  CHECK(ss.str().find("\"command\": \"transform\"") != std::string::npos);
  CHECK(ss.str().find("\"library_version\"") != std::string::npos);
  CHECK(ss.str().find("\"seed\"") != std::string::npos);
}

TEST_CASE("reconstruct then psnr reports the cap") {
  CHECK(run("reconstruct " + dir + "/img.forest --out " + dir + "/rec.pgm") == 0);
  CHECK(run("psnr " + dir + "/img.pgm " + dir + "/rec.pgm") == 0);
  CHECK(last_stdout().find("psnr_db = 400") != std::string::npos);
}

TEST_CASE("float output preserves the transform exactly") {
  CHECK(run("reconstruct " + dir + "/img.forest --out " + dir + "/rec.f64") == 0);
  std::ifstream in(dir + "/rec.f64", std::ios::binary | std::ios::ate);
  CHECK(in.tellg() == std::streamoff(64 * 64 * 8));
}

TEST_CASE("atlas renders atoms and the census") {
  CHECK(run("atlas --order 8 --levels 2 --size 64 --out " + dir + "/atlas") == 0);
  CHECK(file_exists(dir + "/atlas/m2_j0_l0_plus_vartheta.pgm"));
  CHECK(file_exists(dir + "/atlas/m2_j3_l3_minus_theta.f64"));
  CHECK(file_exists(dir + "/atlas/m2_j1_l2_plus_spec.pgm"));
  CHECK(file_exists(dir + "/atlas/census_m2.txt"));
  std::ifstream census(dir + "/atlas/census_m2.txt");
  std::string line;
  std::getline(census, line);
  CHECK(line.find("distinct_orientations 14") != std::string::npos);
}

TEST_CASE("degrade is deterministic for a fixed seed") {
  const std::string base = "degrade " + dir + "/img.pgm --noise-std 20 --mask-frac 0.3 --seed 9";
  CHECK(run(base + " --out " + dir + "/deg1.pgm --mask-out " + dir + "/mask.pgm") == 0);
  CHECK(run(base + " --out " + dir + "/deg2.pgm") == 0);
  std::ifstream a(dir + "/deg1.pgm", std::ios::binary), b(dir + "/deg2.pgm", std::ios::binary);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
  CHECK(sa.str().size() > 0);
}

TEST_CASE("denoise runs and writes a report") {
  CHECK(run("denoise " + dir + "/deg1.pgm --order 8 --levels 3 --cost entropy --rank-L 3500 "
            "--ref " + dir + "/img.pgm --out " + dir + "/den.pgm") == 0);
  CHECK(file_exists(dir + "/den.pgm"));
  CHECK(file_exists(dir + "/den.pgm.report.json"));
  CHECK(last_stdout().find("psnr_vs_ref") != std::string::npos);
}

TEST_CASE("inpaint improves the masked image") {
  CHECK(run("inpaint " + dir + "/deg1.pgm --mask " + dir + "/mask.pgm --lambda 2 --mu 0.05 "
            "--sbi-iters 8 --cg-iters 10 --ref " + dir + "/img.pgm --out " + dir +
            "/inp.pgm") == 0);
  CHECK(file_exists(dir + "/inp.pgm"));
  CHECK(file_exists(dir + "/inp.pgm.trace.csv"));
  std::ifstream trace(dir + "/inp.pgm.trace.csv");
  std::string header;
  std::getline(trace, header);
  CHECK(header == "iteration,objective,cg_rel_residual,psnr");
  int rows = 0;
  std::string line;
  while (std::getline(trace, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 8);
}

TEST_CASE("values print with six significant digits") {
  write_test_pgm(dir + "/a.pgm", 16);
  std::ofstream out(dir + "/b.pgm", std::ios::binary);
  out << "P5\n16 16\n255\n";
  for (int i = 0; i < 256; ++i) out.put(static_cast<char>(i % 251));
  out.close();
  CHECK(run("psnr " + dir + "/a.pgm " + dir + "/b.pgm") == 0);
  const std::string text = last_stdout();
  // a finite psnr prints like 7.92815, six significant digits
  const auto pos = text.find("psnr_db = ");
  REQUIRE(pos != std::string::npos);
  std::string value = text.substr(pos + 10);
  value = value.substr(0, value.find('\n'));
  int digits = 0;
  for (char ch : value)
    if (ch >= '0' && ch <= '9') ++digits;
  CHECK(digits == 6);
}
