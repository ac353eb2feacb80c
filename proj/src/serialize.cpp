#include "qwp/serialize.hpp"

#include <cstdio>
#include <cstring>
#include <memory>

namespace qwp {

namespace {

constexpr char kMagic[8] = {'Q', 'W', 'P', 'F', 'O', 'R', 'S', 'T'};
constexpr std::uint32_t kVersion = 1;

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

// Fields are written in declaration order as little-endian scalars; doubles
// follow IEEE-754 binary64.  Big-endian hosts are not supported.
struct Header {
  std::uint32_t version = kVersion;
  std::uint8_t kind = 0;
  std::uint8_t ordering = 0;  // 0 = frequency (Gray-code) band order
  std::uint8_t extended = 0;
  std::uint8_t reserved = 0;
  std::uint64_t n = 0;
  std::uint64_t orig_n = 0;
  std::uint32_t order = 0;
  std::uint32_t levels = 0;
};

void write_bytes(std::FILE* f, const void* data, std::size_t bytes) {
  if (std::fwrite(data, 1, bytes, f) != bytes)
    fail(Status::io_error, "forest container: short write");
}

void read_bytes(std::FILE* f, void* data, std::size_t bytes) {
  if (std::fread(data, 1, bytes, f) != bytes)
    fail(Status::io_error, "forest container: short read");
}

template <class T>
void write_scalar(std::FILE* f, T value) {
  write_bytes(f, &value, sizeof(T));
}

template <class T>
T read_scalar(std::FILE* f) {
  T value{};
  read_bytes(f, &value, sizeof(T));
  return value;
}

void write_header(std::FILE* f, const Header& h) {
  write_bytes(f, kMagic, sizeof(kMagic));
  write_scalar(f, h.version);
  write_scalar(f, h.kind);
  write_scalar(f, h.ordering);
  write_scalar(f, h.extended);
  write_scalar(f, h.reserved);
  write_scalar(f, h.n);
  write_scalar(f, h.orig_n);
  write_scalar(f, h.order);
  write_scalar(f, h.levels);
}

Header read_header(std::FILE* f) {
  char magic[8];
  read_bytes(f, magic, sizeof(magic));
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    fail(Status::io_error, "not a forest container (bad magic)");
  Header h;
  h.version = read_scalar<std::uint32_t>(f);
  if (h.version != kVersion) fail(Status::io_error, "unsupported forest container version");
  h.kind = read_scalar<std::uint8_t>(f);
  h.ordering = read_scalar<std::uint8_t>(f);
  h.extended = read_scalar<std::uint8_t>(f);
  h.reserved = read_scalar<std::uint8_t>(f);
  h.n = read_scalar<std::uint64_t>(f);
  h.orig_n = read_scalar<std::uint64_t>(f);
  h.order = read_scalar<std::uint32_t>(f);
  h.levels = read_scalar<std::uint32_t>(f);
  if (h.ordering != 0) fail(Status::io_error, "unknown band ordering tag");
  if (!is_pow2(h.n) || h.levels == 0) fail(Status::io_error, "corrupt forest header");
  return h;
}

void write_rvec(std::FILE* f, const rvec& v) {
  write_bytes(f, v.data(), v.size() * sizeof(double));
}

void read_rvec(std::FILE* f, rvec& v, std::size_t count) {
  v.resize(count);
  read_bytes(f, v.data(), count * sizeof(double));
}

void write_cvec(std::FILE* f, const cvec& v) {
  // std::complex<double> is layout-compatible with double[2] {re, im}
  write_bytes(f, v.data(), v.size() * 2 * sizeof(double));
}

void read_cvec(std::FILE* f, cvec& v, std::size_t count) {
  v.resize(count);
  read_bytes(f, v.data(), count * 2 * sizeof(double));
}

}  // namespace

ForestKind forest_kind(const ForestVariant& forest) {
  return static_cast<ForestKind>(forest.index());
}

void save_forest(const std::string& path, const ForestVariant& forest) {
  FilePtr f(std::fopen(path.c_str(), "wb"));
  if (!f) fail(Status::io_error, "cannot open for writing: " + path);

  Header h;
  h.kind = static_cast<std::uint8_t>(forest.index());

  if (const auto* wp = std::get_if<Wp1dForest>(&forest)) {
    h.n = h.orig_n = wp->n;
    h.order = wp->params.order;
    h.levels = wp->params.levels;
    write_header(f.get(), h);
    for (const auto& level : wp->levels)
      for (const rvec& band : level) write_rvec(f.get(), band);
  } else if (const auto* qp = std::get_if<Qwp1dForest>(&forest)) {
    h.n = h.orig_n = qp->n;
    h.order = qp->params.order;
    h.levels = qp->params.levels;
    write_header(f.get(), h);
    for (int tree = 0; tree < 2; ++tree)
      for (const auto& level : qp->trees[tree])
        for (const cvec& band : level) write_cvec(f.get(), band);
  } else if (const auto* wp2 = std::get_if<Wp2dForest>(&forest)) {
    h.n = h.orig_n = wp2->n;
    h.order = wp2->params.order;
    h.levels = wp2->params.levels;
    write_header(f.get(), h);
    for (const auto& level : wp2->levels)
      for (const rmat& band : level) write_bytes(f.get(), band.data(), band.size() * sizeof(double));
  } else {
    const auto& dt = std::get<DualTreeForest2D>(forest);
    h.n = dt.n;
    h.orig_n = dt.orig_n;
    h.extended = dt.extended ? 1 : 0;
    h.order = dt.params.order;
    h.levels = dt.params.levels;
    write_header(f.get(), h);
    for (int tree = 0; tree < 2; ++tree)
      for (const auto& level : dt.trees[tree])
        for (const cmat& band : level)
          write_bytes(f.get(), band.data(), band.size() * 2 * sizeof(double));
  }
  if (std::fflush(f.get()) != 0) fail(Status::io_error, "flush failed: " + path);
}

ForestVariant load_forest(const std::string& path) {
  FilePtr f(std::fopen(path.c_str(), "rb"));
  if (!f) fail(Status::io_error, "cannot open: " + path);
  const Header h = read_header(f.get());

  WpParams params{h.order, h.levels};
  try {
    params.validate(h.n);
  } catch (const Error&) {
    fail(Status::io_error, "corrupt forest header (invalid parameters)");
  }
  switch (static_cast<ForestKind>(h.kind)) {
    case ForestKind::wp1d: {
      Wp1dForest forest;
      forest.n = h.n;
      forest.params = params;
      forest.levels.resize(h.levels);
      for (unsigned m = 1; m <= h.levels; ++m) {
        forest.levels[m - 1].resize(std::size_t(1) << m);
        for (auto& band : forest.levels[m - 1]) read_rvec(f.get(), band, h.n >> m);
      }
      return forest;
    }
    case ForestKind::qwp1d: {
      Qwp1dForest forest;
      forest.n = h.n;
      forest.params = params;
      for (int tree = 0; tree < 2; ++tree) {
        forest.trees[tree].resize(h.levels);
        for (unsigned m = 1; m <= h.levels; ++m) {
          forest.trees[tree][m - 1].resize(std::size_t(1) << m);
          for (auto& band : forest.trees[tree][m - 1]) read_cvec(f.get(), band, h.n >> m);
        }
      }
      return forest;
    }
    case ForestKind::wp2d: {
      Wp2dForest forest;
      forest.n = h.n;
      forest.params = params;
      forest.levels.resize(h.levels);
      for (unsigned m = 1; m <= h.levels; ++m) {
        const std::size_t side = std::size_t(1) << m;
        const std::size_t block = h.n >> m;
        forest.levels[m - 1].assign(side * side, rmat(block, block));
        for (auto& band : forest.levels[m - 1])
          read_bytes(f.get(), band.data(), band.size() * sizeof(double));
      }
      return forest;
    }
    case ForestKind::qwp2d: {
      DualTreeForest2D forest;
      forest.n = h.n;
      forest.orig_n = h.orig_n;
      forest.extended = h.extended != 0;
      forest.params = params;
      for (int tree = 0; tree < 2; ++tree) {
        forest.trees[tree].resize(h.levels);
        for (unsigned m = 1; m <= h.levels; ++m) {
          const std::size_t side = std::size_t(1) << m;
          const std::size_t block = h.n >> m;
          forest.trees[tree][m - 1].assign(side * side, cmat(block, block));
          for (auto& band : forest.trees[tree][m - 1])
            read_bytes(f.get(), band.data(), band.size() * 2 * sizeof(double));
        }
      }
      return forest;
    }
    default:
      fail(Status::io_error, "unknown forest kind");
  }
}

}  // namespace qwp
