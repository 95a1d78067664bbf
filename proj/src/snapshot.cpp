#include "fracspec/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace fracspec {
namespace {

static_assert(sizeof(double) == 8);

void put_le(std::ostream& os, double x) {
  auto bits = std::bit_cast<std::uint64_t>(x);
  char bytes[8];
  for (int i = 0; i < 8; ++i) {
    bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
  }
  os.write(bytes, 8);
}

double get_le(std::istream& is) {
  unsigned char bytes[8];
  if (!is.read(reinterpret_cast<char*>(bytes), 8)) {
    throw IoError("FPFLD1: truncated payload");
  }
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) {
    bits = (bits << 8) | bytes[i];
  }
  return std::bit_cast<double>(bits);
}

void write_impl(std::ostream& os, const GridSpec& spec, std::span<const Complex> data,
                const char* repr) {
  os << "FPFLD1 " << spec.dim();
  for (int n : spec.extents()) {
    os << ' ' << n;
  }
  os << ' ' << repr << '\n';
  for (const auto& c : data) {
    put_le(os, c.real());
    put_le(os, c.imag());
  }
  if (!os) {
    throw IoError("FPFLD1: write failed");
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  return os;
}

}  // namespace

void write_snapshot(std::ostream& os, const GridField& field) {
  write_impl(os, field.spec(), field.values(), "grid");
}

void write_snapshot(std::ostream& os, const ModeField& field) {
  write_impl(os, field.spec(), field.coeffs(), "mode");
}

Snapshot read_snapshot(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) {
    throw IoError("FPFLD1: missing header");
  }
  std::istringstream hs(header);
  std::string magic;
  int dim = 0;
  hs >> magic >> dim;
  if (magic != "FPFLD1" || !hs || dim < 1 || dim > kMaxDim) {
    throw IoError("FPFLD1: bad header '" + header + "'");
  }
  std::vector<int> extents(static_cast<std::size_t>(dim));
  for (auto& n : extents) {
    hs >> n;
  }
  std::string repr;
  hs >> repr;
  std::string trailing;
  if (!hs || (repr != "grid" && repr != "mode") || (hs >> trailing)) {
    throw IoError("FPFLD1: bad header '" + header + "'");
  }
  GridSpec spec = [&] {
    try {
      return GridSpec(extents);
    } catch (const PreconditionError& e) {
      throw IoError(std::string("FPFLD1: ") + e.what());
    }
  }();
  std::vector<Complex> data(spec.size());
  for (auto& c : data) {
    const double re = get_le(is);
    const double im = get_le(is);
    c = Complex(re, im);
  }
  if (is.peek() != std::char_traits<char>::eof()) {
    throw IoError("FPFLD1: trailing bytes after payload");
  }
  if (repr == "grid") {
    return GridField(std::move(spec), std::move(data));
  }
  return ModeField(std::move(spec), std::move(data));
}

void write_snapshot(const std::filesystem::path& path, const GridField& field) {
  auto os = open_out(path);
  write_snapshot(os, field);
}

void write_snapshot(const std::filesystem::path& path, const ModeField& field) {
  auto os = open_out(path);
  write_snapshot(os, field);
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw IoError("cannot open " + path.string());
  }
  return read_snapshot(is);
}

}  // namespace fracspec
