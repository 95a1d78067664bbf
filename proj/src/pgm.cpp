#include "fracspec/pgm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

namespace fracspec {
namespace {

GridSpec image_spec(int height, int width) {
  try {
    return GridSpec({height, width});
  } catch (const PreconditionError&) {
    throw PreconditionError("image dimensions " + std::to_string(height) + "x" +
                            std::to_string(width) + " must be even and >= 4");
  }
}

// Skips whitespace and '#' comments between header tokens.
void skip_separators(std::istream& is) {
  while (true) {
    const int c = is.peek();
    if (c == '#') {
      std::string ignored;
      std::getline(is, ignored);
    } else if (c != EOF && std::isspace(c)) {
      is.get();
    } else {
      return;
    }
  }
}

int read_header_int(std::istream& is) {
  skip_separators(is);
  int value = -1;
  if (!(is >> value) || value < 0) {
    throw IoError("PGM: malformed header");
  }
  return value;
}

std::uint8_t to_byte(double v) {
  const double clamped = std::clamp(v, 0.0, 1.0);
  return static_cast<std::uint8_t>(std::lround(clamped * 255.0));
}

}  // namespace

Image::Image(int height, int width, std::vector<double> pixels)
    : spec_(image_spec(height, width)), pixels_(std::move(pixels)) {
  if (pixels_.size() != spec_.size()) {
    throw PreconditionError("image pixel count does not match dimensions");
  }
  for (double v : pixels_) {
    if (!std::isfinite(v)) {
      throw PreconditionError("image contains non-finite values");
    }
  }
}

Image Image::from_field(const GridField& field) {
  if (field.spec().dim() != 2) {
    throw PreconditionError("images are two-dimensional");
  }
  std::vector<double> px(field.spec().size());
  for (std::size_t i = 0; i < px.size(); ++i) {
    px[i] = field[i].real();
  }
  return Image(field.spec().extent(0), field.spec().extent(1), std::move(px));
}

GridField Image::to_field() const {
  return GridField(spec_, std::vector<Complex>(pixels_.begin(), pixels_.end()));
}

Image read_pgm(std::istream& is) {
  char magic[2] = {0, 0};
  if (!is.read(magic, 2) || magic[0] != 'P' || (magic[1] != '2' && magic[1] != '5')) {
    throw IoError("PGM: expected P2 or P5 magic");
  }
  const bool binary = magic[1] == '5';
  const int width = read_header_int(is);
  const int height = read_header_int(is);
  const int maxval = read_header_int(is);
  if (width == 0 || height == 0 || maxval == 0 || maxval > 65535) {
    throw IoError("PGM: unsupported dimensions or maxval");
  }
  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<double> px(count);
  if (binary) {
    if (maxval > 255) {
      throw IoError("PGM: only 8-bit P5 is supported");
    }
    is.get();  // single whitespace after maxval
    std::vector<unsigned char> raw(count);
    if (!is.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count))) {
      throw IoError("PGM: truncated pixel data");
    }
    for (std::size_t i = 0; i < count; ++i) {
      px[i] = raw[i] / static_cast<double>(maxval);
    }
  } else {
    for (auto& v : px) {
      const int raw = read_header_int(is);
      if (raw > maxval) {
        throw IoError("PGM: sample exceeds maxval");
      }
      v = raw / static_cast<double>(maxval);
    }
  }
  return Image(height, width, std::move(px));
}

Image read_pgm(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw IoError("cannot open " + path.string());
  }
  return read_pgm(is);
}

void write_pgm(std::ostream& os, const Image& image, PgmEncoding encoding) {
  const bool binary = encoding == PgmEncoding::Binary;
  os << (binary ? "P5" : "P2") << '\n' << image.width() << ' ' << image.height() << "\n255\n";
  if (binary) {
    std::vector<char> raw(image.pixels().size());
    std::transform(image.pixels().begin(), image.pixels().end(), raw.begin(),
                   [](double v) { return static_cast<char>(to_byte(v)); });
    os.write(raw.data(), static_cast<std::streamsize>(raw.size()));
  } else {
    for (int r = 0; r < image.height(); ++r) {
      for (int c = 0; c < image.width(); ++c) {
        os << static_cast<int>(to_byte(image(r, c))) << (c + 1 == image.width() ? '\n' : ' ');
      }
    }
  }
  if (!os) {
    throw IoError("PGM: write failed");
  }
}

void write_pgm(const std::filesystem::path& path, const Image& image, PgmEncoding encoding) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  write_pgm(os, image, encoding);
}

}  // namespace fracspec
