// Grayscale images and PGM (P2 ASCII / P5 binary) input and output.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "fracspec/grid.hpp"

namespace fracspec {

/// Real-valued image on the torus grid; pixel (row, col) sits on node
/// (row, col) of a height x width GridSpec. Nominal intensity range [0, 1].
class Image {
 public:
  Image(int height, int width, std::vector<double> pixels);
  static Image from_field(const GridField& field);

  int height() const { return spec_.extent(0); }
  int width() const { return spec_.extent(1); }
  const GridSpec& spec() const { return spec_; }
  std::span<const double> pixels() const { return pixels_; }
  double operator()(int row, int col) const {
    return pixels_[static_cast<std::size_t>(row) * static_cast<std::size_t>(width()) +
                   static_cast<std::size_t>(col)];
  }
  GridField to_field() const;

 private:
  GridSpec spec_;
  std::vector<double> pixels_;
};

enum class PgmEncoding { Binary, Ascii };

/// Intensities map linearly [0, maxval] -> [0, 1]. Odd dimensions are
/// rejected because the torus grid needs even extents.
Image read_pgm(std::istream& is);
Image read_pgm(const std::filesystem::path& path);

/// Values are clamped to [0, 1] and rounded to 8 bits.
void write_pgm(std::ostream& os, const Image& image, PgmEncoding encoding = PgmEncoding::Binary);
void write_pgm(const std::filesystem::path& path, const Image& image,
               PgmEncoding encoding = PgmEncoding::Binary);

}  // namespace fracspec
