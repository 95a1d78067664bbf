// Portable seeded random numbers.
//
// Raw bits come from std::mt19937_64, whose output sequence is fixed by the
// C++ standard. Uniform and Gaussian variates are derived here (53-bit
// mantissa mapping, Box-Muller) rather than through <random> distributions,
// whose algorithms are implementation-defined.
#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace fracspec {

class PortableRng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64+box-muller";

  explicit PortableRng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal.
  double gaussian();

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace fracspec
