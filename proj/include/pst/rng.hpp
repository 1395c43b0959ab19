#pragma once

#include <cstdint>
#include <random>

namespace pst {

/// Standard-normal draws that reproduce bit for bit on every platform.
///
/// Uniforms come from the top 53 bits of std::mt19937_64 (whose output
/// sequence the C++ standard fixes); normals use the Box-Muller transform.
/// std::normal_distribution is avoided because its algorithm is
/// implementation-defined.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace pst
