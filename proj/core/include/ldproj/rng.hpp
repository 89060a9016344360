#pragma once

// Counter-based random streams (Philox4x32-10).
//
// A stream is addressed by (seed, stream index); the block counter advances
// inside it. Identical addresses replay identical sequences on every platform,
// and distinct stream indices select disjoint counter spaces. Variate
// generators are implemented here rather than taken from <random> because the
// standard distributions are implementation-defined.

#include <array>
#include <cstdint>
#include <limits>

namespace ldproj {

class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform();
  /// Standard normal (Marsaglia polar method; the spare variate is kept in the stream state).
  double normal();
  /// Standard exponential.
  double exponential();
  /// Gamma(shape, scale 1). shape == 0 returns 0. Marsaglia-Tsang squeeze/rejection.
  double gamma(double shape);

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] std::uint64_t stream() const { return stream_; }
  /// 64-bit words consumed so far; rejection loops are reflected exactly.
  [[nodiscard]] std::uint64_t draws() const { return draws_; }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  std::uint64_t draws_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// The raw Philox4x32-10 bijection, exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

}  // namespace ldproj
