#pragma once

#include <cstdint>
#include <limits>

namespace zopt {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z) noexcept;

/// Counter-addressed random stream.
///
/// A stream is identified by (seed, stream_id). Two StreamRng objects built
/// from the same pair produce the same sequence, independent of how many
/// other streams were consumed before. Solvers use the iteration index as the
/// stream id, so iteration k always sees the same direction for a given seed.
///
/// Gaussian variates come from a Box-Muller transform written here rather
/// than std::normal_distribution, whose output is implementation-defined;
/// stored regression CSVs depend on the exact bit pattern.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  StreamRng(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform on the open interval (0, 1).
  double uniform() noexcept;

  /// Standard normal.
  double normal() noexcept;

 private:
  std::uint64_t state_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace zopt
