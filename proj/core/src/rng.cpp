#include "zopt/rng.hpp"

#include <cmath>
#include <numbers>

namespace zopt {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

StreamRng::StreamRng(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : state_(mix64(seed + kGamma) ^ mix64(mix64(stream_id) + 0x632BE59BD9B4E019ULL)) {}

StreamRng::result_type StreamRng::operator()() noexcept {
  state_ += kGamma;
  return mix64(state_);
}

double StreamRng::uniform() noexcept {
  // 53 random mantissa bits, shifted by half an ulp so 0 is excluded.
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double StreamRng::normal() noexcept {
  if (has_cached_) {
    has_cached_ = false;
    return cached_normal_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  cached_normal_ = r * std::sin(theta);
  has_cached_ = true;
  return r * std::cos(theta);
}

}  // namespace zopt
