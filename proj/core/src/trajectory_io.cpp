#include "zopt/trajectory_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>

#include "zopt/errors.hpp"

namespace zopt {

namespace {

static_assert(std::endian::native == std::endian::little,
              "trajectory format assumes a little-endian host");

constexpr std::array<char, 8> kMagic{'Z', 'O', 'P', 'T', 'T', 'R', 'J', '1'};

template <class T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw ConfigError("trajectory: truncated file");
  return v;
}

void put_doubles(std::ostream& out, const double* data, std::size_t count) {
  put<std::uint64_t>(out, count);
  out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(count * sizeof(double)));
}

void get_doubles(std::istream& in, double* data, std::size_t count) {
  in.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(count * sizeof(double)));
  if (!in) throw ConfigError("trajectory: truncated file");
}

std::vector<double> get_vector(std::istream& in) {
  const auto count = get<std::uint64_t>(in);
  std::vector<double> v(count);
  get_doubles(in, v.data(), count);
  return v;
}

Vector get_eigen(std::istream& in) {
  const auto count = get<std::uint64_t>(in);
  Vector v(static_cast<Eigen::Index>(count));
  get_doubles(in, v.data(), count);
  return v;
}

}  // namespace

void write_trajectory(std::ostream& out, const RunRecord& r) {
  out.write(kMagic.data(), kMagic.size());
  put<std::uint64_t>(out, r.seed);
  put<double>(out, r.mu);
  put<double>(out, r.step_size);
  put<std::uint64_t>(out, r.num_iters);
  put<std::uint64_t>(out, r.record_stride);
  put<std::uint8_t>(out, r.constrained ? 1 : 0);
  put<std::uint8_t>(out, static_cast<std::uint8_t>(r.status));
  put<std::uint64_t>(out, r.iterations_completed);
  put<std::uint64_t>(out, r.function_eval_count);
  put_doubles(out, r.values.data(), r.values.size());
  put_doubles(out, r.best_value_so_far.data(), r.best_value_so_far.size());
  put<std::uint64_t>(out, r.iterates.size());
  for (const auto& s : r.iterates) {
    put<std::uint64_t>(out, s.k);
    put<double>(out, s.value);
    put_doubles(out, s.x.data(), static_cast<std::size_t>(s.x.size()));
  }
  put_doubles(out, r.final_point.data(), static_cast<std::size_t>(r.final_point.size()));
  put<std::uint64_t>(out, r.diagnostic.size());
  out.write(r.diagnostic.data(), static_cast<std::streamsize>(r.diagnostic.size()));
}

RunRecord read_trajectory(std::istream& in) {
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw ConfigError("trajectory: bad magic");
  RunRecord r;
  r.seed = get<std::uint64_t>(in);
  r.mu = get<double>(in);
  r.step_size = get<double>(in);
  r.num_iters = get<std::uint64_t>(in);
  r.record_stride = get<std::uint64_t>(in);
  r.constrained = get<std::uint8_t>(in) != 0;
  const auto status = get<std::uint8_t>(in);
  if (status > static_cast<std::uint8_t>(RunStatus::non_finite)) {
    throw ConfigError("trajectory: bad status byte");
  }
  r.status = static_cast<RunStatus>(status);
  r.iterations_completed = get<std::uint64_t>(in);
  r.function_eval_count = get<std::uint64_t>(in);
  r.values = get_vector(in);
  r.best_value_so_far = get_vector(in);
  const auto count = get<std::uint64_t>(in);
  r.iterates.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    IterateSample s;
    s.k = get<std::uint64_t>(in);
    s.value = get<double>(in);
    s.x = get_eigen(in);
    r.iterates.push_back(std::move(s));
  }
  r.final_point = get_eigen(in);
  const auto len = get<std::uint64_t>(in);
  r.diagnostic.resize(len);
  in.read(r.diagnostic.data(), static_cast<std::streamsize>(len));
  if (!in) throw ConfigError("trajectory: truncated file");
  return r;
}

}  // namespace zopt
