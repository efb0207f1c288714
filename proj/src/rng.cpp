#include "htprox/rng.hpp"

#include <cmath>

#include "htprox/vec.hpp"

namespace htprox {
namespace {

std::uint64_t splitmix64(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  // double splitmix pass keyed by both inputs; mt19937_64 seeding is fully
  // specified by the standard, so reruns are bit-identical everywhere
  std::uint64_t s = seed;
  std::uint64_t key = splitmix64(s);
  s += 0xA24BAED4963EE407ull * (stream_id + 1);
  key ^= splitmix64(s);
  key ^= splitmix64(s);
  gen_.seed(key);
}

std::uint64_t RngStream::next_u64() { return gen_(); }

double RngStream::uniform01() {
  // 53 mantissa bits centered on the open interval
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double r = std::sqrt(-2.0 * std::log(uniform01()));
  double a = 2.0 * kPi * uniform01();
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

}  // namespace htprox
