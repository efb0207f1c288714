#pragma once

#include <cstdint>
#include <random>

namespace htprox {

// Deterministic substream generator. Equal (seed, stream_id) pairs reproduce the
// same sequence bit for bit on any platform; distinct stream_ids decorrelate.
// A stream must never be shared across threads.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();
  // strictly inside (0,1), so log(uniform01()) is always finite
  double uniform01();
  double normal();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// stream_id offsets for auxiliary consumers; chains use ids 0..chains-1
inline constexpr std::uint64_t kBootstrapStreamBase = (1ull << 32);
inline constexpr std::uint64_t kInitStreamBase = (1ull << 33);
inline constexpr std::uint64_t kMomentStreamBase = (1ull << 34);

}  // namespace htprox
