#pragma once

#include <cstdint>

namespace l2ext {

// Counter-based stream: the value at position i depends only on
// (seed, shard, i), so shards can be generated in any order on any platform.
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t shard) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t shard() const noexcept { return shard_; }
  std::uint64_t position() const noexcept { return counter_; }

  std::uint64_t bits_at(std::uint64_t index) const noexcept;
  // Uniform double in [0, 1) with 53 random bits.
  double uniform_at(std::uint64_t index) const noexcept;

  std::uint64_t next_bits() noexcept { return bits_at(counter_++); }
  double next_uniform() noexcept { return uniform_at(counter_++); }
  void seek(std::uint64_t index) noexcept { counter_ = index; }

private:
  std::uint64_t seed_;
  std::uint64_t shard_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

} // namespace l2ext
