#include "l2ext/rng.hpp"


namespace l2ext {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

} // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t shard) noexcept
    : seed_(seed), shard_(shard), key_(mix64(seed ^ mix64(shard + 0x632BE59BD9B4E019ULL))) {}

std::uint64_t RngStream::bits_at(std::uint64_t index) const noexcept {
  return mix64(key_ + (index + 1) * kGolden);
}

double RngStream::uniform_at(std::uint64_t index) const noexcept {
  return static_cast<double>(bits_at(index) >> 11) * 0x1.0p-53;
}

} // namespace l2ext
