#pragma once

#include <cstdint>

namespace aco {

/// Identifies one independent random substream. Every ant at every
/// construction step of every iteration gets its own stream, so results do
/// not depend on the order in which ants are scheduled.
struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t iteration = 0;
  std::uint32_t ant = 0;
  std::uint32_t step = 0;
};

/// Step slot reserved for drawing an ant's start city.
inline constexpr std::uint32_t kStartStep = 0xFFFFFFFFu;

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

constexpr std::uint32_t fmix32(std::uint32_t h) noexcept {
  h ^= h >> 16;
  h *= 0x85EBCA6Bu;
  h ^= h >> 13;
  h *= 0xC2B2AE35u;
  h ^= h >> 16;
  return h;
}

}  // namespace detail

constexpr std::uint64_t derive_key(const StreamKey& k) noexcept {
  std::uint64_t h = detail::splitmix64(k.seed);
  h = detail::splitmix64(h ^ k.iteration);
  h = detail::splitmix64(h ^ ((static_cast<std::uint64_t>(k.ant) << 32) | k.step));
  return h;
}

/// Counter-based draw: the `counter`-th 32-bit value of the stream `key`.
/// Stateless, so a loop over counters vectorizes.
constexpr std::uint32_t draw_bits(std::uint64_t key, std::uint32_t counter) noexcept {
  const auto lo = static_cast<std::uint32_t>(key);
  const auto hi = static_cast<std::uint32_t>(key >> 32);
  std::uint32_t h = detail::fmix32(counter * 0x9E3779B9u + lo);
  return detail::fmix32(h ^ hi);
}

/// Maps 32 random bits onto the open interval (0, 1).
constexpr double to_open_unit(std::uint32_t bits) noexcept {
  return (static_cast<double>(bits) + 0.5) * 0x1p-32;
}

/// Sequential view over one substream.
class RandomStream {
 public:
  constexpr explicit RandomStream(const StreamKey& key) noexcept : key_(derive_key(key)) {}
  constexpr static RandomStream from_raw_key(std::uint64_t key) noexcept {
    RandomStream s;
    s.key_ = key;
    return s;
  }

  constexpr std::uint32_t next_bits() noexcept { return draw_bits(key_, counter_++); }
  constexpr double next_uniform() noexcept { return to_open_unit(next_bits()); }
  /// Uniform integer in [0, bound).
  constexpr std::uint32_t below(std::uint32_t bound) noexcept {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(next_bits()) * bound) >> 32);
  }

  constexpr std::uint64_t key() const noexcept { return key_; }
  constexpr std::uint32_t position() const noexcept { return counter_; }

 private:
  constexpr RandomStream() noexcept = default;

  std::uint64_t key_ = 0;
  std::uint32_t counter_ = 0;
};

}  // namespace aco
