#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace coexsim {

// Deterministic random stream. Wraps std::mt19937_64 (whose output sequence
// is fixed by the standard) and does all range/shape mapping itself, because
// std::uniform_*_distribution is implementation-defined and would break
// reproducibility across standard libraries.
class RandomStream {
 public:
  RandomStream() : RandomStream(1, 0) {}

  // One master seed fans out into independent per-purpose streams
  // (placement, channel fading, MAC) so that e.g. toggling fading does not
  // perturb placement draws.
  RandomStream(std::uint64_t master_seed, std::uint64_t stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                      static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t next_u64() { return engine_(); }

  // Unbiased integer in [0, n); rejection sampling.
  std::uint64_t next_below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Unit-mean exponential draw (block-fading power gain).
  double next_exp_unit() { return -std::log1p(-next_unit()); }

 private:
  std::mt19937_64 engine_;
};

// Stream ids used by the simulation engine.
inline constexpr std::uint64_t kStreamPlacement = 0x706c6163;  // "plac"
inline constexpr std::uint64_t kStreamChannel = 0x6368616e;    // "chan"
inline constexpr std::uint64_t kStreamMac = 0x6d616300;        // "mac"

}  // namespace coexsim
