#pragma once

#include <array>
#include <cstdint>

namespace cohmax {

// SplitMix64 step (Steele, Lea, Flood 2014). Used for seeding and for
// mixing stream identifiers.
std::uint64_t splitmix64(std::uint64_t& state);

// Reproducible random stream keyed by (seed, stream_id).
//
// Generator: xoshiro256** 1.0 (Blackman & Vigna). The 256-bit state is
// filled by four SplitMix64 outputs, starting from
//   seed ^ splitmix64-finaliser(stream_id + 0x9E3779B97F4A7C15).
// Uniform doubles take the top 53 bits; Gaussian variates use the
// Box-Muller transform and cache the second value of each pair.
// Identical (seed, stream_id) yield bit-identical sequences. The integer
// and uniform sequences are portable; Gaussian values additionally depend
// on the platform's log/sin/cos.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    std::uint64_t next_u64() noexcept;
    // [0, 1)
    double uniform() noexcept;
    // (0, 1]
    double uniform_open_low() noexcept;
    // Standard normal.
    double normal() noexcept;

    // Independent child stream; same (seed, stream_id, index) always gives
    // the same child.
    RngStream child(std::uint64_t index) const;

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::array<std::uint64_t, 4> s_{};
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace cohmax
