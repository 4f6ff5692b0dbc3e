#pragma once

#include <cstdint>

namespace fanova {

// Counter-based random stream (Philox4x64-10). The generator is a pure
// function of (seed, stream_id, substream, block counter), so a stream
// can be reconstructed anywhere: identical (seed, stream_id, substream)
// always yields the identical sequence, independent of thread schedule.
// Distinct stream or substream ids give statistically independent
// streams. Parallel loops construct one stream per work item.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t substream = 0)
        : key0_(seed), key1_(stream_id), ctr2_(substream) {}

    // Fresh stream with the same key but a different substream id.
    RngStream substream(std::uint64_t id) const { return RngStream(key0_, key1_, id); }

    std::uint64_t seed() const { return key0_; }
    std::uint64_t stream_id() const { return key1_; }

    std::uint64_t next_u64();

    // Uniform on (0, 1]; never returns 0, safe under log().
    double next_u01();

    // Uniform integer in [0, bound) by rejection; bound >= 1.
    std::uint64_t next_below(std::uint64_t bound);

    // Standard normal via Box-Muller (pairs cached).
    double next_normal();

    // Chi-square with 2m degrees of freedom: -2 log(prod of m uniforms).
    double next_chisq_even(int half_df);

private:
    void refill();

    std::uint64_t key0_, key1_;
    std::uint64_t ctr0_ = 0, ctr1_ = 0, ctr2_ = 0;
    std::uint64_t block_[4] = {0, 0, 0, 0};
    int avail_ = 0;
    double cached_normal_ = 0.0;
    bool have_cached_normal_ = false;
};

enum class Innovation { gauss, t4_scaled };

// One mean-zero unit-variance innovation: N(0,1), or Student t with 4
// degrees of freedom scaled by 1/sqrt(2) (exact sampling, t = Z/sqrt(V/4)
// with V ~ chi-square(4)).
double draw_innovation(Innovation dist, RngStream& rng);

} // namespace fanova
