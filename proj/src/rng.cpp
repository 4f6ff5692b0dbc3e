#include "fanova/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fanova {

namespace {

// Philox4x64 round constants (Salmon et al., SC'11).
constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline void mul_hilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

inline void philox_round(std::uint64_t c[4], std::uint64_t k0, std::uint64_t k1) {
    std::uint64_t hi0, lo0, hi1, lo1;
    mul_hilo(kMul0, c[0], hi0, lo0);
    mul_hilo(kMul1, c[2], hi1, lo1);
    const std::uint64_t n0 = hi1 ^ c[1] ^ k0;
    const std::uint64_t n1 = lo1;
    const std::uint64_t n2 = hi0 ^ c[3] ^ k1;
    const std::uint64_t n3 = lo0;
    c[0] = n0; c[1] = n1; c[2] = n2; c[3] = n3;
}

void philox4x64_10(const std::uint64_t ctr[4], std::uint64_t k0, std::uint64_t k1,
                   std::uint64_t out[4]) {
    out[0] = ctr[0]; out[1] = ctr[1]; out[2] = ctr[2]; out[3] = ctr[3];
    for (int r = 0; r < 9; ++r) {
        philox_round(out, k0, k1);
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    philox_round(out, k0, k1);
}

} // namespace

void RngStream::refill() {
    const std::uint64_t ctr[4] = {ctr0_, ctr1_, ctr2_, 0};
    philox4x64_10(ctr, key0_, key1_, block_);
    if (++ctr0_ == 0) ++ctr1_;
    avail_ = 4;
}

std::uint64_t RngStream::next_u64() {
    if (avail_ == 0) refill();
    return block_[4 - avail_--];
}

double RngStream::next_u01() {
    // 53 random bits, shifted into (0, 1]
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

std::uint64_t RngStream::next_below(std::uint64_t bound) {
    if (bound == 0) {
        throw std::invalid_argument("next_below: bound must be positive");
    }
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x > limit);
    return x % bound;
}

double RngStream::next_normal() {
    if (have_cached_normal_) {
        have_cached_normal_ = false;
        return cached_normal_;
    }
    const double u1 = next_u01();
    const double u2 = next_u01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    cached_normal_ = r * std::sin(a);
    have_cached_normal_ = true;
    return r * std::cos(a);
}

double RngStream::next_chisq_even(int half_df) {
    double prod = 1.0;
    for (int i = 0; i < half_df; ++i) {
        prod *= next_u01();
    }
    return -2.0 * std::log(prod);
}

double draw_innovation(Innovation dist, RngStream& rng) {
    if (dist == Innovation::gauss) {
        return rng.next_normal();
    }
    // t4 = Z / sqrt(V/4), V ~ chi-square(4); Var(t4) = 2, so scale by 1/sqrt(2)
    const double z = rng.next_normal();
    const double v = rng.next_chisq_even(2);
    return z / std::sqrt(v / 4.0) / std::numbers::sqrt2;
}

} // namespace fanova
