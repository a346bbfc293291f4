// Deterministic random streams. Everything downstream of a seed must be
// reproducible across runs and thread counts, so distribution sampling is
// written out explicitly instead of relying on std::*_distribution (whose
// output sequences are implementation-defined).

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace secrecy {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// xoshiro256** seeded through splitmix64
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& s : s_) s = x = splitmix64(x);
    }

    // substream derivation, e.g. Rng(seed).fork(trial_index)
    Rng fork(std::uint64_t stream) const {
        return Rng(splitmix64(s_[0] ^ splitmix64(stream ^ 0xa5a5a5a5a5a5a5a5ULL)));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0,1)
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, n)
    std::uint64_t next_below(std::uint64_t n) {
        // n is tiny here; modulo bias is < n/2^64
        return next_u64() % n;
    }

    // flat Dirichlet over k cells: normalized unit exponentials
    std::vector<double> dirichlet_flat(std::size_t k) {
        std::vector<double> v(k);
        double total = 0.0;
        for (auto& e : v) {
            double u = next_unit();
            // keep the log argument away from 0
            e = -std::log1p(-(u * (1.0 - 1e-16)));
            total += e;
        }
        for (auto& e : v) e /= total;
        return v;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

}  // namespace secrecy
