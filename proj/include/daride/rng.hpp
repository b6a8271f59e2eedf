#pragma once

#include <cstdint>
#include <vector>

namespace daride {

// Deterministic splitmix64 stream. We avoid std::uniform_int_distribution on
// purpose: its output is implementation-defined, and every generated instance
// and embedding must be reproducible bit-for-bit from the seed alone.
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : state_(mix(seed ^ mix(stream * 0x9E3779B97F4A7C15ULL + 1))) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n), n > 0. Rejection sampling keeps it unbiased.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t limit = ~0ULL - (~0ULL % n);
        std::uint64_t v;
        do { v = next(); } while (v >= limit);
        return v % n;
    }

    long long range(long long lo, long long hi) {  // inclusive bounds
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 33)) * 0xFF51AFD7ED558CCDULL;
        z = (z ^ (z >> 33)) * 0xC4CEB9FE1A85EC53ULL;
        return z ^ (z >> 33);
    }

    std::uint64_t state_;
};

}  // namespace daride
