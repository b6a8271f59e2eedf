#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace daride {

// All times and distances are exact rationals; no floating-point tolerances
// anywhere in the model or the validator.
using Rat = boost::rational<long long>;

inline Rat rat(long long v) { return Rat(v); }
inline Rat rat(long long num, long long den) { return Rat(num, den); }

inline long long rat_floor(const Rat& x) {
    long long q = x.numerator() / x.denominator();
    if (x.numerator() % x.denominator() != 0 && x.numerator() < 0) --q;
    return q;
}

inline long long rat_ceil(const Rat& x) {
    long long q = x.numerator() / x.denominator();
    if (x.numerator() % x.denominator() != 0 && x.numerator() > 0) ++q;
    return q;
}

inline bool rat_is_int(const Rat& x) { return x.denominator() == 1; }

inline std::string rat_str(const Rat& x) {
    if (x.denominator() == 1) return std::to_string(x.numerator());
    return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

// Parses "p" or "p/q". Throws on malformed input.
inline Rat rat_parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(std::stoll(s));
        long long num = std::stoll(s.substr(0, slash));
        long long den = std::stoll(s.substr(slash + 1));
        return Rat(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational: " + s);
    }
}

inline double rat_double(const Rat& x) {
    return static_cast<double>(x.numerator()) / static_cast<double>(x.denominator());
}

// Smallest integer e with 2^e >= v (v >= 1).
inline int ceil_log2(long long v) {
    int e = 0;
    long long p = 1;
    while (p < v) { p <<= 1; ++e; }
    return e;
}

// 2^e as a rational, e may be negative.
inline Rat pow2(int e) {
    if (e >= 0) return Rat(1LL << e);
    return Rat(1, 1LL << (-e));
}

}  // namespace daride
