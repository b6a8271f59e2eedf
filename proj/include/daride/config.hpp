#pragma once

#include <cstdint>

namespace daride {

// Tunable constants for the randomized tour constructions and the solvers.
// The defaults are configuration, not claims; the acceptance suite records
// the empirically achieved values.
struct SolveConfig {
    std::uint64_t seed = 1;
    long long c1 = 64;       // length gate: d(tau) <= c1 * log2^2(n+2) * LB
    long long c2 = 32;       // delay gate: sum T_i <= c2 * log2(n+2) * sum d(s_i,t_i)
    long long c3 = 16;       // minor-free delay: T_i <= c3 * d(s_i,t_i)
    int max_retries = 50;    // re-embeddings before giving up
    long long c_rho = 4;     // rho = c_rho * ceil(log2(n+2)) * ceil(log2(m+2))
    int minor_r = 5;         // default excluded-minor parameter
};

}  // namespace daride
