#pragma once

#include <optional>
#include <string>
#include <vector>

#include "daride/config.hpp"
#include "daride/instance.hpp"

namespace daride {

struct BenchRow {
    std::string instance_id;
    std::string algo;
    Rat makespan{0};
    Rat lb{0};
    std::optional<Rat> oracle;  // filled when the instance fits the oracle limits
    double runtime_ms = 0;

    double ratio() const;  // makespan / lb, -1 when lb == 0
};

// Runs every algorithm on every instance, validates each schedule (an
// infeasible output is a hard failure), and returns rows ordered by
// instance id then algorithm. Algorithms: uncap, uncap-mf, cap, weighted.
std::vector<BenchRow> bench(const std::vector<std::pair<std::string, Instance>>& instances,
                            const std::vector<std::string>& algos, const SolveConfig& cfg,
                            bool with_oracle);

// Tab-separated table, one row per BenchRow, deterministic ordering.
std::string bench_table(const std::vector<BenchRow>& rows);

}  // namespace daride
