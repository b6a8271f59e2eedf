#include "daride/bench.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <stdexcept>

#include "daride/errors.hpp"
#include "daride/multi_vehicle.hpp"
#include "daride/oracle.hpp"
#include "daride/validate.hpp"

namespace daride {

double BenchRow::ratio() const {
    if (lb == Rat(0)) return -1;
    return rat_double(makespan / lb);
}

std::vector<BenchRow> bench(const std::vector<std::pair<std::string, Instance>>& instances,
                            const std::vector<std::string>& algos, const SolveConfig& cfg,
                            bool with_oracle) {
    std::vector<BenchRow> rows;
    for (const auto& [id, inst] : instances) {
        std::optional<Rat> oracle_val;
        if (with_oracle) {
            try {
                oracle_val = oracle_makespan(inst).optimum;
            } catch (const SizeLimitError&) {
                oracle_val = std::nullopt;
            }
        }
        for (const auto& algo : algos) {
            BenchRow row;
            row.instance_id = id;
            row.algo = algo;
            row.oracle = oracle_val;
            auto start = std::chrono::steady_clock::now();
            Schedule sched;
            SolveTrace trace;
            if (algo == "uncap") {
                std::tie(sched, trace) = uncap_solve(inst, cfg);
            } else if (algo == "uncap-mf") {
                std::tie(sched, trace) = uncap_solve(inst, cfg, UncapCore::MinorFree);
            } else if (algo == "cap") {
                std::tie(sched, trace) = cap_solve(inst, cfg);
            } else if (algo == "weighted") {
                std::tie(sched, trace) = weighted_solve(inst, cfg);
            } else {
                throw std::invalid_argument("bench: unknown algorithm " + algo);
            }
            auto stop = std::chrono::steady_clock::now();
            row.runtime_ms =
                std::chrono::duration<double, std::milli>(stop - start).count();
            auto rep = validate(inst, sched);
            if (!rep.feasible)
                throw std::runtime_error("bench: infeasible schedule from " + algo + " on " +
                                         id);
            row.makespan = rep.makespan;
            row.lb = trace.lbs.combined;
            rows.push_back(std::move(row));
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
        if (a.instance_id != b.instance_id) return a.instance_id < b.instance_id;
        return a.algo < b.algo;
    });
    return rows;
}

std::string bench_table(const std::vector<BenchRow>& rows) {
    std::ostringstream os;
    os << "instance\talgo\tmakespan\tlb\tratio\toracle\truntime_ms\n";
    for (const auto& r : rows) {
        os << r.instance_id << "\t" << r.algo << "\t" << rat_str(r.makespan) << "\t"
           << rat_str(r.lb) << "\t";
        if (r.ratio() < 0)
            os << "-";
        else
            os << r.ratio();
        os << "\t" << (r.oracle ? rat_str(*r.oracle) : std::string("-")) << "\t"
           << static_cast<long long>(r.runtime_ms * 1000) / 1000.0 << "\n";
    }
    return os.str();
}

}  // namespace daride
