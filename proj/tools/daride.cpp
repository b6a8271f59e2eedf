// daride: generate, solve, validate and benchmark preemptive multi-vehicle
// dial-a-ride instances.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "daride/bench.hpp"
#include "daride/errors.hpp"
#include "daride/gen.hpp"
#include "daride/io.hpp"
#include "daride/lower_bounds.hpp"
#include "daride/multi_vehicle.hpp"
#include "daride/oracle.hpp"
#include "daride/validate.hpp"

using namespace daride;

namespace {

int cmd_gen(const GenSpec& spec, const std::string& out) {
    Instance inst = gen(spec);
    if (out.empty())
        write_instance(std::cout, inst);
    else
        write_instance_file(out, inst);
    return 0;
}

int cmd_lb(const std::string& in) {
    Instance inst = read_instance_file(in);
    auto lbs = lb_max(inst);
    std::cout << "flow " << rat_str(lbs.flow) << "\n";
    std::cout << "nsl " << rat_str(lbs.nsl) << "\n";
    std::cout << "max_pair " << rat_str(lbs.max_pair) << "\n";
    std::cout << "max_src " << rat_str(lbs.max_src) << "\n";
    std::cout << "max_dst " << rat_str(lbs.max_dst) << "\n";
    std::cout << "combined " << rat_str(lbs.combined) << "\n";
    return 0;
}

int cmd_solve(const std::string& algo, const std::string& in, const std::string& out,
              const SolveConfig& cfg, long long bound) {
    Instance inst = read_instance_file(in);
    Schedule sched;
    SolveTrace trace;
    std::optional<Rat> hint;
    if (bound > 0) hint = Rat(bound);
    if (algo == "uncap") {
        std::tie(sched, trace) = uncap_solve(inst, cfg);
    } else if (algo == "uncap-mf") {
        std::tie(sched, trace) = uncap_solve(inst, cfg, UncapCore::MinorFree);
    } else if (algo == "cap") {
        std::tie(sched, trace) = cap_solve(inst, cfg, hint);
    } else if (algo == "weighted") {
        std::tie(sched, trace) = weighted_solve(inst, cfg, hint);
    } else {
        std::cerr << "unknown algorithm: " << algo << "\n";
        return 1;
    }
    auto rep = validate(inst, sched);
    if (!out.empty()) write_schedule_file(out, sched);
    std::cout << "makespan " << rat_str(rep.makespan) << "\n";
    std::cout << "lb " << rat_str(trace.lbs.combined) << "\n";
    std::cout << "feasible " << (rep.feasible ? "yes" : "no") << "\n";
    if (!rep.feasible) {
        for (const auto& v : rep.violations) std::cerr << violation_str(v) << "\n";
        return 2;
    }
    return 0;
}

int cmd_validate(const std::string& in, const std::string& sched_path) {
    Instance inst = read_instance_file(in);
    Schedule sched = read_schedule_file(sched_path);
    if (sched.num_rounds() == 0) sched.q = inst.q();
    auto rep = validate(inst, sched);
    std::cout << "feasible " << (rep.feasible ? "yes" : "no") << "\n";
    std::cout << "makespan " << rat_str(rep.makespan) << "\n";
    for (int i = 0; i < inst.m(); ++i)
        std::cout << "object " << i << " delivered=" << rep.objects[i].delivered
                  << " preemptions=" << rep.objects[i].preemptions << "\n";
    for (int j = 0; j < inst.q(); ++j)
        std::cout << "vehicle " << j << " completion=" << rat_str(rep.vehicles[j].completion)
                  << " max_load=" << rep.vehicles[j].max_load << "\n";
    for (const auto& v : rep.violations) std::cout << violation_str(v) << "\n";
    return rep.feasible ? 0 : 2;
}

int cmd_oracle(const std::string& in, const std::string& out) {
    Instance inst = read_instance_file(in);
    auto res = oracle_makespan(inst);
    std::cout << "optimum " << rat_str(res.optimum) << "\n";
    if (!out.empty()) write_schedule_file(out, res.witness);
    return 0;
}

int cmd_bench(const std::string& set, const std::string& algos_csv, int count,
              const SolveConfig& cfg, bool with_oracle, const std::string& out) {
    std::vector<std::pair<std::string, Instance>> instances;
    if (set == "star") {
        for (int q : {3, 8, 16}) {
            GenSpec s;
            s.kind = GenKind::StarGap;
            s.q = q;
            instances.push_back({"star" + std::to_string(q), gen(s)});
        }
    } else if (set == "girth") {
        for (const char* cage : {"petersen", "heawood"}) {
            GenSpec s;
            s.kind = GenKind::GirthGap;
            s.cage = cage;
            instances.push_back({std::string("girth-") + cage, gen(s)});
        }
    } else if (set == "tiny") {
        for (int i = 0; i < count; ++i) {
            GenSpec s;
            s.kind = GenKind::RandomMetric;
            s.n = 6;
            s.m = 3;
            s.q = 2;
            s.k = 2;
            s.seed = cfg.seed + static_cast<std::uint64_t>(i);
            instances.push_back({"tiny" + std::to_string(i), gen(s)});
        }
    } else if (set == "random") {
        for (int i = 0; i < count; ++i) {
            GenSpec s;
            s.kind = GenKind::RandomMetric;
            s.n = 10;
            s.m = 8;
            s.q = 3;
            s.k = 2;
            s.seed = cfg.seed + static_cast<std::uint64_t>(i);
            instances.push_back({"random" + std::to_string(i), gen(s)});
        }
    } else {
        std::cerr << "unknown bench set: " << set << "\n";
        return 1;
    }
    std::vector<std::string> algos;
    std::string cur;
    for (char c : algos_csv) {
        if (c == ',') {
            if (!cur.empty()) algos.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) algos.push_back(cur);

    auto rows = bench(instances, algos, cfg, with_oracle);
    std::string table = bench_table(rows);
    std::cout << table;
    if (!out.empty()) {
        std::ofstream os(out, std::ios::binary);
        os << table;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"preemptive multi-vehicle dial-a-ride toolkit"};
    app.require_subcommand(1);

    SolveConfig cfg;

    // gen
    auto* g = app.add_subcommand("gen", "generate an instance");
    GenSpec spec;
    std::string kind = "random-metric", gen_out;
    g->add_option("--kind", kind, "random-metric|random-graph|planar-grid|star-gap|girth-gap");
    g->add_option("--n", spec.n);
    g->add_option("--m", spec.m);
    g->add_option("--q", spec.q);
    g->add_option("--k", spec.k);
    g->add_option("--max-len", spec.max_len);
    g->add_option("--grid-w", spec.grid_w);
    g->add_option("--grid-h", spec.grid_h);
    g->add_option("--cage", spec.cage, "petersen|heawood");
    g->add_option("--seed", spec.seed);
    g->add_option("--out", gen_out);

    // lb
    auto* l = app.add_subcommand("lb", "print lower bounds for an instance");
    std::string lb_in;
    l->add_option("--in", lb_in)->required();

    // solve
    auto* s = app.add_subcommand("solve", "run a solver");
    std::string algo = "cap", solve_in, solve_out;
    long long bound = 0;
    s->add_option("--algo", algo, "uncap|uncap-mf|cap|weighted");
    s->add_option("--in", solve_in)->required();
    s->add_option("--out", solve_out);
    s->add_option("--seed", cfg.seed);
    s->add_option("--rho-c", cfg.c_rho);
    s->add_option("--r", cfg.minor_r);
    s->add_option("--bound", bound, "initial makespan guess");

    // validate
    auto* v = app.add_subcommand("validate", "validate a schedule against an instance");
    std::string val_in, val_sched;
    v->add_option("--in", val_in)->required();
    v->add_option("--sched", val_sched)->required();

    // oracle
    auto* o = app.add_subcommand("oracle", "exact optimum for desk-scale instances");
    std::string oracle_in, oracle_out;
    o->add_option("--in", oracle_in)->required();
    o->add_option("--out", oracle_out, "write the witness schedule");

    // bench
    auto* b = app.add_subcommand("bench", "run a benchmark suite");
    std::string bench_set = "tiny", bench_algos = "cap", bench_out;
    int bench_count = 5;
    bool bench_oracle = false;
    b->add_option("--set", bench_set, "tiny|star|girth|random");
    b->add_option("--algos", bench_algos, "comma-separated list");
    b->add_option("--count", bench_count);
    b->add_option("--seed", cfg.seed);
    b->add_flag("--oracle", bench_oracle, "add the oracle column where feasible");
    b->add_option("--out", bench_out, "also write the table to a file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (g->parsed()) {
            spec.kind = gen_kind_from_string(kind);
            return cmd_gen(spec, gen_out);
        }
        if (l->parsed()) return cmd_lb(lb_in);
        if (s->parsed()) return cmd_solve(algo, solve_in, solve_out, cfg, bound);
        if (v->parsed()) return cmd_validate(val_in, val_sched);
        if (o->parsed()) return cmd_oracle(oracle_in, oracle_out);
        if (b->parsed())
            return cmd_bench(bench_set, bench_algos, bench_count, cfg, bench_oracle,
                             bench_out);
    } catch (const SizeLimitError& e) {
        std::cerr << "size limit: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
