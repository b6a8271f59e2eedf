#pragma once

#include <cstdint>
#include <string>

#include "daride/instance.hpp"

namespace daride {

enum class GenKind { RandomMetric, RandomGraph, PlanarGrid, StarGap, GirthGap, File };

struct GenSpec {
    GenKind kind = GenKind::RandomMetric;
    int n = 6;
    int m = 3;
    int q = 2;
    long long k = 1;
    long long max_len = 20;
    int grid_w = 4;
    int grid_h = 4;
    std::string cage = "petersen";  // or "heawood"
    std::uint64_t seed = 1;
    std::string path;  // GenKind::File
};

// Deterministic per spec+seed. Throws std::invalid_argument on bad parameters.
Instance gen(const GenSpec& spec);

WeightedGraph petersen_graph();
WeightedGraph heawood_graph();

// girth of a unit-length graph via per-edge BFS; -1 when acyclic
int graph_girth(const WeightedGraph& g);

GenKind gen_kind_from_string(const std::string& s);

}  // namespace daride
