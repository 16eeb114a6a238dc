#pragma once

#include "pfree/graph.hh"

#include <cstdint>
#include <random>
#include <vector>

namespace pfree {

inline constexpr std::uint64_t default_corpus_seed = 20240527;

// PFREE_SEED if set and numeric, else the default.
std::uint64_t corpus_seed();

using Rng = std::mt19937_64;

inline constexpr double corpus_densities[] = {0.3, 0.5, 0.7};

Graph erdos_renyi(std::size_t n, double p, Rng &rng);
// Random graph with a prison forced onto five random vertices.
Graph planted_prison(std::size_t n, double p, Rng &rng);
// Random complete multipartite graph on n vertices with `parts` classes.
Graph planted_multipartite(std::size_t n, std::size_t parts, Rng &rng);
// Random graph made prison-free by deleting a random edge of a prison until none is left.
Graph prison_free_sample(std::size_t n, double p, Rng &rng);

struct Instance {
    Graph graph;
    int k = 0;
};

// n in [nmin, nmax], k in [0, kmax]; cycles through the densities and adds a
// planted prison to every fourth instance.
std::vector<Instance> deletion_corpus(std::size_t count, std::size_t nmin, std::size_t nmax, int kmax,
                                      std::uint64_t seed);

}
