#include "pfree/corpus.hh"
#include "pfree/structure.hh"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace pfree {

std::uint64_t corpus_seed()
{
    if (const char *s = std::getenv("PFREE_SEED")) {
        try {
            std::size_t used = 0;
            auto v = std::stoull(s, &used);
            if (used == std::string(s).size())
                return v;
        }
        catch (const std::exception &) {
        }
    }
    return default_corpus_seed;
}

Graph erdos_renyi(std::size_t n, double p, Rng &rng)
{
    std::bernoulli_distribution coin(p);
    Graph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (coin(rng))
                g.add_edge(u, v);
    return g;
}

Graph planted_prison(std::size_t n, double p, Rng &rng)
{
    if (n < 5)
        throw std::invalid_argument("a prison needs five vertices");
    Graph g = erdos_renyi(n, p, rng);
    std::vector<Vertex> vs(n);
    for (Vertex v = 0; v < n; ++v)
        vs[v] = v;
    std::shuffle(vs.begin(), vs.end(), rng);
    // vs[0] is the centre, missing vs[1] and vs[2]
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            g.set_edge(vs[i], vs[j], !(i == 0 && (j == 1 || j == 2)));
    return g;
}

Graph planted_multipartite(std::size_t n, std::size_t parts, Rng &rng)
{
    if (parts == 0)
        throw std::invalid_argument("need at least one class");
    std::uniform_int_distribution<std::size_t> pick(0, parts - 1);
    std::vector<std::size_t> owner(n);
    for (auto &o : owner)
        o = pick(rng);
    Graph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (owner[u] != owner[v])
                g.add_edge(u, v);
    return g;
}

Graph prison_free_sample(std::size_t n, double p, Rng &rng)
{
    Graph g = erdos_renyi(n, p, rng);
    while (auto w = find_prison(g)) {
        auto es = w->edges();
        g.remove_edge(es[rng() % es.size()]);
    }
    return g;
}

std::vector<Instance> deletion_corpus(std::size_t count, std::size_t nmin, std::size_t nmax, int kmax,
                                      std::uint64_t seed)
{
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> size(nmin, nmax);
    std::uniform_int_distribution<int> budget(0, kmax);
    std::vector<Instance> out;
    for (std::size_t i = 0; i < count; ++i) {
        const double p = corpus_densities[i % 3];
        const auto n = size(rng);
        Graph g = (i % 4 == 3 && n >= 5) ? planted_prison(n, p, rng) : erdos_renyi(n, p, rng);
        out.push_back({std::move(g), budget(rng)});
    }
    return out;
}

}
