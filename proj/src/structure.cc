#include "pfree/structure.hh"

#include <algorithm>
#include <set>

namespace pfree {

std::string to_string(FiveKind kind)
{
    switch (kind) {
    case FiveKind::Prison: return "Prison";
    case FiveKind::StrictSupergraph: return "StrictSupergraph";
    case FiveKind::Other: return "Other";
    }
    return "?";
}

std::vector<Edge> PrisonWitness::edges() const
{
    std::vector<Edge> out;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
            Edge e(vertices[i], vertices[j]);
            if (e != non_edges[0] && e != non_edges[1])
                out.push_back(e);
        }
    return out;
}

std::size_t MultipartiteComponent::class_of(Vertex v) const
{
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (std::binary_search(classes[i].begin(), classes[i].end(), v))
            return i;
    return classes.size();
}

FiveClass classify_five(const Graph &g, std::array<Vertex, 5> vs)
{
    std::sort(vs.begin(), vs.end());
    for (int i = 0; i < 5; ++i) {
        g.check_vertex(vs[i]);
        if (i > 0 && vs[i] == vs[i - 1])
            throw std::invalid_argument("classify_five needs 5 distinct vertices");
    }
    FiveClass fc;
    fc.vertices = vs;
    std::vector<Edge> missing;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            if (!g.has_edge(vs[i], vs[j]))
                missing.emplace_back(vs[i], vs[j]);
    if (missing.size() <= 1) {
        fc.kind = FiveKind::StrictSupergraph;
        fc.non_edges = missing;
    }
    else if (missing.size() == 2) {
        const Edge &a = missing[0], &b = missing[1];
        if (a.contains(b.u) || a.contains(b.v)) {
            fc.kind = FiveKind::Prison;
            fc.non_edges = missing;
        }
    }
    return fc;
}

namespace {

PrisonWitness make_witness(Vertex x, Vertex y, Vertex z, Vertex w1, Vertex w2)
{
    PrisonWitness p;
    p.vertices = {x, y, z, w1, w2};
    std::sort(p.vertices.begin(), p.vertices.end());
    p.non_edges = {Edge(x, y), Edge(x, z)};
    std::sort(p.non_edges.begin(), p.non_edges.end());
    return p;
}

// Every prison has a unique vertex x of degree two; its two non-neighbours
// y,z are adjacent and the two neighbours w1,w2 are adjacent to all others.
struct Scratch {
    VertexSet a, b, c;
    explicit Scratch(std::size_t n) : a(n), b(n), c(n) {}
};

bool edges_inside(const Graph &g, const VertexSet &w, VertexSet &tmp,
                  const std::function<bool(Vertex, Vertex)> &f)
{
    for (auto p = w.find_first(); p != VertexSet::npos; p = w.find_next(p)) {
        tmp = g.neighbors(static_cast<Vertex>(p));
        tmp &= w;
        for (auto q = tmp.find_next(p); q != VertexSet::npos; q = tmp.find_next(q))
            if (!f(static_cast<Vertex>(p), static_cast<Vertex>(q)))
                return false;
    }
    return true;
}

}

void for_each_prison(const Graph &g, const std::function<bool(const PrisonWitness &)> &f)
{
    const std::size_t n = g.order();
    Scratch s(n);
    VertexSet tmp(n);
    for (Vertex x = 0; x < n; ++x) {
        if (g.degree(x) < 2)
            continue;
        VertexSet far = g.neighbors(x);
        far.flip();
        far.reset(x);
        for (auto y = far.find_first(); y != VertexSet::npos; y = far.find_next(y)) {
            s.a = g.neighbors(static_cast<Vertex>(y));
            s.a &= far;
            s.b = g.neighbors(x);
            s.b &= g.neighbors(static_cast<Vertex>(y));
            if (s.b.count() < 2)
                continue;
            for (auto z = s.a.find_next(y); z != VertexSet::npos; z = s.a.find_next(z)) {
                s.c = s.b;
                s.c &= g.neighbors(static_cast<Vertex>(z));
                bool go = edges_inside(g, s.c, tmp, [&](Vertex w1, Vertex w2) {
                    return f(make_witness(x, static_cast<Vertex>(y), static_cast<Vertex>(z), w1, w2));
                });
                if (!go)
                    return;
            }
        }
    }
}

void for_each_prison_containing(const Graph &g, Vertex a, Vertex b,
                                const std::function<bool(const PrisonWitness &)> &f)
{
    if (!g.has_edge(a, b))
        throw std::invalid_argument("for_each_prison_containing needs an edge");
    const std::size_t n = g.order();
    VertexSet common = g.neighbors(a) & g.neighbors(b);
    VertexSet tmp(n), set1(n), set2(n);

    // x is an endpoint of the edge; the other endpoint is one of w1,w2.
    for (Vertex x : {a, b}) {
        Vertex other = x == a ? b : a;
        VertexSet far = g.neighbors(x);
        far.flip();
        far.reset(x);
        for (auto w = common.find_first(); w != VertexSet::npos; w = common.find_next(w)) {
            set1 = g.neighbors(other);
            set1 &= g.neighbors(static_cast<Vertex>(w));
            set1 &= far;
            bool go = edges_inside(g, set1, tmp, [&](Vertex y, Vertex z) {
                return f(make_witness(x, y, z, other, static_cast<Vertex>(w)));
            });
            if (!go)
                return;
        }
    }

    for (Vertex x = 0; x < n; ++x) {
        if (x == a || x == b)
            continue;
        bool na = g.has_edge(x, a), nb = g.has_edge(x, b);
        if (!na && !nb) {
            set1 = common;
            set1 &= g.neighbors(x);
            bool go = edges_inside(g, set1, tmp, [&](Vertex w1, Vertex w2) {
                return f(make_witness(x, a, b, w1, w2));
            });
            if (!go)
                return;
        }
        else if (na && nb) {
            set1 = g.neighbors(x);
            set1.flip();
            set1 &= common;
            set1.reset(x);
            bool go = edges_inside(g, set1, tmp, [&](Vertex y, Vertex z) {
                return f(make_witness(x, y, z, a, b));
            });
            if (!go)
                return;
        }
        else {
            Vertex w = na ? a : b;   // neighbour of x, degree-4 role
            Vertex y = na ? b : a;   // non-neighbour of x
            set1 = g.neighbors(x);
            set1.flip();
            set1 &= common;
            set1.reset(x);
            for (auto y2 = set1.find_first(); y2 != VertexSet::npos; y2 = set1.find_next(y2)) {
                set2 = common;
                set2 &= g.neighbors(x);
                set2 &= g.neighbors(static_cast<Vertex>(y2));
                for (auto w2 = set2.find_first(); w2 != VertexSet::npos; w2 = set2.find_next(w2))
                    if (!f(make_witness(x, y, static_cast<Vertex>(y2), w, static_cast<Vertex>(w2))))
                        return;
            }
        }
    }
}

namespace detail {

std::vector<std::uint64_t> pack_small(const Graph &g)
{
    if (g.order() > 64)
        throw std::invalid_argument("pack_small needs n <= 64");
    std::vector<std::uint64_t> adj(g.order(), 0);
    for (Vertex v = 0; v < g.order(); ++v)
        for_each_vertex(g.neighbors(v), [&](Vertex u) { adj[v] |= std::uint64_t{1} << u; });
    return adj;
}

bool has_prison_small(const std::uint64_t *adj, std::size_t n)
{
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    for (std::size_t x = 0; x < n; ++x) {
        std::uint64_t far = ~adj[x] & all & ~(std::uint64_t{1} << x);
        for (std::uint64_t ys = far; ys; ys &= ys - 1) {
            int y = __builtin_ctzll(ys);
            std::uint64_t nb = adj[x] & adj[y];
            if (__builtin_popcountll(nb) < 2)
                continue;
            std::uint64_t zs = adj[y] & far & ~((std::uint64_t{2} << y) - 1);
            for (; zs; zs &= zs - 1) {
                std::uint64_t w = nb & adj[__builtin_ctzll(zs)];
                for (std::uint64_t ws = w; ws; ws &= ws - 1)
                    if (adj[__builtin_ctzll(ws)] & w)
                        return true;
            }
        }
    }
    return false;
}

}

bool has_prison(const Graph &g)
{
    if (g.order() <= 64) {
        auto adj = detail::pack_small(g);
        return detail::has_prison_small(adj.data(), adj.size());
    }
    bool found = false;
    for_each_prison(g, [&](const PrisonWitness &) {
        found = true;
        return false;
    });
    return found;
}

std::optional<PrisonWitness> find_prison(const Graph &g)
{
    std::optional<PrisonWitness> best;
    for_each_prison(g, [&](const PrisonWitness &p) {
        if (!best || p < *best)
            best = p;
        return true;
    });
    return best;
}

std::vector<PrisonWitness> enumerate_prisons(const Graph &g)
{
    std::vector<PrisonWitness> out;
    for_each_prison(g, [&](const PrisonWitness &p) {
        out.push_back(p);
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

bool edge_in_strict_supergraph(const Graph &g, const Edge &e)
{
    if (!g.has_edge(e))
        throw std::invalid_argument("edge_in_strict_supergraph: " + to_string(e) + " is not an edge");
    // The three other vertices either all see both endpoints (one non-edge
    // allowed among them) or one of them misses one endpoint and the rest
    // is complete.
    VertexSet both = g.neighbors(e.u) & g.neighbors(e.v);
    VertexSet one = g.neighbors(e.u) ^ g.neighbors(e.v);
    one.reset(e.u);
    one.reset(e.v);
    VertexSet cand(g.order());
    for (auto x = both.find_first(); x != VertexSet::npos; x = both.find_next(x))
        for (auto y = both.find_next(x); y != VertexSet::npos; y = both.find_next(y)) {
            const auto &nx = g.neighbors(static_cast<Vertex>(x));
            const auto &ny = g.neighbors(static_cast<Vertex>(y));
            if (nx.test(y)) {
                cand = nx | ny;
                cand &= both;
                cand.reset(x);
                cand.reset(y);
                if (cand.any())
                    return true;
                cand = nx & ny;
                if (cand.intersects(one))
                    return true;
            }
            else {
                cand = nx & ny;
                if (cand.intersects(both))
                    return true;
            }
        }
    return false;
}

void for_each_dense_five(const Graph &g, Vertex a, Vertex b, std::size_t max_missing,
                         const std::function<bool(const std::array<Vertex, 5> &)> &f)
{
    g.check_vertex(a);
    g.check_vertex(b);
    if (a == b)
        throw std::invalid_argument("for_each_dense_five needs two distinct vertices");
    std::size_t base = g.has_edge(a, b) ? 0 : 1;
    if (base > max_missing)
        return;
    // With at most three non-edges the induced 5-vertex graph has diameter
    // two, so the ball of radius two around a suffices.
    VertexSet pool = g.neighbors(a);
    for_each_vertex(g.neighbors(a), [&](Vertex v) { pool |= g.neighbors(v); });
    pool.reset(a);
    pool.reset(b);
    std::vector<Vertex> cand = to_vector(pool);
    auto miss = [&](Vertex v, std::initializer_list<Vertex> others) {
        std::size_t m = 0;
        for (Vertex o : others)
            m += g.has_edge(v, o) ? 0 : 1;
        return m;
    };
    for (std::size_t i = 0; i < cand.size(); ++i) {
        Vertex x = cand[i];
        std::size_t m1 = base + miss(x, {a, b});
        if (m1 > max_missing)
            continue;
        for (std::size_t j = i + 1; j < cand.size(); ++j) {
            Vertex y = cand[j];
            std::size_t m2 = m1 + miss(y, {a, b, x});
            if (m2 > max_missing)
                continue;
            for (std::size_t l = j + 1; l < cand.size(); ++l) {
                Vertex z = cand[l];
                if (m2 + miss(z, {a, b, x, y}) > max_missing)
                    continue;
                std::array<Vertex, 5> vs{a, b, x, y, z};
                std::sort(vs.begin(), vs.end());
                if (!f(vs))
                    return;
            }
        }
    }
}

namespace {

bool clique_rec(const Graph &g, std::size_t size, std::vector<Vertex> &cur, const VertexSet &cand,
                const std::function<bool(const std::vector<Vertex> &)> &f)
{
    if (cur.size() == size)
        return f(cur);
    if (cand.count() < size - cur.size())
        return true;
    for (auto v = cand.find_first(); v != VertexSet::npos; v = cand.find_next(v)) {
        VertexSet next = cand & g.neighbors(static_cast<Vertex>(v));
        // only larger ids, so each clique is produced once in lex order
        for (auto w = next.find_first(); w != VertexSet::npos && w <= v; w = next.find_next(w))
            next.reset(w);
        cur.push_back(static_cast<Vertex>(v));
        bool go = clique_rec(g, size, cur, next, f);
        cur.pop_back();
        if (!go)
            return false;
    }
    return true;
}

}

void for_each_clique(const Graph &g, std::size_t size,
                     const std::function<bool(const std::vector<Vertex> &)> &f)
{
    std::vector<Vertex> cur;
    if (size == 0) {
        f(cur);
        return;
    }
    clique_rec(g, size, cur, g.full_set(), f);
}

std::size_t count_cliques(const Graph &g, std::size_t size)
{
    std::size_t count = 0;
    for_each_clique(g, size, [&](const std::vector<Vertex> &) {
        ++count;
        return true;
    });
    return count;
}

std::optional<MultipartiteComponent> multipartite_structure(const Graph &g, std::span<const Vertex> vs)
{
    MultipartiteComponent mc;
    mc.vertices.assign(vs.begin(), vs.end());
    std::sort(mc.vertices.begin(), mc.vertices.end());
    mc.vertices.erase(std::unique(mc.vertices.begin(), mc.vertices.end()), mc.vertices.end());
    for (Vertex v : mc.vertices) {
        g.check_vertex(v);
        bool placed = false;
        for (auto &cls : mc.classes)
            if (!g.has_edge(v, cls.front())) {
                cls.push_back(v);
                placed = true;
                break;
            }
        if (!placed)
            mc.classes.push_back({v});
    }
    for (std::size_t i = 0; i < mc.classes.size(); ++i) {
        const auto &ci = mc.classes[i];
        for (std::size_t a = 0; a < ci.size(); ++a)
            for (std::size_t b = a + 1; b < ci.size(); ++b)
                if (g.has_edge(ci[a], ci[b]))
                    return std::nullopt;
        for (std::size_t j = i + 1; j < mc.classes.size(); ++j)
            for (Vertex u : ci)
                for (Vertex w : mc.classes[j])
                    if (!g.has_edge(u, w))
                        return std::nullopt;
    }
    return mc;
}

bool is_complete_multipartite(const Graph &g, std::span<const Vertex> vs)
{
    return multipartite_structure(g, vs).has_value();
}

namespace {

MultipartiteComponent greedy_extend(const Graph &g, const std::vector<Vertex> &seed)
{
    const std::size_t n = g.order();
    VertexSet members(n);
    std::vector<VertexSet> classes;
    std::vector<std::size_t> class_id(n, SIZE_MAX);
    for (Vertex v : seed) {
        members.set(v);
        class_id[v] = classes.size();
        classes.emplace_back(n);
        classes.back().set(v);
    }
    VertexSet seen(n), missing(n);
    for (bool grew = true; grew;) {
        grew = false;
        for (Vertex v = 0; v < n && !grew; ++v) {
            if (members.test(v))
                continue;
            seen = g.neighbors(v);
            seen &= members;
            missing = members;
            missing -= seen;
            if (missing.none()) {
                class_id[v] = classes.size();
                classes.emplace_back(n);
                classes.back().set(v);
            }
            else {
                std::size_t c = class_id[missing.find_first()];
                if (missing != classes[c])
                    continue;
                class_id[v] = c;
                classes[c].set(v);
            }
            members.set(v);
            grew = true;
        }
    }
    MultipartiteComponent mc;
    mc.vertices = to_vector(members);
    for (const auto &cls : classes)
        mc.classes.push_back(to_vector(cls));
    std::sort(mc.classes.begin(), mc.classes.end());
    return mc;
}

}

std::vector<MultipartiteComponent> cmd(const Graph &g, std::size_t p)
{
    if (p < 2)
        throw std::invalid_argument("cmd needs at least two parts");
    std::set<std::vector<Vertex>> seen;
    std::vector<MultipartiteComponent> out;
    for_each_clique(g, p, [&](const std::vector<Vertex> &seed) {
        auto mc = greedy_extend(g, seed);
        if (seen.insert(mc.vertices).second)
            out.push_back(std::move(mc));
        return true;
    });
    std::sort(out.begin(), out.end(), [](const auto &x, const auto &y) { return x.vertices < y.vertices; });
    return out;
}

std::uint64_t multipartite_edge_count(std::span<const std::uint64_t> sizes)
{
    std::uint64_t total = 0, squares = 0;
    for (auto a : sizes) {
        if (a == 0)
            throw std::invalid_argument("part sizes must be positive");
        total += a;
        squares += a * a;
    }
    return (total * total - squares) / 2;
}

std::uint64_t multipartite_edge_count(std::initializer_list<std::uint64_t> sizes)
{
    return multipartite_edge_count(std::span<const std::uint64_t>(sizes.begin(), sizes.size()));
}

std::size_t classes_seen(const Graph &g, const MultipartiteComponent &f, Vertex v)
{
    std::size_t count = 0;
    for (const auto &cls : f.classes)
        for (Vertex u : cls)
            if (g.has_edge(u, v)) {
                ++count;
                break;
            }
    return count;
}

StructureCheck check_structure_theorem(const Graph &g)
{
    StructureCheck result;
    for (const auto &f : cmd(g, 4)) {
        VertexSet in = to_set(g.order(), f.vertices);
        for (Vertex v = 0; v < g.order(); ++v) {
            if (in.test(v))
                continue;
            std::vector<std::size_t> hit;
            for (std::size_t c = 0; c < f.classes.size() && hit.size() < 2; ++c)
                for (Vertex u : f.classes[c])
                    if (g.has_edge(u, v)) {
                        hit.push_back(c);
                        break;
                    }
            if (hit.size() >= 2) {
                result.holds = false;
                result.violation = StructureViolation{f, v, hit[0], hit[1]};
                return result;
            }
        }
    }
    return result;
}

Cmd4Report check_cmd4_properties(const Graph &g)
{
    Cmd4Report report;
    if (has_prison(g)) {
        report.prison_free = false;
        report.detail = "graph contains a prison; the properties only apply to prison-free graphs";
        return report;
    }
    const std::size_t n = g.order();
    auto comps = cmd(g, 4);
    report.components = comps.size();
    std::vector<VertexSet> sets;
    std::vector<std::vector<VertexSet>> class_sets;
    for (const auto &f : comps) {
        sets.push_back(to_set(n, f.vertices));
        class_sets.emplace_back();
        for (const auto &cls : f.classes)
            class_sets.back().push_back(to_set(n, cls));
    }
    auto fail = [&](int item, const std::string &what) {
        report.holds = false;
        report.failed_item = item;
        report.detail = what;
        return report;
    };
    auto single_class = [&](std::size_t i, const VertexSet &part) -> std::optional<std::size_t> {
        for (std::size_t c = 0; c < class_sets[i].size(); ++c)
            if (part.is_subset_of(class_sets[i][c]))
                return c;
        return std::nullopt;
    };
    for (std::size_t i = 0; i < comps.size(); ++i)
        for (std::size_t j = 0; j < comps.size(); ++j) {
            if (i == j)
                continue;
            VertexSet common = sets[i] & sets[j];
            if (common.any()) {
                if (i > j)
                    continue;
                auto ci = single_class(i, common);
                auto cj = single_class(j, common);
                if (!ci || !cj)
                    return fail(1, "components " + std::to_string(i) + "," + std::to_string(j) +
                                       " meet outside a single class");
                VertexSet left = sets[i] - class_sets[j][*cj];
                VertexSet right = sets[j] - class_sets[i][*ci];
                left -= common;
                right -= common;
                for (auto u = left.find_first(); u != VertexSet::npos; u = left.find_next(u))
                    if (g.neighbors(static_cast<Vertex>(u)).intersects(right))
                        return fail(1, "edge between the private sides of components " + std::to_string(i) +
                                           "," + std::to_string(j));
            }
            else {
                for (Vertex v : comps[j].vertices)
                    if (classes_seen(g, comps[i], v) > 1)
                        return fail(2, "vertex " + std::to_string(v) + " sees two classes of disjoint component " +
                                           std::to_string(i));
            }
        }
    bool ok = true;
    for_each_clique(g, 4, [&](const std::vector<Vertex> &q) {
        ++report.k4_count;
        VertexSet qs = to_set(n, q);
        std::size_t holders = 0;
        for (const auto &s : sets)
            holders += qs.is_subset_of(s) ? 1 : 0;
        if (holders != 1) {
            fail(3, "K4 lies in " + std::to_string(holders) + " components");
            return ok = false;
        }
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = a + 1; b < 4; ++b) {
                std::size_t edge_holders = 0;
                for (const auto &s : sets)
                    edge_holders += (s.test(q[a]) && s.test(q[b])) ? 1 : 0;
                if (edge_holders != 1) {
                    fail(3, "edge of a K4 lies in " + std::to_string(edge_holders) + " components");
                    return ok = false;
                }
            }
        return true;
    });
    return report;
}

}
