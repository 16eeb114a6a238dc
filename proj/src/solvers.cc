#include "pfree/solvers.hh"

#include <algorithm>
#include <deque>

namespace pfree {

std::uint64_t subsets_up_to(std::uint64_t m, std::uint64_t k)
{
    const std::uint64_t cap = ~std::uint64_t{0};
    std::uint64_t total = 0, term = 1;   // term = C(m, i)
    for (std::uint64_t i = 0; i <= k && i <= m; ++i) {
        if (total > cap - term)
            return cap;
        total += term;
        // C(m, i+1) = C(m, i) * (m-i) / (i+1); divide first where possible
        unsigned __int128 next = static_cast<unsigned __int128>(term) * (m - i) / (i + 1);
        if (next > cap)
            term = cap;
        else
            term = static_cast<std::uint64_t>(next);
    }
    return total;
}

namespace {

// Visits every k-subset of {0..m-1} in lexicographic order until f returns true.
template <typename F>
bool combinations(std::size_t m, std::size_t k, F &&f)
{
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    if (k > m)
        return false;
    while (true) {
        if (f(idx))
            return true;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == m - k + i - 1)
            --i;
        if (i == 0)
            return false;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

// Smallest subset (lexicographic among the smallest) of the candidate pairs
// whose toggling leaves the graph prison-free.
std::optional<EdgeSet> smallest_toggle(const Graph &g, const std::vector<Edge> &pairs, int k)
{
    std::optional<EdgeSet> found;
    if (g.order() <= 64) {
        auto adj = detail::pack_small(g);
        auto toggle = [&](const Edge &e) {
            adj[e.u] ^= std::uint64_t{1} << e.v;
            adj[e.v] ^= std::uint64_t{1} << e.u;
        };
        for (int s = 0; s <= k && !found; ++s)
            combinations(pairs.size(), static_cast<std::size_t>(s), [&](const std::vector<std::size_t> &idx) {
                for (auto i : idx)
                    toggle(pairs[i]);
                bool ok = !detail::has_prison_small(adj.data(), adj.size());
                for (auto i : idx)
                    toggle(pairs[i]);
                if (ok) {
                    found.emplace();
                    for (auto i : idx)
                        found->insert(pairs[i]);
                }
                return ok;
            });
        return found;
    }
    Graph h = g;
    for (int s = 0; s <= k && !found; ++s)
        combinations(pairs.size(), static_cast<std::size_t>(s), [&](const std::vector<std::size_t> &idx) {
            for (auto i : idx)
                h.set_edge(pairs[i].u, pairs[i].v, !g.has_edge(pairs[i]));
            bool ok = !has_prison(h);
            for (auto i : idx)
                h.set_edge(pairs[i].u, pairs[i].v, g.has_edge(pairs[i]));
            if (ok) {
                found.emplace();
                for (auto i : idx)
                    found->insert(pairs[i]);
            }
            return ok;
        });
    return found;
}

}

std::optional<Solution> brute_force_deletion(const Graph &g, int k)
{
    if (k < 0)
        return std::nullopt;
    auto edges = g.edges();
    auto candidates = subsets_up_to(edges.size(), static_cast<std::uint64_t>(k));
    if (candidates > deletion_candidate_guard)
        throw GuardExceeded("deletion-candidates", "brute_force_deletion: " + std::to_string(candidates) +
                                                       " candidate sets exceed the guard of " +
                                                       std::to_string(deletion_candidate_guard));
    auto found = smallest_toggle(g, edges, k);
    if (!found)
        return std::nullopt;
    return Solution{std::move(*found), EditMode::Deletion};
}

std::optional<Solution> brute_force_completion(const AnnotatedGraph &ag, int cap)
{
    if (cap < 0)
        return std::nullopt;
    std::vector<Edge> allowed;
    const auto &g = ag.graph;
    for (Vertex u = 0; u < g.order(); ++u)
        for (Vertex v = u + 1; v < g.order(); ++v)
            if (!g.has_edge(u, v) && !ag.is_forbidden(Edge(u, v)))
                allowed.emplace_back(u, v);
    auto candidates = subsets_up_to(allowed.size(), static_cast<std::uint64_t>(cap));
    if (candidates > completion_candidate_guard)
        throw GuardExceeded("completion-candidates", "brute_force_completion: " + std::to_string(candidates) +
                                                         " candidate sets exceed the guard of " +
                                                         std::to_string(completion_candidate_guard));
    auto found = smallest_toggle(g, allowed, cap);
    if (!found)
        return std::nullopt;
    return Solution{std::move(*found), EditMode::Completion};
}

namespace {

bool delete_rec(Graph &h, int budget, std::vector<Edge> &path)
{
    auto p = find_prison(h);
    if (!p)
        return true;
    if (budget == 0)
        return false;
    for (const auto &e : p->edges()) {
        h.remove_edge(e);
        path.push_back(e);
        bool ok = delete_rec(h, budget - 1, path);
        if (ok)
            return true;
        path.pop_back();
        h.add_edge(e);
    }
    return false;
}

bool complete_rec(Graph &h, const EdgeSet &forbidden, int budget, std::vector<Edge> &path)
{
    auto p = find_prison(h);
    if (!p)
        return true;
    if (budget == 0)
        return false;
    for (const auto &e : p->non_edges) {
        if (forbidden.count(e))
            continue;
        h.add_edge(e);
        path.push_back(e);
        bool ok = complete_rec(h, forbidden, budget - 1, path);
        if (ok)
            return true;
        path.pop_back();
        h.remove_edge(e);
    }
    return false;
}

}

std::optional<Solution> branch_deletion(const Graph &g, int k)
{
    for (int b = 0; b <= k; ++b) {
        Graph h = g;
        std::vector<Edge> path;
        if (delete_rec(h, b, path))
            return Solution{EdgeSet(path.begin(), path.end()), EditMode::Deletion};
    }
    return std::nullopt;
}

std::optional<Solution> branch_completion(const AnnotatedGraph &ag, int k)
{
    for (int b = 0; b <= k; ++b) {
        Graph h = ag.graph;
        std::vector<Edge> path;
        if (complete_rec(h, ag.forbidden, b, path))
            return Solution{EdgeSet(path.begin(), path.end()), EditMode::Completion};
    }
    return std::nullopt;
}

namespace {

class Propagator {
public:
    Propagator(const AnnotatedGraph &ag, const EdgeSet &seed) : cur_(ag.graph), blocked_(ag.forbidden)
    {
        for (const auto &e : seed) {
            if (ag.graph.has_edge(e))
                throw std::invalid_argument("seed pair " + to_string(e) + " is already an edge");
            if (ag.is_forbidden(e))
                throw std::invalid_argument("seed pair " + to_string(e) + " is forbidden");
            cur_.add_edge(e);
            state_.added.insert(e);
        }
    }

    PropagationState run()
    {
        for (const auto &e : cur_.edges()) {
            scan(e);
            if (state_.conflict)
                return state_;
        }
        while (!queue_.empty() && !state_.conflict) {
            auto [add, e] = queue_.front();
            queue_.pop_front();
            if (add) {
                if (cur_.has_edge(e))
                    continue;
                if (blocked_.count(e)) {
                    state_.conflict = true;
                    break;
                }
                cur_.add_edge(e);
                state_.added.insert(e);
            }
            else {
                if (blocked_.count(e))
                    continue;
                if (cur_.has_edge(e)) {
                    state_.conflict = true;
                    break;
                }
                blocked_.insert(e);
                state_.derived_forbidden.insert(e);
            }
            scan(e);
        }
        return state_;
    }

private:
    static bool share_vertex(const Edge &a, const Edge &b) { return a.contains(b.u) || a.contains(b.v); }

    void scan(const Edge &pair)
    {
        for_each_dense_five(cur_, pair.u, pair.v, 3, [&](const std::array<Vertex, 5> &vs) {
            std::vector<Edge> missing;
            for (int i = 0; i < 5; ++i)
                for (int j = i + 1; j < 5; ++j)
                    if (!cur_.has_edge(vs[i], vs[j]))
                        missing.emplace_back(vs[i], vs[j]);
            if (missing.size() == 2 && share_vertex(missing[0], missing[1])) {
                std::vector<Edge> open;
                for (const auto &m : missing)
                    if (!blocked_.count(m))
                        open.push_back(m);
                if (open.empty()) {
                    state_.conflict = true;
                    PrisonWitness w;
                    w.vertices = vs;
                    w.non_edges = {missing[0], missing[1]};
                    state_.conflict_witness = w;
                    return false;
                }
                if (open.size() == 1)
                    queue_.emplace_back(true, open[0]);
            }
            else if (missing.size() == 3) {
                for (std::size_t i = 0; i < 3; ++i) {
                    const Edge &a = missing[(i + 1) % 3], &b = missing[(i + 2) % 3];
                    if (share_vertex(a, b) && blocked_.count(a) && blocked_.count(b) && !blocked_.count(missing[i]))
                        queue_.emplace_back(false, missing[i]);
                }
            }
            return true;
        });
    }

    Graph cur_;
    EdgeSet blocked_;
    PropagationState state_;
    std::deque<std::pair<bool, Edge>> queue_;
};

}

PropagationState propagate_forced(const AnnotatedGraph &ag, const EdgeSet &seed)
{
    return Propagator(ag, seed).run();
}

bool verify_solution(const AnnotatedGraph &ag, const Solution &sol)
{
    const Graph &g = ag.graph;
    for (const auto &e : sol.edits) {
        g.check_vertex(e.v);
        if (e.u == e.v)
            throw std::invalid_argument("solution contains a loop");
        bool present = g.has_edge(e);
        if (sol.mode == EditMode::Deletion && !present)
            throw std::invalid_argument("deletion solution removes non-edge " + to_string(e));
        if (sol.mode == EditMode::Completion && present)
            throw std::invalid_argument("completion solution adds existing edge " + to_string(e));
    }
    if (sol.mode == EditMode::Completion)
        for (const auto &e : sol.edits)
            if (ag.is_forbidden(e))
                return false;
    Graph h = sol.mode == EditMode::Deletion ? apply_edits(g, sol.edits, {}) : apply_edits(g, {}, sol.edits);
    return !has_prison(h);
}

}
