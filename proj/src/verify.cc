#include "pfree/verify.hh"
#include "pfree/corpus.hh"
#include "pfree/gadgets.hh"
#include "pfree/kernel.hh"
#include "pfree/solvers.hh"
#include "pfree/structure.hh"

#include <chrono>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pfree {

namespace {

// Counts checks and keeps the first failure.
class Tally {
public:
    Tally(int id, std::string name) : start_(std::chrono::steady_clock::now())
    {
        r_.id = id;
        r_.name = std::move(name);
    }

    bool expect(bool ok, const std::string &what)
    {
        ++r_.checks;
        if (!ok && failure_.empty())
            failure_ = what;
        return ok;
    }

    void fail(const std::string &what) { expect(false, what); }

    CriterionResult finish(const std::string &summary)
    {
        r_.passed = failure_.empty() && r_.checks > 0;
        r_.detail = failure_.empty() ? summary : failure_;
        r_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return r_;
    }

private:
    CriterionResult r_;
    std::string failure_;
    std::chrono::steady_clock::time_point start_;
};

std::string describe(const Graph &g)
{
    std::ostringstream out;
    out << "n=" << g.order() << " {";
    bool first = true;
    for (const auto &e : g.edges()) {
        out << (first ? "" : " ") << e.u << "-" << e.v;
        first = false;
    }
    out << "}";
    return out.str();
}

std::optional<std::size_t> min_size(const std::optional<Solution> &s)
{
    if (!s)
        return std::nullopt;
    return s->size();
}

// Every completion of size <= 1 over the allowed pairs, or {{}} when none is needed.
std::set<EdgeSet> small_completions(const AnnotatedGraph &ag)
{
    if (!has_prison(ag.graph))
        return {EdgeSet{}};
    std::set<EdgeSet> out;
    for (const auto &e : complement(ag.graph).edges()) {
        if (ag.is_forbidden(e))
            continue;
        Graph h = ag.graph;
        h.add_edge(e);
        if (!has_prison(h))
            out.insert({e});
    }
    return out;
}

GapInstance k4_gap(int ell)
{
    return reduce_vc_to_gap({complete_graph(4), 3}, ell);
}

}

CriterionResult check_structure_equivalence(std::uint64_t seed)
{
    Tally t(1, "structure theorem matches prison enumeration");
    std::size_t free_count = 0, total = 0;
    auto one = [&](const Graph &g) {
        bool expect = enumerate_prisons(g).empty();
        free_count += expect ? 1 : 0;
        ++total;
        t.expect(check_structure_theorem(g).holds == expect, "mismatch on " + describe(g));
    };

    std::vector<Edge> pairs;
    for (Vertex u = 0; u < 6; ++u)
        for (Vertex v = u + 1; v < 6; ++v)
            pairs.emplace_back(u, v);
    for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
        Graph g(6);
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (mask >> i & 1)
                g.add_edge(pairs[i]);
        one(g);
    }

    Rng rng(seed);
    for (int i = 0; i < 10000; ++i) {
        const std::size_t n = 8 + i % 2;
        const double p = corpus_densities[(i / 2) % 3];
        if (i % 5 == 4)
            one(prison_free_sample(n, p, rng));
        else
            one(erdos_renyi(n, p, rng));
    }
    t.expect(free_count > 0 && free_count < total, "sample lacks one of the two outcomes");
    return t.finish(std::to_string(total) + " graphs, " + std::to_string(free_count) + " prison-free");
}

CriterionResult check_cmd4_decomposition(std::uint64_t seed)
{
    Tally t(2, "cmd4 decomposition properties");
    Rng rng(seed ^ 0x2);
    std::uniform_int_distribution<std::size_t> size(5, 10);
    std::size_t components = 0, k4s = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto n = size(rng);
        Graph g;
        if (i % 2 == 0) {
            g = prison_free_sample(n, corpus_densities[(i / 2) % 3], rng);
        }
        else {
            // multipartite base with a few random flips, then repaired
            g = planted_multipartite(n, 4 + i % 3, rng);
            for (int f = 0; f < 3; ++f) {
                Vertex a = static_cast<Vertex>(rng() % n), b = static_cast<Vertex>(rng() % n);
                if (a != b)
                    g.set_edge(a, b, !g.has_edge(a, b));
            }
            while (auto w = find_prison(g)) {
                auto es = w->edges();
                g.remove_edge(es[rng() % es.size()]);
            }
        }
        auto rep = check_cmd4_properties(g);
        components += rep.components;
        k4s += rep.k4_count;
        t.expect(rep.prison_free, "sampler produced a prison: " + describe(g));
        t.expect(rep.holds, "item " + std::to_string(rep.failed_item) + " fails on " + describe(g) + ": " +
                                rep.detail);
    }
    t.expect(k4s > 0, "no K4 in the sample");
    return t.finish("1000 graphs, " + std::to_string(components) + " components, " + std::to_string(k4s) +
                    " K4s");
}

std::vector<CriterionResult> check_kernel(std::uint64_t seed)
{
    Tally eq(3, "kernel preserves the answer");
    Tally sz(4, "kernel size and family bounds");
    auto corpus = deletion_corpus(1000, 5, 10, 3, seed ^ 0x3);
    std::size_t nontrivial = 0, yes = 0, steps = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto &[g, k] = corpus[i];
        const std::string where = describe(g) + " k=" + std::to_string(k);
        try {
            auto observer = [&](const RuleStep &st) {
                if (i >= 200)
                    return;
                ++steps;
                eq.expect(brute_force_deletion(st.before, st.k_before).has_value() ==
                              brute_force_deletion(st.after, st.k_after).has_value(),
                          st.rule + " changes the answer on " + where);
            };
            auto r = kernelize(g, k, observer);
            const bool expect = brute_force_deletion(g, k).has_value();
            yes += expect ? 1 : 0;
            if (std::holds_alternative<NoInstance>(r)) {
                eq.expect(!expect, "kernel says no on " + where);
                continue;
            }
            const auto &kr = std::get<KernelResult>(r);
            eq.expect(brute_force_deletion(kr.graph, kr.budget).has_value() == expect,
                      "kernel answer differs on " + where);
            nontrivial += kr.trivial ? 0 : 1;
            const auto s = kr.modulator.vertices.size();
            const auto fam = kr.family.members.size();
            sz.expect(BigInt(kr.graph.order()) <= kernel_size_bound(s, fam, kr.budget),
                      "kernel of order " + std::to_string(kr.graph.order()) + " over the bound on " + where);
            sz.expect(BigInt(fam) <= family_size_bound(s),
                      "family of size " + std::to_string(fam) + " over the bound on " + where);
        }
        catch (const std::exception &ex) {
            eq.fail(std::string("exception on ") + where + ": " + ex.what());
        }
    }
    eq.expect(nontrivial > 0, "every instance was answered during preprocessing");
    return {eq.finish("1000 instances (" + std::to_string(yes) + " yes), " + std::to_string(steps) +
                      " rule steps checked"),
            sz.finish(std::to_string(nontrivial) + " non-trivial kernels within bounds")};
}

CriterionResult check_solver_agreement(std::uint64_t seed)
{
    Tally t(5, "branching solvers agree with brute force");
    for (const auto &[g, k] : deletion_corpus(500, 5, 10, 3, seed ^ 0x5)) {
        const std::string where = describe(g) + " k=" + std::to_string(k);
        auto b = branch_deletion(g, k);
        auto f = brute_force_deletion(g, k);
        t.expect(min_size(b) == min_size(f), "deletion disagrees on " + where);
        if (b)
            t.expect(verify_solution(AnnotatedGraph(g), *b), "invalid deletion set on " + where);
    }

    Rng rng(seed ^ 0x55);
    std::uniform_int_distribution<std::size_t> size(5, 8);
    for (int i = 0; i < 200; ++i) {
        const auto n = size(rng);
        AnnotatedGraph ag(i % 4 == 3 ? planted_prison(n, corpus_densities[i % 3], rng)
                                     : erdos_renyi(n, corpus_densities[i % 3], rng));
        for (const auto &e : complement(ag.graph).edges())
            if (rng() % 5 == 0)
                ag.forbid(e);
        const int k = static_cast<int>(rng() % 4);
        const std::string where = describe(ag.graph) + " k=" + std::to_string(k);
        auto b = branch_completion(ag, k);
        auto f = brute_force_completion(ag, k);
        t.expect(min_size(b) == min_size(f), "completion disagrees on " + where);
        if (b)
            t.expect(verify_solution(ag, *b), "invalid completion set on " + where);
    }
    return t.finish("500 deletion and 200 completion instances");
}

CriterionResult check_gadget_properties(std::uint64_t seed)
{
    Tally t(6, "gadget properties");

    // (a)
    {
        AnnotatedGraph host;
        auto h = build_propagational(host);
        const Edge e[3] = {h.labels.at("e1"), h.labels.at("e2"), h.labels.at("e3")};
        t.expect(!has_prison(host.graph), "(a) propagational component has a prison");
        for (int mask = 1; mask < 8; mask += 2) {
            Graph g = host.graph;
            for (int j = 0; j < 3; ++j)
                if (mask >> j & 1)
                    g.add_edge(e[j]);
            if (!has_prison(g))
                t.expect(mask != 1, "(a) e1 alone leaves the component prison-free");
            else
                t.expect(mask == 1, "(a) adding e1 and another output still leaves a prison");
        }
    }

    // (b)
    for (std::size_t ell : {4u, 6u, 8u}) {
        AnnotatedGraph host;
        auto x = build_cloning(host, ell);
        const auto &a = x.roles.at("a");
        const auto &c = x.roles.at("c");
        auto st = propagate_forced(host, {Edge(a[0], c[0])});
        t.expect(!st.conflict, "(b) conflict in cloning component of length " + std::to_string(ell));
        for (std::size_t i = 0; i < ell; ++i)
            t.expect(st.added.count(Edge(a[i], c[i])) == 1,
                     "(b) a_i c_i not forced for i=" + std::to_string(i) + ", length " + std::to_string(ell));
    }

    // (c)
    {
        Rng rng(seed ^ 0x6);
        int tried = 0;
        while (tried < 40) {
            AnnotatedGraph symbolic(tried == 0 ? planted_prison(7, 0.5, rng)
                                               : erdos_renyi(7, corpus_densities[tried % 3], rng));
            auto non = complement(symbolic.graph).edges();
            if (non.empty())
                continue;
            const Edge uv = non[rng() % non.size()];
            symbolic.forbid(uv);
            ++tried;
            AnnotatedGraph realized(realize_forbidden(symbolic, 1));
            const std::string where = describe(symbolic.graph) + " forbidding " + to_string(uv);
            t.expect(min_size(brute_force_completion(symbolic, 1)) == min_size(brute_force_completion(realized, 1)),
                     "(c) minimum completion differs on " + where);
            t.expect(small_completions(symbolic) == small_completions(realized),
                     "(c) completion sets differ on " + where);
            AnnotatedGraph forced = realized;
            forced.graph.add_edge(uv);
            t.expect(!brute_force_completion(forced, 1), "(c) realized pair is cheap on " + where);
        }
    }

    // (d)
    {
        AnnotatedGraph host;
        auto d = build_disjoint_propagational(host);
        const Edge e1 = d.labels.at("e1"), e2 = d.labels.at("e2"), e3 = d.labels.at("e3");
        std::set<Vertex> ends{e1.u, e1.v, e2.u, e2.v, e3.u, e3.v};
        t.expect(ends.size() == 6, "(d) ports share a vertex");
        t.expect(!has_prison(host.graph), "(d) component has a prison");
        for (const Edge &open : {e2, e3}) {
            AnnotatedGraph one = host;
            one.forbid(open == e2 ? e3 : e2);
            t.expect(!propagate_forced(one, {e1}).conflict, "(d) conflict with one output still open");
        }
        AnnotatedGraph blocked = host;
        blocked.forbid(e2);
        blocked.forbid(e3);
        t.expect(propagate_forced(blocked, {e1}).conflict, "(d) no conflict with both outputs forbidden");
        blocked.graph.add_edge(e1);
        t.expect(!brute_force_completion(blocked, 4), "(d) completion exists with both outputs forbidden");
    }
    return t.finish("propagational, cloning 4/6/8, 40 realization hosts, DPC");
}

CriterionResult check_gap_reduction()
{
    Tally t(7, "gap reduction on K4 with l=6");
    try {
        auto gi = k4_gap(6);
        const auto &g = gi.graph.graph;
        const Edge act = gi.activation();
        std::vector<std::vector<Vertex>> k4s;
        for_each_clique(g, 4, [&](const std::vector<Vertex> &q) {
            k4s.push_back(q);
            return true;
        });
        t.expect(k4s.size() == 1, std::to_string(k4s.size()) + " K4s in the instance");
        if (k4s.size() == 1) {
            std::set<Vertex> q(k4s[0].begin(), k4s[0].end());
            t.expect(q.count(act.u) && q.count(act.v), "the K4 misses the activation edge");
        }
        Graph minus = g;
        minus.remove_edge(act);
        t.expect(count_cliques(minus, 4) == 0, "K4 left after removing the activation edge");

        // tl = 18, m = 6
        const std::int64_t lower = 13 * 18 * 18 / 4 - 9 * 18;
        const std::int64_t upper = 13 * 18 * 18 / 4 + 36 * 3 * 6 * 7 + 144 * 49;
        auto sol = constructive_completion_from_cover(gi, {0, 1, 2});
        t.expect(verify_solution(gi.graph, sol), "completion is not prison-free or uses a forbidden pair");
        const auto a = static_cast<std::int64_t>(sol.size());
        t.expect(a >= lower && a <= upper,
                 "|A| = " + std::to_string(a) + " outside [" + std::to_string(lower) + ", " +
                     std::to_string(upper) + "]");
        return t.finish("|V|=" + std::to_string(g.order()) + ", |A|=" + std::to_string(a) + " in [" +
                        std::to_string(lower) + ", " + std::to_string(upper) + "]");
    }
    catch (const std::exception &ex) {
        t.fail(std::string("exception: ") + ex.what());
        return t.finish("");
    }
}

CriterionResult check_composition()
{
    Tally t(8, "composition wiring and leaf forcing");
    try {
        for (std::size_t n : {2u, 3u}) {
            const int ell = minimum_composition_ell(3, 6, n);
            std::vector<GapInstance> ins(n, k4_gap(ell));
            auto ci = compose(ins);
            const std::string tag = "t=" + std::to_string(n) + ": ";
            auto problem = composition_problem(ci);
            t.expect(problem.empty(), tag + problem);
            t.expect(ci.graph.activation && ci.graph.graph.has_edge(*ci.graph.activation),
                     tag + "root input edge missing");
            for (std::size_t leaf = 0; leaf < n; ++leaf) {
                auto pruned = prune_to_leaf(ci, leaf);
                auto st = propagate_forced(pruned, {});
                t.expect(!st.conflict, tag + "conflict when pruning to leaf " + std::to_string(leaf));
                t.expect(st.added.count(ci.activations[leaf]) == 1,
                         tag + "activation of leaf " + std::to_string(leaf) + " not forced");
            }
        }
    }
    catch (const std::exception &ex) {
        t.fail(std::string("exception: ") + ex.what());
    }
    return t.finish("t=2 and t=3, every leaf forced");
}

std::vector<CriterionResult> run_suite(const std::string &suite, std::uint64_t seed)
{
    const bool all = suite == "all";
    if (!all && suite != "structure" && suite != "kernel" && suite != "solvers" && suite != "gadgets" &&
        suite != "reductions")
        throw std::invalid_argument("unknown suite '" + suite + "'");
    std::vector<CriterionResult> out;
    if (all || suite == "structure") {
        out.push_back(check_structure_equivalence(seed));
        out.push_back(check_cmd4_decomposition(seed));
    }
    if (all || suite == "kernel")
        for (auto &r : check_kernel(seed))
            out.push_back(std::move(r));
    if (all || suite == "solvers")
        out.push_back(check_solver_agreement(seed));
    if (all || suite == "gadgets")
        out.push_back(check_gadget_properties(seed));
    if (all || suite == "reductions") {
        out.push_back(check_gap_reduction());
        out.push_back(check_composition());
    }
    return out;
}

std::string format_result(const CriterionResult &r)
{
    char head[64];
    std::snprintf(head, sizeof head, "[%s] %d ", r.passed ? "PASS" : "FAIL", r.id);
    char tail[64];
    std::snprintf(tail, sizeof tail, " (%llu checks, %.2fs)", static_cast<unsigned long long>(r.checks), r.seconds);
    return head + r.name + ": " + r.detail + tail;
}

}
