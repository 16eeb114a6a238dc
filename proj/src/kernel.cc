#include "pfree/kernel.hh"
#include "pfree/io.hh"
#include "pfree/sunflower.hh"

#include <algorithm>
#include <map>
#include <set>

namespace pfree {

namespace {

bool inside(const VertexSet &s, Vertex v) { return v < s.size() && s.test(v); }

bool inside(const VertexSet &s, const Edge &e) { return inside(s, e.u) && inside(s, e.v); }

std::vector<Edge> induced_edges(const Graph &g, const std::vector<Vertex> &vs)
{
    std::vector<Edge> out;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (g.has_edge(vs[i], vs[j]))
                out.emplace_back(vs[i], vs[j]);
    return out;
}

// All subsets of `items` with the given size, lexicographic.
std::vector<std::vector<Vertex>> combinations(const std::vector<Vertex> &items, std::size_t size)
{
    std::vector<std::vector<Vertex>> out;
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i)
        idx[i] = i;
    if (size > items.size())
        return out;
    while (true) {
        std::vector<Vertex> c;
        for (auto i : idx)
            c.push_back(items[i]);
        out.push_back(std::move(c));
        std::size_t i = size;
        while (i > 0 && idx[i - 1] == items.size() - size + i - 1)
            --i;
        if (i == 0)
            break;
        ++idx[i - 1];
        for (std::size_t j = i; j < size; ++j)
            idx[j] = idx[j - 1] + 1;
    }
    return out;
}

unsigned pattern(const Graph &g, Vertex v, const std::vector<Vertex> &sub)
{
    unsigned p = 0;
    for (std::size_t i = 0; i < sub.size(); ++i)
        if (g.has_edge(v, sub[i]))
            p |= 1u << i;
    return p;
}

// Up to `cap` smallest vertices of `pool` per neighbourhood pattern on every S'.
void mark_patterns(const Graph &g, const std::vector<std::vector<Vertex>> &subsets,
                   const std::vector<Vertex> &pool, std::size_t cap, std::set<Vertex> &out)
{
    for (const auto &sub : subsets) {
        std::map<unsigned, std::size_t> taken;
        for (Vertex v : pool) {
            auto &n = taken[pattern(g, v, sub)];
            if (n < cap) {
                ++n;
                out.insert(v);
            }
        }
    }
}

std::vector<std::vector<Vertex>> pattern_subsets(const VertexSet &s)
{
    auto sv = to_vector(s);
    return combinations(sv, std::min<std::size_t>(4, sv.size()));
}

}

nlohmann::json to_json(const TraceEvent &ev)
{
    nlohmann::json j;
    j["rule"] = ev.rule;
    j["edges"] = nlohmann::json::array();
    for (const auto &e : ev.edges)
        j["edges"].push_back(edge_to_json(e));
    j["vertices"] = ev.vertices;
    j["k_after"] = ev.k_after;
    if (!ev.note.empty())
        j["note"] = ev.note;
    return j;
}

nlohmann::json trace_to_json(const std::vector<TraceEvent> &trace)
{
    auto j = nlohmann::json::array();
    for (const auto &ev : trace)
        j.push_back(to_json(ev));
    return j;
}

BigInt sunflower_threshold(int k)
{
    BigInt t = 40320;
    BigInt base = k + 1;
    for (int i = 0; i < 8; ++i)
        t *= base;
    return t;
}

std::variant<NoInstance, Modulator> compute_modulator_with_threshold(const Graph &g, int k, const BigInt &threshold)
{
    if (k < 0)
        throw std::invalid_argument("budget must be non-negative");
    Modulator mod;
    mod.family = enumerate_prisons(g);
    while (BigInt(mod.family.size()) >= threshold && !mod.family.empty()) {
        std::vector<std::vector<Edge>> sets;
        for (const auto &p : mod.family)
            sets.push_back(p.edges());
        auto sf = find_sunflower(sets, static_cast<std::size_t>(k) + 2);
        if (!sf)
            break;   // only possible below the sunflower threshold
        if (sf->core.empty()) {
            NoInstance no;
            no.reason = std::to_string(k + 2) + " edge-disjoint prisons";
            TraceEvent ev{"modulator", {}, {}, k, no.reason};
            for (auto i : sf->members)
                for (auto v : mod.family[i].vertices)
                    ev.vertices.push_back(v);
            no.trace.push_back(std::move(ev));
            return no;
        }
        auto drop = *std::min_element(sf->members.begin(), sf->members.end());
        mod.dropped.push_back(mod.family[drop]);
        mod.family.erase(mod.family.begin() + static_cast<std::ptrdiff_t>(drop));
    }
    std::set<Vertex> vs;
    for (const auto &p : mod.family)
        vs.insert(p.vertices.begin(), p.vertices.end());
    mod.vertices.assign(vs.begin(), vs.end());
    if (BigInt(mod.vertices.size()) > 5 * sunflower_threshold(k))
        throw StructuralAssumptionError("modulator exceeds 5*8!*(k+1)^8 vertices");
    return mod;
}

std::variant<NoInstance, Modulator> compute_modulator(const Graph &g, int k)
{
    return compute_modulator_with_threshold(g, k, sunflower_threshold(k));
}

std::optional<Rr1Result> apply_rr1(const Graph &g, const VertexSet &s)
{
    for (const auto &e : g.edges()) {
        if (inside(s, e) || edge_in_strict_supergraph(g, e))
            continue;
        Rr1Result r{g, e};
        r.graph.remove_edge(e);
        return r;
    }
    return std::nullopt;
}

std::optional<Rr2Result> apply_rr2(const Graph &g, int k, const VertexSet &s)
{
    for (const auto &p : enumerate_prisons(g)) {
        std::optional<Edge> only;
        int count = 0;
        for (const auto &e : p.edges())
            if (inside(s, e)) {
                ++count;
                only = e;
            }
        if (count != 1)
            continue;
        Rr2Result r{g, k - 1, *only, p};
        r.graph.remove_edge(*only);
        return r;
    }
    return std::nullopt;
}

std::vector<MultipartiteComponent> cmd3_outside(const Graph &g, const VertexSet &s)
{
    std::vector<Vertex> outside;
    for (Vertex v = 0; v < g.order(); ++v)
        if (!inside(s, v))
            outside.push_back(v);
    auto sub = induced_subgraph(g, outside);
    auto comps = cmd(sub.graph, 3);
    // old_ids is increasing, so sortedness survives the relabelling
    for (auto &c : comps) {
        for (auto &v : c.vertices)
            v = sub.old_ids[v];
        for (auto &cl : c.classes)
            for (auto &v : cl)
                v = sub.old_ids[v];
    }
    return comps;
}

std::optional<Rr3Result> apply_rr3(const Graph &g, const VertexSet &s)
{
    for (const auto &fp : cmd3_outside(g, s)) {
        auto grown = fp.vertices;
        for_each_vertex(s, [&](Vertex v) {
            if (classes_seen(g, fp, v) >= 2)
                grown.push_back(v);
        });
        std::sort(grown.begin(), grown.end());
        auto f = multipartite_structure(g, grown);
        if (!f)
            continue;
        // with at least three classes, seeing one class at most rules out extension,
        // so this also gives maximality
        bool separated = true;
        for (Vertex v = 0; v < g.order() && separated; ++v)
            if (!std::binary_search(grown.begin(), grown.end(), v) && classes_seen(g, *f, v) > 1)
                separated = false;
        if (!separated)
            continue;
        Rr3Result r{g, {}, *f};
        for (const auto &e : induced_edges(g, grown)) {
            r.graph.remove_edge(e);
            r.removed.insert(e);
        }
        return r;
    }
    return std::nullopt;
}

std::map<Edge, EdgeSet> compute_B_partition(const Graph &g, const VertexSet &s)
{
    EdgeSet b;
    for (const auto &e : g.edges()) {
        if (inside(s, e.u) || inside(s, e.v))
            continue;
        auto common = g.neighbors(e.u) & g.neighbors(e.v);
        bool triangle = false;
        for_each_vertex(common, [&](Vertex w) { triangle = triangle || !inside(s, w); });
        if (!triangle)
            b.insert(e);
    }

    std::map<Edge, EdgeSet> blocks;
    EdgeSet covered;
    for (const auto &e : g.edges()) {
        if (!inside(s, e))
            continue;
        auto common = g.neighbors(e.u) & g.neighbors(e.v);
        EdgeSet block;
        for (const auto &f : b)
            if (common.test(f.u) && common.test(f.v))
                block.insert(f);
        if (block.empty())
            continue;
        bool repeat = false;
        for (const auto &[label, other] : blocks) {
            if (other == block) {
                repeat = true;
                break;
            }
            for (const auto &f : block)
                if (other.count(f))
                    throw StructuralAssumptionError("blocks " + to_string(label) + " and " + to_string(e) +
                                                    " overlap without being equal");
        }
        if (repeat)
            continue;
        covered.insert(block.begin(), block.end());
        blocks.emplace(e, std::move(block));
    }
    if (covered != b)
        throw StructuralAssumptionError("triangle-free edges outside S not covered by the blocks");

    for (const auto &[label, block] : blocks) {
        std::set<Vertex> vs;
        for (const auto &f : block) {
            vs.insert(f.u);
            vs.insert(f.v);
        }
        std::vector<Vertex> vv(vs.begin(), vs.end());
        auto mc = multipartite_structure(g, vv);
        if (!mc || mc->classes.size() != 2 || induced_edges(g, vv).size() != block.size())
            throw StructuralAssumptionError("block of " + to_string(label) + " is not complete bipartite");
    }
    return blocks;
}

BigInt family_size_bound(std::size_t s)
{
    BigInt x = s;
    return x * x * x + x * x;
}

FFamily compute_F_family(const Graph &g, const VertexSet &s)
{
    FFamily fam;
    for (auto &c : cmd3_outside(g, s)) {
        FamilyMember m;
        auto es = induced_edges(g, c.vertices);
        m.edges = EdgeSet(es.begin(), es.end());
        m.component = std::move(c);
        fam.members.push_back(std::move(m));
    }
    for (auto &[label, block] : compute_B_partition(g, s)) {
        std::set<Vertex> vs;
        for (const auto &f : block) {
            vs.insert(f.u);
            vs.insert(f.v);
        }
        std::vector<Vertex> vv(vs.begin(), vs.end());
        FamilyMember m;
        m.component = *multipartite_structure(g, vv);
        m.kind = FamilyKind::BipartiteBlock;
        m.label = label;
        m.edges = block;
        fam.members.push_back(std::move(m));
    }

    std::map<Edge, std::size_t> owner;
    for (std::size_t i = 0; i < fam.members.size(); ++i)
        for (const auto &e : fam.members[i].edges)
            if (!owner.emplace(e, i).second)
                throw StructuralAssumptionError("edge " + to_string(e) + " lies in two members of the family");
    for (const auto &e : g.edges())
        if (!inside(s, e.u) && !inside(s, e.v) && !owner.count(e))
            throw StructuralAssumptionError("edge " + to_string(e) + " outside S is not covered by the family");
    if (BigInt(fam.members.size()) > family_size_bound(s.count()))
        throw StructuralAssumptionError("family exceeds |S|^3 + |S|^2 members");
    return fam;
}

ClassTyping classify_classes(const MultipartiteComponent &f, const Graph &g, const VertexSet &s)
{
    const auto nc = f.classes.size();
    std::vector<bool> type1(nc, false);
    for_each_vertex(s, [&](Vertex sv) {
        // per class: how many of its vertices are neighbours of sv
        std::vector<std::size_t> hit(nc, 0);
        std::size_t total = 0;
        for (std::size_t c = 0; c < nc; ++c) {
            for (auto v : f.classes[c])
                if (g.has_edge(sv, v))
                    ++hit[c];
            total += hit[c];
        }
        if (total == 0)
            return;
        bool shape = total == f.vertices.size();
        for (std::size_t c = 0; c < nc; ++c) {
            bool subset = hit[c] == total;
            bool all_but = hit[c] == 0 && total == f.vertices.size() - f.classes[c].size();
            if (subset || all_but) {
                type1[c] = true;
                shape = true;
            }
        }
        if (!shape)
            throw StructuralAssumptionError("vertex " + std::to_string(sv) +
                                            " meets a family member in an unexpected way");
    });
    ClassTyping t;
    for (std::size_t c = 0; c < nc; ++c)
        (type1[c] ? t.type1 : t.type2).push_back(c);
    if (t.type1.size() > s.count())
        throw StructuralAssumptionError("more Type 1 classes than modulator vertices");
    return t;
}

MarkedSets mark(const Graph &g, const VertexSet &s, const FFamily &fam, int k)
{
    const std::size_t cap = 2 * static_cast<std::size_t>(k) + 5;
    auto subsets = pattern_subsets(s);
    MarkedSets out;
    VertexSet in_family = g.empty_set();
    for (const auto &m : fam.members) {
        const auto &f = m.component;
        for (auto v : f.vertices)
            in_family.set(v);
        auto typing = classify_classes(f, g, s);
        std::set<Vertex> mf;
        for (auto c : typing.type1)
            mark_patterns(g, subsets, f.classes[c], cap, mf);
        for (std::size_t i = 0; i < typing.type2.size() && i < cap; ++i) {
            const auto &cl = f.classes[typing.type2[i]];
            mf.insert(cl.begin(), cl.begin() + static_cast<std::ptrdiff_t>(std::min(cap, cl.size())));
        }
        out.per_component.emplace_back(mf.begin(), mf.end());
    }
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < g.order(); ++v)
        if (!inside(s, v) && !in_family.test(v))
            rest.push_back(v);
    std::set<Vertex> me;
    mark_patterns(g, subsets, rest, cap, me);
    out.outside.assign(me.begin(), me.end());
    return out;
}

BigInt kernel_size_bound(std::size_t s, std::size_t family, int k)
{
    BigInt sv = s, c = 2 * k + 5;
    BigInt s4 = sv * sv * sv * sv;
    return sv + s4 * c + BigInt(family) * (s4 * sv * c + c * c);
}

namespace {

KernelResult trivial_yes(std::vector<TraceEvent> trace, std::string why)
{
    KernelResult r;
    r.trivial = true;
    trace.push_back({"short-circuit", {}, {}, 0, std::move(why)});
    r.trace = std::move(trace);
    return r;
}

}

std::variant<NoInstance, KernelResult> kernelize(const Graph &g, int k,
                                                 const std::function<void(const RuleStep &)> &observer)
{
    if (k < 0)
        throw std::invalid_argument("budget must be non-negative");
    std::vector<TraceEvent> trace;
    if (g.order() < 5 || g.size() == 0)
        return trivial_yes(trace, "fewer than five vertices or no edges");
    if (k == 0) {
        if (has_prison(g)) {
            NoInstance no{"budget 0 and the graph has a prison", trace};
            no.trace.push_back({"no-instance", {}, {}, 0, no.reason});
            return no;
        }
        return trivial_yes(trace, "budget 0 and prison-free");
    }

    auto mv = compute_modulator(g, k);
    if (auto *no = std::get_if<NoInstance>(&mv))
        return *no;
    auto mod = std::get<Modulator>(std::move(mv));
    trace.push_back({"modulator", {}, mod.vertices, k,
                     "prisons=" + std::to_string(mod.family.size()) + " dropped=" + std::to_string(mod.dropped.size())});
    if (mod.vertices.empty())
        return trivial_yes(trace, "prison-free");

    const VertexSet s = to_set(g.order(), mod.vertices);
    Graph cur = g;
    int kk = k;
    auto step = [&](const char *rule, Graph next, int k_next, std::vector<Edge> edges, std::vector<Vertex> vs) {
        if (observer)
            observer(RuleStep{rule, cur, kk, next, k_next});
        trace.push_back({rule, std::move(edges), std::move(vs), k_next, {}});
        cur = std::move(next);
        kk = k_next;
    };
    while (true) {
        if (auto r = apply_rr1(cur, s)) {
            step("RR1", std::move(r->graph), kk, {r->deleted}, {});
            continue;
        }
        if (auto r = apply_rr2(cur, kk, s)) {
            step("RR2", std::move(r->graph), r->k, {r->deleted},
                 std::vector<Vertex>(r->prison.vertices.begin(), r->prison.vertices.end()));
            continue;
        }
        if (auto r = apply_rr3(cur, s)) {
            step("RR3", std::move(r->graph), kk, std::vector<Edge>(r->removed.begin(), r->removed.end()),
                 r->component.vertices);
            continue;
        }
        break;
    }
    if (kk < 0) {
        NoInstance no{"budget exhausted by forced deletions", std::move(trace)};
        no.trace.push_back({"no-instance", {}, {}, kk, no.reason});
        return no;
    }

    KernelResult res;
    res.modulator = std::move(mod);
    res.reduced = cur;
    res.family = compute_F_family(cur, s);
    std::size_t t1 = 0, t2 = 0;
    for (const auto &m : res.family.members) {
        res.typing.push_back(classify_classes(m.component, cur, s));
        t1 += res.typing.back().type1.size();
        t2 += res.typing.back().type2.size();
    }
    trace.push_back({"family", {}, {}, kk, "members=" + std::to_string(res.family.members.size())});
    trace.push_back({"typing", {}, {}, kk, "type1=" + std::to_string(t1) + " type2=" + std::to_string(t2)});
    res.marks = mark(cur, s, res.family, kk);

    VertexSet keep = s;
    for (const auto &mf : res.marks.per_component)
        for (auto v : mf)
            keep.set(v);
    for (auto v : res.marks.outside)
        keep.set(v);
    auto sub = induced_subgraph(cur, keep);
    res.graph = std::move(sub.graph);
    res.kept = std::move(sub.old_ids);
    res.budget = kk;
    trace.push_back({"marking", {}, res.kept, kk, {}});
    res.trace = std::move(trace);
    return res;
}

}
