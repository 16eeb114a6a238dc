#include "pfree/gadgets.hh"
#include "pfree/io.hh"
#include "pfree/structure.hh"

#include <algorithm>
#include <map>
#include <set>

namespace pfree {

namespace {

// propagational component on local offsets 0..4
constexpr std::array<std::pair<int, int>, 7> prop_edges{{{0, 2}, {2, 4}, {4, 1}, {1, 3}, {3, 0}, {4, 0}, {2, 3}}};

// disjoint propagational component, figure numbering
constexpr std::array<std::pair<int, int>, 21> dpc_edges{{{1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5},
                                                          {3, 9}, {3, 10}, {3, 11}, {4, 6}, {4, 7}, {4, 8},
                                                          {5, 9}, {5, 10}, {5, 11}, {5, 6}, {5, 7}, {5, 8},
                                                          {3, 4}, {9, 10}, {6, 7}}};

void connect(Graph &g, Vertex a, Vertex b)
{
    g.set_edge(a, b, true);
}

std::vector<Vertex> fresh(Graph &g, std::size_t count)
{
    Vertex first = g.add_vertices(count);
    std::vector<Vertex> vs(count);
    for (std::size_t i = 0; i < count; ++i)
        vs[i] = first + static_cast<Vertex>(i);
    return vs;
}

nlohmann::json cloning_json(const CloningRoles &r)
{
    return {{"a", r.a}, {"b", r.b}, {"c", r.c}};
}

CloningRoles cloning_from_json(const nlohmann::json &j)
{
    return {j.at("a").get<std::vector<Vertex>>(), j.at("b").get<std::vector<Vertex>>(),
            j.at("c").get<std::vector<Vertex>>()};
}

CloningRoles cloning_roles(const GadgetHandle &h)
{
    return {h.roles.at("a"), h.roles.at("b"), h.roles.at("c")};
}

Port pair_of(const CloningRoles &x, std::size_t j)
{
    return {x.a.at(j - 1), x.c.at(j - 1)};
}

std::int64_t quarter13(std::int64_t x)
{
    // 13 x^2 / 4, exact for even x
    return 13 * x * x / 4;
}

}

GadgetHandle build_propagational(AnnotatedGraph &host)
{
    GadgetHandle h;
    h.vertices = fresh(host.graph, 5);
    for (auto [a, b] : prop_edges)
        connect(host.graph, h.vertices[a], h.vertices[b]);
    h.labels["e1"] = Edge(h.vertices[3], h.vertices[4]);
    h.labels["e2"] = Edge(h.vertices[0], h.vertices[1]);
    h.labels["e3"] = Edge(h.vertices[1], h.vertices[2]);
    return h;
}

GadgetHandle build_forbidden_realization(AnnotatedGraph &host, Vertex u, Vertex v, int k)
{
    host.graph.check_vertex(u);
    host.graph.check_vertex(v);
    if (u == v || host.graph.has_edge(u, v))
        throw std::invalid_argument("realized pair " + to_string(Edge(u, v)) + " must be a non-edge");
    if (k < 0)
        throw std::invalid_argument("budget must be non-negative");
    GadgetHandle h;
    h.vertices = fresh(host.graph, 3 * (static_cast<std::size_t>(k) + 1));
    for (int i = 0; i <= k; ++i) {
        std::array<Vertex, 4> block{u, h.vertices[3 * i], h.vertices[3 * i + 1], h.vertices[3 * i + 2]};
        for (int x = 0; x < 4; ++x)
            for (int y = x + 1; y < 4; ++y)
                connect(host.graph, block[x], block[y]);
        connect(host.graph, block[3], v);
    }
    h.labels["forbidden"] = Edge(u, v);
    return h;
}

GadgetHandle build_cloning(AnnotatedGraph &host, std::size_t ell)
{
    if (ell < 4)
        throw std::invalid_argument("cloning component needs length at least 4");
    GadgetHandle h;
    h.vertices = fresh(host.graph, 3 * ell);
    std::vector<Vertex> a(h.vertices.begin(), h.vertices.begin() + ell);
    std::vector<Vertex> b(h.vertices.begin() + ell, h.vertices.begin() + 2 * ell);
    std::vector<Vertex> c(h.vertices.begin() + 2 * ell, h.vertices.end());
    for (std::size_t i = 0; i < ell; ++i) {
        std::size_t n = (i + 1) % ell;
        std::array<Vertex, 5> t{a[n], c[n], b[i], c[i], a[i]};
        for (auto [x, y] : prop_edges)
            connect(host.graph, t[x], t[y]);
        auto idx = "[" + std::to_string(i) + "]";
        h.labels["e1" + idx] = Edge(a[i], c[i]);
        h.labels["e2" + idx] = Edge(a[n], c[n]);
        h.labels["e3" + idx] = Edge(c[n], b[i]);
    }
    for (std::size_t i = 0; i < ell; ++i)
        host.forbid(Edge(c[(i + 1) % ell], b[i]));
    h.roles["a"] = a;
    h.roles["b"] = b;
    h.roles["c"] = c;
    return h;
}

Port cloning_pair(const GadgetHandle &x, std::size_t j)
{
    if (j < 1 || j > x.roles.at("a").size())
        throw std::out_of_range("cloning pair index out of range");
    return pair_of(cloning_roles(x), j);
}

GadgetHandle build_disjoint_propagational(AnnotatedGraph &host, const DpcPorts &ports)
{
    std::array<std::optional<Vertex>, 12> v;   // 1-based
    auto bind = [&](const std::optional<Port> &p, int first, int second) {
        if (!p)
            return;
        host.graph.check_vertex(p->first);
        host.graph.check_vertex(p->second);
        v[first] = p->first;
        v[second] = p->second;
    };
    bind(ports.input, 1, 2);
    bind(ports.out2, 10, 11);
    bind(ports.out3, 6, 8);
    std::set<Vertex> bound;
    std::size_t missing = 0;
    for (int i = 1; i <= 11; ++i) {
        if (v[i])
            bound.insert(*v[i]);
        else
            ++missing;
    }
    if (bound.size() + missing != 11)
        throw std::invalid_argument("ports of a disjoint propagational component must be vertex-disjoint");
    Vertex next = host.graph.add_vertices(missing);
    GadgetHandle h;
    for (int i = 1; i <= 11; ++i) {
        if (!v[i])
            v[i] = next++;
        h.vertices.push_back(*v[i]);
    }
    for (auto [a, b] : dpc_edges)
        connect(host.graph, *v[a], *v[b]);
    host.forbid(Edge(*v[7], *v[8]));
    host.forbid(Edge(*v[9], *v[11]));
    h.labels["e1"] = Edge(*v[1], *v[2]);
    h.labels["e2"] = Edge(*v[10], *v[11]);
    h.labels["e3"] = Edge(*v[6], *v[8]);
    h.roles["v"] = h.vertices;
    return h;
}

Graph realize_forbidden(const AnnotatedGraph &g, int k)
{
    AnnotatedGraph out(g.graph);
    for (const auto &e : g.forbidden)
        build_forbidden_realization(out, e.u, e.v, k);
    return out.graph;
}

std::int64_t gap_upper_bound(std::int64_t t, std::int64_t ell, std::int64_t m)
{
    return quarter13(t * ell) + 36 * t * ell * (m + 1) + 144 * (m + 1) * (m + 1);
}

std::int64_t gap_lower_bound(std::int64_t t, std::int64_t ell)
{
    return quarter13(t * ell) - 9 * t * ell;
}

nlohmann::json GapInstance::roles() const
{
    nlohmann::json j;
    j["kind"] = "gap";
    j["ell"] = ell;
    j["t"] = t;
    j["n_h"] = n_h;
    j["h_edges"] = nlohmann::json::array();
    for (const auto &e : h_edges)
        j["h_edges"].push_back(edge_to_json(e));
    j["x0"] = cloning_json(x0);
    j["x"] = nlohmann::json::array();
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto xi = cloning_json(x[i]);
        xi["slots"] = slots[i];
        j["x"].push_back(xi);
    }
    j["dpc"] = nlohmann::json::array();
    for (const auto &d : dpc)
        j["dpc"].push_back({{"h_edge", edge_to_json(d.h_edge)}, {"v", d.v}, {"slot_a", d.slot_a}, {"slot_b", d.slot_b}});
    j["s"] = s;
    return j;
}

GapInstance GapInstance::from_annotated(const AnnotatedGraph &ag)
{
    const auto &m = ag.meta;
    if (!m.is_object() || m.value("kind", "") != "gap")
        throw std::invalid_argument("annotated graph carries no gap-instance roles");
    if (!ag.activation || !ag.k || !ag.g)
        throw std::invalid_argument("gap instance needs activation, k and g");
    GapInstance gi;
    gi.graph = ag;
    gi.k = *ag.k;
    gi.g = *ag.g;
    gi.ell = m.at("ell").get<int>();
    gi.t = m.at("t").get<int>();
    gi.n_h = m.at("n_h").get<std::size_t>();
    for (const auto &e : m.at("h_edges"))
        gi.h_edges.push_back(edge_from_json(e));
    gi.x0 = cloning_from_json(m.at("x0"));
    for (const auto &xi : m.at("x")) {
        gi.x.push_back(cloning_from_json(xi));
        gi.slots.push_back(xi.at("slots").get<std::array<std::size_t, 3>>());
    }
    for (const auto &d : m.at("dpc")) {
        DpcRoles r;
        r.h_edge = edge_from_json(d.at("h_edge"));
        r.v = d.at("v").get<std::array<Vertex, 11>>();
        r.slot_a = d.at("slot_a").get<std::size_t>();
        r.slot_b = d.at("slot_b").get<std::size_t>();
        gi.dpc.push_back(r);
    }
    gi.s = m.at("s").get<std::array<std::vector<Vertex>, 4>>();
    return gi;
}

GapInstance reduce_vc_to_gap(const VCInstance &vc, int ell)
{
    const auto &hg = vc.h;
    for (Vertex v = 0; v < hg.order(); ++v)
        if (hg.degree(v) != 3)
            throw std::invalid_argument("vertex " + std::to_string(v) + " of H has degree " +
                                        std::to_string(hg.degree(v)) + ", expected 3");
    if (ell < 6 || ell % 2 != 0)
        throw std::invalid_argument("ell must be even and at least 6");
    if (vc.t < 0)
        throw std::invalid_argument("cover budget must be non-negative");

    GapInstance gi;
    gi.ell = ell;
    gi.t = vc.t;
    gi.n_h = hg.order();
    gi.h_edges = hg.edges();
    const std::size_t m = gi.h_edges.size();
    const auto len = static_cast<std::size_t>(ell);
    auto &host = gi.graph;

    auto x0 = build_cloning(host, m + 1);
    gi.x0 = cloning_roles(x0);
    Edge act(gi.x0.a[m], gi.x0.c[m]);   // X0.e_{m+1}
    host.graph.add_edge(act);
    host.activation = act;
    host.name("activation", act);

    for (Vertex v = 0; v < hg.order(); ++v) {
        auto xi = build_cloning(host, len);
        gi.x.push_back(cloning_roles(xi));
        gi.slots.push_back({1, len / 3 + 1, 2 * len / 3 + 1});
    }

    std::vector<std::size_t> used(hg.order(), 0);
    for (std::size_t j = 0; j < m; ++j) {
        const auto &e = gi.h_edges[j];
        DpcRoles r;
        r.h_edge = e;
        r.slot_a = gi.slots[e.u][used[e.u]++];
        r.slot_b = gi.slots[e.v][used[e.v]++];
        DpcPorts ports{pair_of(gi.x0, j + 1), pair_of(gi.x[e.u], r.slot_a), pair_of(gi.x[e.v], r.slot_b)};
        auto d = build_disjoint_propagational(host, ports);
        std::copy(d.vertices.begin(), d.vertices.end(), r.v.begin());
        gi.dpc.push_back(r);
    }

    for (const auto &xi : gi.x)
        for (std::size_t i = 0; i < len; ++i) {
            bool even = i % 2 == 0;
            gi.s[even ? 0 : 1].push_back(xi.a[i]);
            gi.s[even ? 2 : 3].push_back(xi.c[i]);
            gi.s[even ? 3 : 2].push_back(xi.b[i]);
        }
    for (auto &part : gi.s) {
        std::sort(part.begin(), part.end());
        for (std::size_t p = 0; p < part.size(); ++p)
            for (std::size_t q = p + 1; q < part.size(); ++q)
                host.forbid(Edge(part[p], part[q]));
    }

    gi.k = gap_upper_bound(vc.t, ell, static_cast<std::int64_t>(m));
    gi.g = gap_lower_bound(vc.t + 1, ell) - gi.k;
    host.k = gi.k;
    host.g = gi.g;
    host.meta = gi.roles();

    // self-checks
    const std::size_t expect_n = 3 * hg.order() * len + 3 * (m + 1) + 5 * m;
    if (host.graph.order() != expect_n)
        throw InvariantViolation("gap instance has " + std::to_string(host.graph.order()) + " vertices, expected " +
                                 std::to_string(expect_n));
    std::vector<std::vector<Vertex>> k4s;
    for_each_clique(host.graph, 4, [&](const std::vector<Vertex> &q) {
        k4s.push_back(q);
        return k4s.size() < 2;
    });
    if (k4s.size() != 1 || !std::count(k4s[0].begin(), k4s[0].end(), act.u) ||
        !std::count(k4s[0].begin(), k4s[0].end(), act.v))
        throw InvariantViolation("gap instance must have exactly one K4, through the activation edge");
    Graph without = host.graph;
    without.remove_edge(act);
    if (count_cliques(without, 4) != 0)
        throw InvariantViolation("gap instance minus the activation edge contains a K4");
    EdgeSet expect_forbidden;
    auto add_cloning = [&](const CloningRoles &r) {
        for (std::size_t i = 0; i < r.a.size(); ++i)
            expect_forbidden.insert(Edge(r.c[(i + 1) % r.a.size()], r.b[i]));
    };
    add_cloning(gi.x0);
    for (const auto &xi : gi.x)
        add_cloning(xi);
    for (const auto &d : gi.dpc) {
        expect_forbidden.insert(Edge(d.v[6], d.v[7]));
        expect_forbidden.insert(Edge(d.v[8], d.v[10]));
    }
    for (const auto &part : gi.s)
        for (std::size_t p = 0; p < part.size(); ++p)
            for (std::size_t q = p + 1; q < part.size(); ++q)
                expect_forbidden.insert(Edge(part[p], part[q]));
    if (expect_forbidden != host.forbidden)
        throw InvariantViolation("gap instance forbidden set differs from the specified one");
    host.validate();
    return gi;
}

Solution constructive_completion_from_cover(const GapInstance &gi, const std::vector<Vertex> &cover)
{
    std::vector<bool> in_cover(gi.n_h, false);
    for (auto v : cover) {
        if (v >= gi.n_h)
            throw std::invalid_argument("cover vertex out of range");
        in_cover[v] = true;
    }
    for (const auto &e : gi.h_edges)
        if (!in_cover[e.u] && !in_cover[e.v])
            throw std::invalid_argument("not a vertex cover: edge " + to_string(e) + " is uncovered");
    const std::size_t t = static_cast<std::size_t>(std::count(in_cover.begin(), in_cover.end(), true));

    std::map<Vertex, int> part;
    int next_part = 0;
    auto fresh_part = [&] { return next_part++; };
    auto place = [&](Vertex v, int p) {
        auto [it, ok] = part.emplace(v, p);
        if (!ok && it->second != p)
            throw InvariantViolation("vertex " + std::to_string(v) + " placed in two parts");
    };

    // S1..S4 restricted to the covered X_i
    std::array<int, 4> sp{fresh_part(), fresh_part(), fresh_part(), fresh_part()};
    for (Vertex i = 0; i < gi.n_h; ++i) {
        if (!in_cover[i])
            continue;
        const auto &xi = gi.x[i];
        for (std::size_t j = 0; j < xi.a.size(); ++j) {
            bool even = j % 2 == 0;
            place(xi.a[j], sp[even ? 0 : 1]);
            place(xi.c[j], sp[even ? 2 : 3]);
            place(xi.b[j], sp[even ? 3 : 2]);
        }
    }

    // X0: a_i by parity and d_i = {c_{i+1}, b_i} by parity; an odd length puts
    // the wrap-around a and d in parts of their own
    const auto l0 = gi.x0.a.size();
    std::array<int, 2> ap{fresh_part(), fresh_part()}, dp{fresh_part(), fresh_part()};
    int a_last = l0 % 2 ? fresh_part() : -1, d_last = l0 % 2 ? fresh_part() : -1;
    for (std::size_t i = 0; i < l0; ++i) {
        bool wrap = l0 % 2 && i == l0 - 1;
        place(gi.x0.a[i], wrap ? a_last : ap[i % 2]);
        int d = wrap ? d_last : dp[i % 2];
        place(gi.x0.c[(i + 1) % l0], d);
        place(gi.x0.b[i], d);
    }

    for (const auto &d : gi.dpc) {
        auto v = [&](int i) { return d.v[i - 1]; };
        bool ca = in_cover[d.h_edge.u], cb = in_cover[d.h_edge.v];
        if (ca && cb) {
            place(v(9), part.at(v(11)));
            place(v(7), part.at(v(8)));
            place(v(3), fresh_part());
            place(v(4), fresh_part());
            place(v(5), fresh_part());
        }
        else if (ca) {
            place(v(9), part.at(v(11)));
            place(v(3), fresh_part());
            int p = fresh_part();
            place(v(4), p);
            place(v(5), p);
        }
        else {
            // mirror image of the previous case
            place(v(7), part.at(v(8)));
            place(v(4), fresh_part());
            int p = fresh_part();
            place(v(3), p);
            place(v(5), p);
        }
    }

    Solution sol;
    sol.mode = EditMode::Completion;
    std::vector<std::pair<Vertex, int>> placed(part.begin(), part.end());
    for (std::size_t i = 0; i < placed.size(); ++i)
        for (std::size_t j = i + 1; j < placed.size(); ++j) {
            auto [u, pu] = placed[i];
            auto [w, pw] = placed[j];
            if (pu == pw) {
                if (gi.graph.graph.has_edge(u, w))
                    throw InvariantViolation("part contains the edge " + to_string(Edge(u, w)));
                continue;
            }
            if (!gi.graph.graph.has_edge(u, w))
                sol.edits.insert(Edge(u, w));
        }

    for (const auto &e : sol.edits)
        if (gi.graph.is_forbidden(e))
            throw InvariantViolation("completion uses the forbidden pair " + to_string(e));
    if (!verify_solution(gi.graph, sol))
        throw InvariantViolation("completion from the cover leaves a prison");
    const auto m = static_cast<std::int64_t>(gi.h_edges.size());
    const auto size = static_cast<std::int64_t>(sol.size());
    const auto ts = static_cast<std::int64_t>(t);
    if (size > gap_upper_bound(ts, gi.ell, m) || size < gap_lower_bound(ts, gi.ell))
        throw InvariantViolation("completion size " + std::to_string(size) + " outside the gap bounds");
    return sol;
}

int composition_height(std::size_t t)
{
    if (t == 0)
        throw std::invalid_argument("composition needs at least one instance");
    int h = 0;
    while ((std::size_t{1} << h) < t)
        ++h;
    return h;
}

std::int64_t composition_gap(std::int64_t k0, std::int64_t m0, std::int64_t ell, int h)
{
    const std::int64_t na = 3 * k0 * ell, nb = 12 * (m0 + 1), nc = 6 * h;
    return (nb + nc) * na + (nb + nc) * (nb + nc);
}

namespace {

bool ell_fits(std::int64_t k0, std::int64_t m0, std::int64_t ell, int h)
{
    // 13((k0+1)l)^2/4 - 9 k0 l > 13(k0 l)^2/4 + g, scaled by 4
    const std::int64_t lhs = 13 * ((k0 + 1) * ell) * ((k0 + 1) * ell) - 36 * k0 * ell;
    const std::int64_t rhs = 13 * (k0 * ell) * (k0 * ell) + 4 * composition_gap(k0, m0, ell, h);
    return lhs > rhs;
}

}

int minimum_composition_ell(std::int64_t k0, std::int64_t m0, std::size_t t)
{
    const int h = composition_height(t);
    for (std::int64_t ell = 6; ell < 1'000'000; ell += 2)
        if (ell_fits(k0, m0, ell, h))
            return static_cast<int>(ell);
    throw std::invalid_argument("no admissible ell below 10^6");
}

nlohmann::json CompositionInstance::roles() const
{
    nlohmann::json j;
    j["kind"] = "composition";
    j["h"] = h;
    j["t"] = t;
    j["ell"] = ell;
    j["offsets"] = offsets;
    j["ports"] = nlohmann::json::array();
    for (std::size_t i = 1; i < ports.size(); ++i)
        j["ports"].push_back({ports[i].first, ports[i].second});
    j["dpc"] = dpc;
    j["leaves"] = nlohmann::json::array();
    for (const auto &l : leaves)
        j["leaves"].push_back(l ? nlohmann::json(*l) : nlohmann::json());
    j["activations"] = nlohmann::json::array();
    for (const auto &e : activations)
        j["activations"].push_back(edge_to_json(e));
    return j;
}

CompositionInstance compose(const std::vector<GapInstance> &instances)
{
    if (instances.empty())
        throw std::invalid_argument("composition needs at least one instance");
    const auto &first = instances.front();
    for (const auto &gi : instances)
        if (gi.graph.graph.order() != first.graph.graph.order() ||
            gi.graph.graph.size() != first.graph.graph.size() || gi.t != first.t || gi.ell != first.ell ||
            gi.h_edges.size() != first.h_edges.size() || gi.n_h != first.n_h)
            throw std::invalid_argument("composed instances must share n, m, k and ell");

    CompositionInstance ci;
    ci.t = instances.size();
    ci.h = composition_height(ci.t);
    ci.ell = first.ell;
    const std::int64_t k0 = first.t, m0 = static_cast<std::int64_t>(first.h_edges.size());
    if (!ell_fits(k0, m0, ci.ell, ci.h))
        throw std::invalid_argument("ell = " + std::to_string(ci.ell) +
                                    " is too small for the composition; the minimum even ell is " +
                                    std::to_string(minimum_composition_ell(k0, m0, ci.t)));

    auto &host = ci.graph;
    for (const auto &gi : instances) {
        const Vertex off = host.graph.add_vertices(gi.graph.graph.order());
        ci.offsets.push_back(off);
        const Edge act = gi.activation();
        for (const auto &e : gi.graph.graph.edges())
            if (e != act)
                host.graph.add_edge(e.u + off, e.v + off);
        for (const auto &e : gi.graph.forbidden)
            host.forbid(Edge(e.u + off, e.v + off));
        ci.activations.emplace_back(act.u + off, act.v + off);
    }

    const std::size_t leaves = std::size_t{1} << ci.h;
    ci.ports.assign(2 * leaves, Port{0, 0});
    ci.leaves.assign(leaves, std::nullopt);
    for (std::size_t x = 1; x < 2 * leaves; ++x) {
        if (x >= leaves && x - leaves < ci.t) {
            std::size_t i = x - leaves;
            ci.leaves[i] = i;
            const auto &gi = instances[i];
            // activation pair is (a_m, c_m) of X0
            ci.ports[x] = {gi.x0.a.back() + ci.offsets[i], gi.x0.c.back() + ci.offsets[i]};
            continue;
        }
        auto vs = fresh(host.graph, 2);
        ci.ports[x] = {vs[0], vs[1]};
        if (x >= leaves)
            host.forbid(Edge(vs[0], vs[1]));
    }
    host.graph.set_edge(ci.ports[1].first, ci.ports[1].second, true);
    for (std::size_t x = 1; x < leaves; ++x) {
        auto d = build_disjoint_propagational(host, {ci.ports[x], ci.ports[2 * x], ci.ports[2 * x + 1]});
        std::array<Vertex, 11> v{};
        std::copy(d.vertices.begin(), d.vertices.end(), v.begin());
        ci.dpc.push_back(v);
    }

    const auto gap = composition_gap(k0, m0, ci.ell, ci.h);
    ci.k = quarter13(k0 * ci.ell) + gap;
    host.k = ci.k;
    host.g = gap;
    host.activation = Edge(ci.ports[1].first, ci.ports[1].second);
    host.name("root", *host.activation);
    for (std::size_t i = 0; i < ci.t; ++i)
        host.name("leaf" + std::to_string(i), ci.activations[i]);
    host.meta = ci.roles();

    auto problem = composition_problem(ci);
    if (!problem.empty())
        throw InvariantViolation(problem);
    host.validate();
    return ci;
}

std::string composition_problem(const CompositionInstance &ci)
{
    const auto &g = ci.graph;
    const std::size_t leaves = std::size_t{1} << ci.h;
    if (ci.ports.size() != 2 * leaves || ci.dpc.size() != leaves - 1 || ci.leaves.size() != leaves)
        return "tree arrays have the wrong size";
    auto edge_of = [&](std::size_t x) { return Edge(ci.ports[x].first, ci.ports[x].second); };
    if (!g.graph.has_edge(edge_of(1)))
        return "root input edge is absent";
    for (std::size_t x = 2; x < 2 * leaves; ++x)
        if (g.graph.has_edge(edge_of(x)))
            return "output edge " + to_string(edge_of(x)) + " is present";
    std::size_t unused = 0;
    for (std::size_t i = 0; i < leaves; ++i) {
        const auto e = edge_of(leaves + i);
        if (ci.leaves[i]) {
            if (*ci.leaves[i] >= ci.activations.size() || ci.activations[*ci.leaves[i]] != e)
                return "leaf " + std::to_string(i) + " is not wired to its activation pair";
            if (g.is_forbidden(e))
                return "activation pair " + to_string(e) + " is forbidden";
        }
        else {
            ++unused;
            if (!g.is_forbidden(e))
                return "unused output " + to_string(e) + " is not forbidden";
        }
    }
    if (unused != leaves - std::min(leaves, ci.t))
        return "wrong number of unused outputs";
    for (std::size_t x = 1; x < leaves; ++x) {
        const auto &v = ci.dpc[x - 1];
        if (Port{v[0], v[1]} != ci.ports[x] || Port{v[9], v[10]} != ci.ports[2 * x] ||
            Port{v[5], v[7]} != ci.ports[2 * x + 1])
            return "component at node " + std::to_string(x) + " is not wired to its ports";
    }
    return {};
}

AnnotatedGraph prune_to_leaf(const CompositionInstance &ci, std::size_t leaf)
{
    const std::size_t leaves = std::size_t{1} << ci.h;
    if (leaf >= ci.t)
        throw std::out_of_range("no such leaf");
    AnnotatedGraph out = ci.graph;
    for (std::size_t x = leaves + leaf; x > 1; x /= 2) {
        const std::size_t sibling = x ^ 1;
        Edge e(ci.ports[sibling].first, ci.ports[sibling].second);
        if (!out.is_forbidden(e))
            out.forbid(e);
    }
    return out;
}

}
