#include "surgery.hpp"

#include <algorithm>
#include <deque>

namespace torelli::detail {

std::vector<int> Exploded::at(int v) const
{
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(he.size()); ++i)
        if (he[i].vertex == v)
            out.push_back(i);
    return out;
}

int Exploded::leg(const std::string &label) const
{
    for (int i = 0; i < static_cast<int>(he.size()); ++i)
        if (he[i].partner < 0 && he[i].label == label)
            return i;
    return -1;
}

int Exploded::add_vertex(int g, Monomial m)
{
    genus.push_back(g);
    mono.push_back(std::move(m));
    return num_vertices() - 1;
}

int Exploded::add_half(int v, int psi)
{
    he.push_back({v, psi, "", -1});
    return static_cast<int>(he.size()) - 1;
}

void Exploded::join(int a, int b)
{
    he[a].partner = b;
    he[b].partner = a;
    he[a].label.clear();
    he[b].label.clear();
}

int Exploded::vertex_degree(int v) const
{
    int d = mono[v].degree();
    for (const auto &h : he)
        if (h.vertex == v)
            d += h.psi;
    return d;
}

Exploded explode(const Generator &g)
{
    Exploded e;
    e.policy = g.graph.policy;
    e.genus = g.graph.genus;
    e.mono = g.decor.vertex;
    for (std::size_t i = 0; i < g.graph.edges.size(); ++i) {
        int a = e.add_half(g.graph.edges[i].v0, g.decor.edge_psi[i][0]);
        int b = e.add_half(g.graph.edges[i].v1, g.decor.edge_psi[i][1]);
        e.join(a, b);
    }
    for (std::size_t i = 0; i < g.graph.legs.size(); ++i) {
        int a = e.add_half(g.graph.legs[i].vertex, g.decor.leg_psi[i]);
        e.he[a].label = g.graph.legs[i].label;
    }
    return e;
}

Generator implode(const Exploded &e)
{
    Generator g;
    g.graph.policy = e.policy;
    g.graph.genus = e.genus;
    g.decor.vertex = e.mono;
    for (int i = 0; i < static_cast<int>(e.he.size()); ++i) {
        const auto &h = e.he[i];
        if (h.partner < 0) {
            g.graph.legs.push_back({h.label, h.vertex});
            g.decor.leg_psi.push_back(h.psi);
        } else if (h.partner > i) {
            const auto &o = e.he[h.partner];
            g.graph.edges.push_back({h.vertex, o.vertex, "", ""});
            g.decor.edge_psi.push_back({h.psi, o.psi});
        }
    }
    return g;
}

Exploded compact(const Exploded &e, const std::vector<bool> &dead_vertex, const std::vector<bool> &dead_half)
{
    Exploded out;
    out.policy = e.policy;
    std::vector<int> vmap(e.num_vertices(), -1);
    for (int v = 0; v < e.num_vertices(); ++v)
        if (!dead_vertex[v])
            vmap[v] = out.add_vertex(e.genus[v], e.mono[v]);
    std::vector<int> hmap(e.he.size(), -1);
    for (std::size_t i = 0; i < e.he.size(); ++i) {
        if (dead_half[i])
            continue;
        if (vmap[e.he[i].vertex] < 0)
            throw std::logic_error("live half-edge on removed vertex");
        hmap[i] = static_cast<int>(out.he.size());
        out.he.push_back(e.he[i]);
        out.he.back().vertex = vmap[e.he[i].vertex];
    }
    for (auto &h : out.he)
        if (h.partner >= 0) {
            h.partner = hmap[h.partner];
            if (h.partner < 0)
                throw std::logic_error("edge half points at removed half-edge");
        }
    return out;
}

bool stable_vertex(int g, int valence)
{
    if (g < 0)
        return false;
    if (g == 0)
        return valence >= 3;
    if (g == 1)
        return valence >= 1;
    return true;
}

namespace {

using MonoTerms = std::vector<std::pair<Monomial, Rational>>;

// Expansion of prod over kappa factors of (kappa_c + s * psi_x^c): each entry is the kept
// monomial, the psi_x exponent, and the coefficient.
std::vector<std::tuple<Monomial, int, Rational>> expand_kappa(const Monomial &m, int s)
{
    std::vector<std::tuple<Monomial, int, Rational>> acc{{Monomial{}, 0, Rational(1)}};
    for (auto [c, e] : m.kappa) {
        std::vector<std::tuple<Monomial, int, Rational>> next;
        for (const auto &[mono, px, coef] : acc)
            for (int j = 0; j <= e; ++j) {
                Monomial k = mono;
                k.mul_kappa(c, e - j);
                Rational sign = (s < 0 && j % 2 == 1) ? Rational(-1) : Rational(1);
                next.emplace_back(std::move(k), px + c * j, coef * binomial(e, j) * sign);
            }
        acc = std::move(next);
    }
    for (auto &[mono, px, coef] : acc)
        mono.lambda = m.lambda;
    return acc;
}

// Distributes the factors of a monomial over vertices of the given genera (pullback under
// a gluing map): kappa goes to one vertex, lambda_k splits as a composition of k.
std::vector<std::pair<std::vector<Monomial>, Rational>> distribute(const Monomial &m, const std::vector<int> &genus)
{
    int n = static_cast<int>(genus.size());
    std::vector<std::pair<std::vector<Monomial>, Rational>> acc{{std::vector<Monomial>(n), Rational(1)}};
    for (auto [c, e] : m.kappa)
        for (int rep = 0; rep < e; ++rep) {
            std::vector<std::pair<std::vector<Monomial>, Rational>> next;
            for (const auto &[ms, coef] : acc)
                for (int v = 0; v < n; ++v) {
                    auto copy = ms;
                    copy[v].mul_kappa(c);
                    next.emplace_back(std::move(copy), coef);
                }
            acc = std::move(next);
        }
    for (auto [k, e] : m.lambda)
        for (int rep = 0; rep < e; ++rep) {
            std::vector<std::pair<std::vector<Monomial>, Rational>> next;
            for (const auto &[ms, coef] : acc) {
                // compositions of k into n parts bounded by vertex genus
                std::vector<int> part(n, 0);
                auto rec = [&](auto &&self, int v, int left) -> void {
                    if (v == n - 1) {
                        if (left > genus[v])
                            return;
                        part[v] = left;
                        auto copy = ms;
                        for (int u = 0; u < n; ++u)
                            if (part[u] > 0)
                                copy[u].mul_lambda(part[u]);
                        next.emplace_back(std::move(copy), coef);
                        return;
                    }
                    for (int j = 0; j <= std::min(left, genus[v]); ++j) {
                        part[v] = j;
                        self(self, v + 1, left - j);
                    }
                };
                rec(rec, 0, k);
            }
            acc = std::move(next);
        }
    return acc;
}

// Connected component of v after ignoring the edge formed by half-edges a, b.
std::vector<bool> component(const Exploded &e, int v, int a, int b)
{
    std::vector<bool> seen(e.num_vertices(), false);
    std::vector<std::vector<int>> halves(e.num_vertices());
    for (int i = 0; i < static_cast<int>(e.he.size()); ++i)
        halves[e.he[i].vertex].push_back(i);
    std::deque<int> q{v};
    seen[v] = true;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int h : halves[u]) {
            int p = e.he[h].partner;
            if (p < 0 || h == a || h == b)
                continue;
            int w = e.he[p].vertex;
            if (!seen[w]) {
                seen[w] = true;
                q.push_back(w);
            }
        }
    }
    return seen;
}

Exploded induced(const Exploded &e, const std::vector<bool> &keep)
{
    std::vector<bool> dead_v(e.num_vertices()), dead_h(e.he.size());
    for (int v = 0; v < e.num_vertices(); ++v)
        dead_v[v] = !keep[v];
    for (std::size_t i = 0; i < e.he.size(); ++i)
        dead_h[i] = !keep[e.he[i].vertex];
    return compact(e, dead_v, dead_h);
}

struct SideData {
    int genus = 0;
    std::vector<std::string> legs;
};

SideData side_data(const Exploded &e, const std::vector<bool> &in)
{
    SideData s;
    int verts = 0, halves_inside = 0;
    for (int v = 0; v < e.num_vertices(); ++v)
        if (in[v]) {
            s.genus += e.genus[v];
            ++verts;
        }
    for (const auto &h : e.he) {
        if (!in[h.vertex])
            continue;
        if (h.partner < 0)
            s.legs.push_back(h.label);
        else if (in[e.he[h.partner].vertex])
            ++halves_inside;
    }
    s.genus += halves_inside / 2 - verts + 1;
    std::sort(s.legs.begin(), s.legs.end());
    return s;
}

std::vector<std::string> sorted(std::vector<std::string> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

// Cuts the edge (ia, ib) of H and emits the factor generators if H carries the structure
// of gamma with ia on the a side.
void emit_cut(const Exploded &h, int ia, int ib, const OneEdge &gamma, const Rational &coef, FactorTerms &out)
{
    auto comp = component(h, h.he[ia].vertex, ia, ib);
    bool separating = !comp[h.he[ib].vertex];
    if (gamma.loop) {
        if (separating)
            return;
        Exploded cut = h;
        cut.he[ia].partner = cut.he[ib].partner = -1;
        cut.he[ia].label = gamma.h_a;
        cut.he[ib].label = gamma.h_b;
        out.push_back({{implode(cut)}, coef});
        return;
    }
    if (!separating)
        return;
    Exploded cut = h;
    cut.he[ia].partner = cut.he[ib].partner = -1;
    cut.he[ia].label = gamma.h_a;
    cut.he[ib].label = gamma.h_b;
    auto a = side_data(cut, comp);
    std::vector<bool> rest(comp.size());
    for (std::size_t i = 0; i < comp.size(); ++i)
        rest[i] = !comp[i];
    auto b = side_data(cut, rest);
    auto want_a = gamma.legs_a, want_b = gamma.legs_b;
    want_a.push_back(gamma.h_a);
    want_b.push_back(gamma.h_b);
    if (a.genus != gamma.g_a || a.legs != sorted(want_a) || b.genus != gamma.g_b || b.legs != sorted(want_b))
        return;
    out.push_back({{implode(induced(cut, comp)), implode(induced(cut, rest))}, coef});
}

// All ways to split vertex v in two, with the new edge (ia on the part keeping index v).
// Calls f(H, ia, ib, coef).
template <class F>
void for_each_split(const Exploded &e, int v, const Monomial &m, F &&f)
{
    auto hs = e.at(v);
    int k = static_cast<int>(hs.size());
    if (k > 20)
        throw UnsupportedOperation("vertex valence too large to split");
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        int n1 = __builtin_popcount(mask) + 1;
        int n2 = k - n1 + 2;
        for (int g1 = 0; g1 <= e.genus[v]; ++g1) {
            int g2 = e.genus[v] - g1;
            if (!stable_vertex(g1, n1) || !stable_vertex(g2, n2))
                continue;
            for (const auto &[mm, c] : split_monomial(m, g1, g2)) {
                Exploded h = e;
                h.genus[v] = g1;
                h.mono[v] = mm.first;
                int w = h.add_vertex(g2, mm.second);
                for (int i = 0; i < k; ++i)
                    if (!(mask & (1u << i)))
                        h.he[hs[i]].vertex = w;
                int ia = h.add_half(v);
                int ib = h.add_half(w);
                h.join(ia, ib);
                f(h, ia, ib, c);
            }
        }
    }
}

} // namespace

std::vector<std::pair<std::pair<Monomial, Monomial>, Rational>> split_monomial(const Monomial &m, int g1, int g2)
{
    std::vector<std::pair<std::pair<Monomial, Monomial>, Rational>> acc{{{Monomial{}, Monomial{}}, Rational(1)}};
    for (auto [c, e] : m.kappa) {
        decltype(acc) next;
        for (const auto &[ab, q] : acc)
            for (int j = 0; j <= e; ++j) {
                auto [a, b] = ab;
                a.mul_kappa(c, j);
                b.mul_kappa(c, e - j);
                next.push_back({{a, b}, q * binomial(e, j)});
            }
        acc = std::move(next);
    }
    for (auto [k, e] : m.lambda)
        for (int rep = 0; rep < e; ++rep) {
            decltype(acc) next;
            for (const auto &[ab, q] : acc)
                for (int j = 0; j <= k; ++j) {
                    if (j > g1 || k - j > g2)
                        continue;
                    auto [a, b] = ab;
                    if (j > 0)
                        a.mul_lambda(j);
                    if (k - j > 0)
                        b.mul_lambda(k - j);
                    next.push_back({{a, b}, q});
                }
            acc = std::move(next);
        }
    return acc;
}

GenTerms forget_pullback(const Generator &g, const std::string &x)
{
    Exploded e = explode(g);
    if (e.leg(x) >= 0)
        throw std::invalid_argument("marking '" + x + "' already present");
    GenTerms out;
    for (int v = 0; v < e.num_vertices(); ++v) {
        for (const auto &[kept, px, coef] : expand_kappa(e.mono[v], -1)) {
            Exploded f = e;
            f.mono[v] = kept;
            int l = f.add_half(v, px);
            f.he[l].label = x;
            out.push_back({implode(f), coef});
        }
        for (int h : e.at(v)) {
            if (e.he[h].psi < 1)
                continue;
            Exploded f = e;
            int w = f.add_vertex(0);
            int hv = f.add_half(v, e.he[h].psi - 1);
            int hw = f.add_half(w);
            f.join(hv, hw);
            f.he[h].vertex = w;
            f.he[h].psi = 0;
            int l = f.add_half(w);
            f.he[l].label = x;
            out.push_back({implode(f), Rational(-1)});
        }
    }
    return out;
}

GenTerms forget_pushforward(const Generator &g, const std::string &x)
{
    Exploded e = explode(g);
    int ix = e.leg(x);
    if (ix < 0)
        throw std::invalid_argument("marking '" + x + "' not present");
    int v = e.he[ix].vertex;
    std::vector<int> others;
    for (int h : e.at(v))
        if (h != ix)
            others.push_back(h);
    GenTerms out;
    std::vector<bool> dead_v(e.num_vertices(), false), dead_h(e.he.size(), false);
    if (e.genus[v] == 0 && others.size() == 2) {
        if (e.vertex_degree(v) > 0)
            return out;
        int h1 = others[0], h2 = others[1];
        int p1 = e.he[h1].partner, p2 = e.he[h2].partner;
        if ((p1 < 0 && p2 < 0) || p1 == h2)
            throw UnsupportedOperation("forgetting '" + x + "' leaves an unstable space");
        Exploded f = e;
        if (p1 < 0 || p2 < 0) {
            int leg = p1 < 0 ? h1 : h2;
            int far = p1 < 0 ? p2 : p1;
            f.he[far].partner = -1;
            f.he[far].label = e.he[leg].label;
        } else {
            f.he[p1].partner = p2;
            f.he[p2].partner = p1;
        }
        dead_v[v] = true;
        dead_h[h1] = dead_h[h2] = dead_h[ix] = true;
        out.push_back({implode(compact(f, dead_v, dead_h)), Rational(1)});
        return out;
    }
    dead_h[ix] = true;
    int b = e.he[ix].psi;
    int kappa0 = 2 * e.genus[v] - 2 + static_cast<int>(others.size());
    for (const auto &[kept, s, coef] : expand_kappa(e.mono[v], +1)) {
        int total = b + s;
        if (total >= 1) {
            Exploded f = e;
            f.mono[v] = kept;
            Rational c = coef;
            if (total >= 2)
                f.mono[v].mul_kappa(total - 1);
            else
                c *= Rational(kappa0);
            if (!c.is_zero())
                out.push_back({implode(compact(f, dead_v, dead_h)), c});
        } else {
            for (int h : others) {
                if (e.he[h].psi < 1)
                    continue;
                Exploded f = e;
                f.mono[v] = kept;
                f.he[h].psi -= 1;
                out.push_back({implode(compact(f, dead_v, dead_h)), coef});
            }
        }
    }
    return out;
}

FactorTerms glue_pullback(const Generator &g, const OneEdge &gamma)
{
    if (gamma.loop && g.graph.policy == Policy::CompactType)
        throw std::invalid_argument("self-edge gluing on a compact-type space");
    Exploded e = explode(g);
    FactorTerms out;
    // edges of g that already carry the structure: excess term -psi - psi'
    for (int i = 0; i < static_cast<int>(e.he.size()); ++i) {
        int p = e.he[i].partner;
        if (p < 0)
            continue;
        for (int side : {i, p}) {
            Exploded h = e;
            h.he[side].psi += 1;
            emit_cut(h, i, p, gamma, Rational(-1), out);
        }
    }
    // a new edge inside one vertex
    for (int v = 0; v < e.num_vertices(); ++v) {
        for_each_split(e, v, e.mono[v], [&](const Exploded &h, int ia, int ib, const Rational &c) {
            emit_cut(h, ia, ib, gamma, c, out);
        });
        if (gamma.loop && e.genus[v] >= 1) {
            Exploded h = e;
            h.genus[v] -= 1;
            int ia = h.add_half(v), ib = h.add_half(v);
            h.join(ia, ib);
            emit_cut(h, ia, ib, gamma, Rational(1), out);
        }
    }
    return out;
}

Generator glue_pushforward(const std::vector<Generator> &factors, const OneEdge &gamma)
{
    if (factors.size() != (gamma.loop ? 1u : 2u))
        throw std::invalid_argument("wrong number of factors for gluing");
    Exploded all;
    all.policy = factors[0].graph.policy;
    for (const auto &f : factors) {
        Exploded e = explode(f);
        int voff = all.num_vertices();
        int hoff = static_cast<int>(all.he.size());
        for (int v = 0; v < e.num_vertices(); ++v)
            all.add_vertex(e.genus[v], e.mono[v]);
        for (auto h : e.he) {
            h.vertex += voff;
            if (h.partner >= 0)
                h.partner += hoff;
            all.he.push_back(h);
        }
    }
    int a = -1, b = -1;
    int na = static_cast<int>(explode(factors[0]).he.size());
    for (int i = 0; i < static_cast<int>(all.he.size()); ++i) {
        if (all.he[i].partner >= 0)
            continue;
        bool in_first = i < na;
        if (all.he[i].label == gamma.h_a && in_first)
            a = i;
        if (all.he[i].label == gamma.h_b && (gamma.loop ? in_first : !in_first))
            b = i;
    }
    if (a < 0 || b < 0)
        throw std::invalid_argument("gluing markings missing on factors");
    all.join(a, b);
    return implode(all);
}

GenTerms multiply_point(const PointDecoration &d, const Generator &g)
{
    Exploded e = explode(g);
    for (const auto &[label, p] : d.leg_psi) {
        int l = e.leg(label);
        if (l < 0)
            throw std::invalid_argument("psi on unknown marking '" + label + "'");
        e.he[l].psi += p;
    }
    GenTerms out;
    for (const auto &[ms, coef] : distribute(d.mono, e.genus)) {
        Exploded f = e;
        for (int v = 0; v < f.num_vertices(); ++v)
            f.mono[v] = f.mono[v] * ms[v];
        out.push_back({implode(f), coef});
    }
    return out;
}

namespace {

PointDecoration point_of(const Exploded &e, int v, const std::vector<std::pair<int, std::string>> &renamed)
{
    PointDecoration d;
    d.mono = e.mono[v];
    for (int i = 0; i < static_cast<int>(e.he.size()); ++i) {
        if (e.he[i].vertex != v || e.he[i].psi == 0)
            continue;
        if (e.he[i].partner < 0) {
            d.leg_psi.push_back({e.he[i].label, e.he[i].psi});
            continue;
        }
        for (const auto &[idx, name] : renamed)
            if (idx == i)
                d.leg_psi.push_back({name, e.he[i].psi});
    }
    return d;
}

GenTerms via_gluing(const Generator &a, const Generator &b)
{
    Exploded ea = explode(a);
    int i0 = -1;
    for (int i = 0; i < static_cast<int>(ea.he.size()); ++i)
        if (ea.he[i].partner > i)
            i0 = i;
    int i1 = ea.he[i0].partner;
    OneEdge gamma;
    int va = ea.he[i0].vertex, vb = ea.he[i1].vertex;
    gamma.loop = va == vb;
    gamma.g_a = ea.genus[va];
    for (const auto &h : ea.he)
        if (h.partner < 0 && h.vertex == va)
            gamma.legs_a.push_back(h.label);
    if (!gamma.loop) {
        gamma.g_b = ea.genus[vb];
        for (const auto &h : ea.he)
            if (h.partner < 0 && h.vertex == vb)
                gamma.legs_b.push_back(h.label);
    }
    std::vector<std::pair<int, std::string>> renamed{{i0, gamma.h_a}, {i1, gamma.h_b}};
    std::vector<PointDecoration> decos;
    decos.push_back(point_of(ea, va, renamed));
    if (!gamma.loop)
        decos.push_back(point_of(ea, vb, renamed));

    GenTerms out;
    for (const auto &[factors, coef] : glue_pullback(b, gamma)) {
        std::vector<GenTerms> per_factor;
        for (std::size_t f = 0; f < factors.size(); ++f)
            per_factor.push_back(multiply_point(decos[f], factors[f]));
        if (gamma.loop) {
            for (const auto &[g0, c0] : per_factor[0])
                out.push_back({glue_pushforward({g0}, gamma), coef * c0});
        } else {
            for (const auto &[g0, c0] : per_factor[0])
                for (const auto &[g1, c1] : per_factor[1])
                    out.push_back({glue_pushforward({g0, g1}, gamma), coef * c0 * c1});
        }
    }
    return out;
}

} // namespace

GenTerms multiply_generators(const Generator &a, const Generator &b)
{
    auto ne = [](const Generator &g) { return g.graph.edges.size(); };
    auto point = [](const Generator &g) {
        PointDecoration d;
        d.mono = g.decor.vertex[0];
        for (std::size_t i = 0; i < g.graph.legs.size(); ++i)
            if (g.decor.leg_psi[i] > 0)
                d.leg_psi.push_back({g.graph.legs[i].label, g.decor.leg_psi[i]});
        return d;
    };
    if (ne(a) == 0)
        return multiply_point(point(a), b);
    if (ne(b) == 0)
        return multiply_point(point(b), a);
    if (ne(a) == 1)
        return via_gluing(a, b);
    if (ne(b) == 1)
        return via_gluing(b, a);
    throw UnsupportedOperation("product of two generators with several edges: " + to_string(a) + " * " +
                               to_string(b));
}

GenTerms kappa1_step(const Generator &g, bool &changed)
{
    Exploded e = explode(g);
    changed = false;
    for (int v = 0; v < e.num_vertices(); ++v) {
        auto it = e.mono[v].kappa.find(1);
        if (it == e.mono[v].kappa.end())
            continue;
        changed = true;
        Monomial rest = e.mono[v];
        if (--rest.kappa[1] == 0)
            rest.kappa.erase(1);
        GenTerms out;
        {
            Exploded f = e;
            f.mono[v] = rest;
            f.mono[v].mul_lambda(1);
            out.push_back({implode(f), Rational(12)});
        }
        for (int h : e.at(v)) {
            Exploded f = e;
            f.mono[v] = rest;
            f.he[h].psi += 1;
            out.push_back({implode(f), Rational(1)});
        }
        for_each_split(e, v, rest, [&](const Exploded &h, int, int, const Rational &c) {
            out.push_back({implode(h), Rational(-1, 2) * c});
        });
        if (e.policy == Policy::Stable && e.genus[v] >= 1) {
            Exploded f = e;
            f.mono[v] = rest;
            f.genus[v] -= 1;
            int a = f.add_half(v), b = f.add_half(v);
            f.join(a, b);
            out.push_back({implode(f), Rational(-1, 2)});
        }
        return out;
    }
    return {{g, Rational(1)}};
}

} // namespace torelli::detail
