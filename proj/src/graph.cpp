#include "torelli/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

namespace torelli {

std::string to_string(Policy p) { return p == Policy::CompactType ? "ct" : "stable"; }

Policy parse_policy(const std::string &s)
{
    if (s == "ct" || s == "mct" || s == "compact-type")
        return Policy::CompactType;
    if (s == "stable" || s == "mbar")
        return Policy::Stable;
    throw std::invalid_argument("unknown boundary policy '" + s + "'");
}

int StableGraph::valence(int v) const
{
    int n = 0;
    for (const auto &e : edges)
        n += (e.v0 == v) + (e.v1 == v);
    for (const auto &l : legs)
        n += l.vertex == v;
    return n;
}

int StableGraph::betti() const
{
    return static_cast<int>(edges.size()) - num_vertices() + 1;
}

int StableGraph::total_genus() const
{
    return std::accumulate(genus.begin(), genus.end(), 0) + betti();
}

std::vector<std::string> StableGraph::markings() const
{
    std::vector<std::string> m;
    for (const auto &l : legs)
        m.push_back(l.label);
    std::sort(m.begin(), m.end());
    return m;
}

int Monomial::degree() const
{
    int d = 0;
    for (auto [i, e] : kappa)
        d += i * e;
    for (auto [i, e] : lambda)
        d += i * e;
    return d;
}

void Monomial::mul_kappa(int i, int e)
{
    if (i < 1)
        throw std::invalid_argument("kappa index must be positive");
    if (e > 0)
        kappa[i] += e;
}

void Monomial::mul_lambda(int i, int e)
{
    if (i < 1)
        throw std::invalid_argument("lambda index must be positive");
    if (e > 0)
        lambda[i] += e;
}

Monomial Monomial::operator*(const Monomial &o) const
{
    Monomial r = *this;
    for (auto [i, e] : o.kappa)
        r.kappa[i] += e;
    for (auto [i, e] : o.lambda)
        r.lambda[i] += e;
    return r;
}

Generator Generator::bare(const StableGraph &g)
{
    Generator r;
    r.graph = g;
    r.decor.vertex.assign(g.genus.size(), Monomial{});
    r.decor.edge_psi.assign(g.edges.size(), {0, 0});
    r.decor.leg_psi.assign(g.legs.size(), 0);
    return r;
}

int Generator::vertex_degree(int v) const
{
    int d = decor.vertex[v].degree();
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
        if (graph.edges[e].v0 == v)
            d += decor.edge_psi[e][0];
        if (graph.edges[e].v1 == v)
            d += decor.edge_psi[e][1];
    }
    for (std::size_t l = 0; l < graph.legs.size(); ++l)
        if (graph.legs[l].vertex == v)
            d += decor.leg_psi[l];
    return d;
}

int Generator::degree() const
{
    int d = static_cast<int>(graph.edges.size());
    for (int v = 0; v < graph.num_vertices(); ++v)
        d += vertex_degree(v);
    return d;
}

int Generator::vertex_dim(int v) const { return 3 * graph.genus[v] - 3 + graph.valence(v); }

int Generator::leg_index(const std::string &label) const
{
    for (std::size_t l = 0; l < graph.legs.size(); ++l)
        if (graph.legs[l].label == label)
            return static_cast<int>(l);
    return -1;
}

UnstableGraph::UnstableGraph(int vertex, const std::string &why)
    : std::invalid_argument("unstable vertex " + std::to_string(vertex) + ": " + why), vertex_(vertex)
{
}

namespace {

bool is_connected(const StableGraph &g)
{
    int n = g.num_vertices();
    if (n == 0)
        return false;
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto &e : g.edges)
        parent[find(e.v0)] = find(e.v1);
    for (int v = 0; v < n; ++v)
        if (find(v) != find(0))
            return false;
    return true;
}

} // namespace

void validate(const Generator &gen)
{
    const auto &g = gen.graph;
    int n = g.num_vertices();
    if (n == 0)
        throw std::invalid_argument("graph without vertices");
    if (gen.decor.vertex.size() != g.genus.size() || gen.decor.edge_psi.size() != g.edges.size() ||
        gen.decor.leg_psi.size() != g.legs.size())
        throw std::invalid_argument("decoration shape does not match graph");
    for (int v = 0; v < n; ++v)
        if (g.genus[v] < 0)
            throw std::invalid_argument("negative genus at vertex " + std::to_string(v));
    for (const auto &e : g.edges) {
        if (e.v0 < 0 || e.v0 >= n || e.v1 < 0 || e.v1 >= n)
            throw std::invalid_argument("edge endpoint out of range");
        if (g.policy == Policy::CompactType && e.v0 == e.v1)
            throw std::invalid_argument("self-edge not allowed in compact type");
    }
    for (std::size_t i = 0; i < g.legs.size(); ++i) {
        if (g.legs[i].vertex < 0 || g.legs[i].vertex >= n)
            throw std::invalid_argument("leg '" + g.legs[i].label + "' on missing vertex");
        for (std::size_t j = 0; j < i; ++j)
            if (g.legs[i].label == g.legs[j].label)
                throw std::invalid_argument("repeated marking '" + g.legs[i].label + "'");
    }
    if (!is_connected(g))
        throw std::invalid_argument("graph is not connected");
    if (g.policy == Policy::CompactType && g.betti() != 0)
        throw std::invalid_argument("compact-type graph is not a tree");
    for (int v = 0; v < n; ++v) {
        int val = g.valence(v);
        if (g.genus[v] == 0 && val < 3)
            throw UnstableGraph(v, "genus 0 with " + std::to_string(val) + " special points");
        if (g.genus[v] == 1 && val < 1)
            throw UnstableGraph(v, "genus 1 with no special points");
    }
    for (const auto &m : gen.decor.vertex) {
        for (auto [i, e] : m.kappa)
            if (i < 1 || e < 0)
                throw std::invalid_argument("bad kappa decoration");
        for (auto [i, e] : m.lambda)
            if (i < 1 || e < 0)
                throw std::invalid_argument("bad lambda decoration");
    }
    for (const auto &p : gen.decor.edge_psi)
        if (p[0] < 0 || p[1] < 0)
            throw std::invalid_argument("negative psi exponent");
    for (int p : gen.decor.leg_psi)
        if (p < 0)
            throw std::invalid_argument("negative psi exponent");
}

bool vanishes_trivially(const Generator &g)
{
    for (int v = 0; v < g.graph.num_vertices(); ++v) {
        if (g.vertex_degree(v) > g.vertex_dim(v))
            return true;
        for (auto [i, e] : g.decor.vertex[v].lambda)
            if (e > 0 && i > g.graph.genus[v])
                return true;
    }
    return false;
}

namespace {

using LegKey = std::vector<std::pair<std::string, int>>;

struct Canonizer {
    const Generator &in;
    int n;
    std::vector<std::vector<std::array<int, 4>>> incid; // (other vertex, my psi, their psi, is_loop)

    explicit Canonizer(const Generator &g) : in(g), n(g.graph.num_vertices()), incid(n)
    {
        const auto &E = g.graph.edges;
        for (std::size_t e = 0; e < E.size(); ++e) {
            auto [p0, p1] = g.decor.edge_psi[e];
            if (E[e].v0 == E[e].v1) {
                incid[E[e].v0].push_back({E[e].v0, p0, p1, 1});
                incid[E[e].v0].push_back({E[e].v0, p1, p0, 1});
            } else {
                incid[E[e].v0].push_back({E[e].v1, p0, p1, 0});
                incid[E[e].v1].push_back({E[e].v0, p1, p0, 0});
            }
        }
    }

    template <class Key>
    static std::vector<int> rank(const std::vector<Key> &keys)
    {
        std::vector<Key> sorted = keys;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> out(keys.size());
        for (std::size_t i = 0; i < keys.size(); ++i)
            out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
        return out;
    }

    static int count(const std::vector<int> &c)
    {
        return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
    }

    std::vector<int> initial() const
    {
        using Key = std::tuple<int, int, Monomial, LegKey>;
        std::vector<Key> keys;
        for (int v = 0; v < n; ++v) {
            LegKey legs;
            for (std::size_t l = 0; l < in.graph.legs.size(); ++l)
                if (in.graph.legs[l].vertex == v)
                    legs.emplace_back(in.graph.legs[l].label, in.decor.leg_psi[l]);
            std::sort(legs.begin(), legs.end());
            keys.emplace_back(in.graph.genus[v], in.graph.valence(v), in.decor.vertex[v], legs);
        }
        return rank(keys);
    }

    std::vector<int> refine(std::vector<int> c) const
    {
        while (true) {
            using Key = std::pair<int, std::vector<std::array<int, 4>>>;
            std::vector<Key> keys;
            for (int v = 0; v < n; ++v) {
                std::vector<std::array<int, 4>> nb;
                for (auto [w, pm, pt, loop] : incid[v])
                    nb.push_back({c[w], pm, pt, loop});
                std::sort(nb.begin(), nb.end());
                keys.emplace_back(c[v], std::move(nb));
            }
            auto next = rank(keys);
            if (count(next) == count(c))
                return next;
            c = std::move(next);
        }
    }

    Generator build(const std::vector<int> &pos) const
    {
        Generator out;
        out.graph.policy = in.graph.policy;
        out.graph.genus.assign(n, 0);
        out.decor.vertex.assign(n, Monomial{});
        for (int v = 0; v < n; ++v) {
            out.graph.genus[pos[v]] = in.graph.genus[v];
            out.decor.vertex[pos[v]] = in.decor.vertex[v];
        }
        using E = std::tuple<int, int, int, int>;
        std::vector<E> edges;
        for (std::size_t e = 0; e < in.graph.edges.size(); ++e) {
            int a = pos[in.graph.edges[e].v0], b = pos[in.graph.edges[e].v1];
            auto [p, q] = in.decor.edge_psi[e];
            if (a > b || (a == b && p > q)) {
                std::swap(a, b);
                std::swap(p, q);
            }
            edges.emplace_back(a, b, p, q);
        }
        std::sort(edges.begin(), edges.end());
        for (auto [a, b, p, q] : edges) {
            out.graph.edges.push_back({a, b, "", ""});
            out.decor.edge_psi.push_back({p, q});
        }
        std::vector<std::pair<Leg, int>> legs;
        for (std::size_t l = 0; l < in.graph.legs.size(); ++l)
            legs.push_back({{in.graph.legs[l].label, pos[in.graph.legs[l].vertex]}, in.decor.leg_psi[l]});
        std::sort(legs.begin(), legs.end());
        for (auto &[leg, p] : legs) {
            out.graph.legs.push_back(leg);
            out.decor.leg_psi.push_back(p);
        }
        return out;
    }

    bool have_best = false;
    Generator best;
    long best_count = 0;

    void search(const std::vector<int> &c)
    {
        int k = count(c);
        if (k == n) {
            Generator cand = build(c);
            if (!have_best || cand < best) {
                best = std::move(cand);
                best_count = 1;
                have_best = true;
            } else if (cand == best) {
                ++best_count;
            }
            return;
        }
        // first non-singleton cell in colour order
        std::vector<int> size(k, 0);
        for (int x : c)
            ++size[x];
        int cell = 0;
        while (size[cell] < 2)
            ++cell;
        for (int v = 0; v < n; ++v) {
            if (c[v] != cell)
                continue;
            std::vector<std::pair<int, int>> keys;
            for (int u = 0; u < n; ++u)
                keys.emplace_back(c[u], u == v ? 0 : 1);
            search(refine(rank(keys)));
        }
    }
};

long edge_symmetry(const Generator &g)
{
    long f = 1;
    const auto &E = g.graph.edges;
    std::size_t i = 0;
    while (i < E.size()) {
        std::size_t j = i;
        while (j < E.size() && E[j].v0 == E[i].v0 && E[j].v1 == E[i].v1 &&
               g.decor.edge_psi[j] == g.decor.edge_psi[i])
            ++j;
        for (long m = 2; m <= static_cast<long>(j - i); ++m)
            f *= m;
        if (E[i].v0 == E[i].v1 && g.decor.edge_psi[i][0] == g.decor.edge_psi[i][1])
            for (std::size_t m = i; m < j; ++m)
                f *= 2;
        i = j;
    }
    return f;
}

} // namespace

CanonicalForm canonicalize(const Generator &g)
{
    validate(g);
    Canonizer cz(g);
    cz.search(cz.refine(cz.initial()));
    CanonicalForm out;
    out.gen = std::move(cz.best);
    out.automorphisms = cz.best_count * edge_symmetry(out.gen);
    return out;
}

std::string to_string(const Generator &g)
{
    std::ostringstream os;
    os << "V";
    for (int x : g.graph.genus)
        os << ' ' << x;
    if (!g.graph.edges.empty()) {
        os << "; E";
        for (const auto &e : g.graph.edges)
            os << ' ' << e.v0 << '-' << e.v1;
    }
    if (!g.graph.legs.empty()) {
        os << "; L";
        for (const auto &l : g.graph.legs)
            os << ' ' << l.label << '@' << l.vertex;
    }
    std::vector<std::string> dec;
    for (std::size_t v = 0; v < g.decor.vertex.size(); ++v) {
        for (auto [i, e] : g.decor.vertex[v].kappa)
            dec.push_back("v" + std::to_string(v) + ":kappa" + std::to_string(i) + "^" + std::to_string(e));
        for (auto [i, e] : g.decor.vertex[v].lambda)
            dec.push_back("v" + std::to_string(v) + ":lambda" + std::to_string(i) + "^" + std::to_string(e));
    }
    for (std::size_t e = 0; e < g.decor.edge_psi.size(); ++e)
        for (int s = 0; s < 2; ++s)
            if (g.decor.edge_psi[e][s] > 0)
                dec.push_back("e" + std::to_string(e) + "." + std::to_string(s) + ":psi^" +
                              std::to_string(g.decor.edge_psi[e][s]));
    for (std::size_t l = 0; l < g.decor.leg_psi.size(); ++l)
        if (g.decor.leg_psi[l] > 0)
            dec.push_back(g.graph.legs[l].label + ":psi^" + std::to_string(g.decor.leg_psi[l]));
    if (!dec.empty()) {
        os << "; decor";
        for (const auto &d : dec)
            os << ' ' << d;
    }
    return os.str();
}

namespace {

std::vector<std::string> split_ws(const std::string &s)
{
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string t;
    while (is >> t)
        out.push_back(t);
    return out;
}

int to_int(const std::string &s, const std::string &what)
{
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception &) {
        throw std::invalid_argument("bad " + what + " '" + s + "'");
    }
}

} // namespace

Generator parse_generator(const std::string &s, Policy policy)
{
    StableGraph g;
    g.policy = policy;
    std::vector<std::string> decor_tokens;
    std::istringstream is(s);
    std::string section;
    bool seen_v = false;
    while (std::getline(is, section, ';')) {
        auto tok = split_ws(section);
        if (tok.empty())
            continue;
        const std::string head = tok[0];
        tok.erase(tok.begin());
        if (head == "V") {
            seen_v = true;
            for (const auto &t : tok)
                g.genus.push_back(to_int(t, "genus"));
        } else if (head == "E") {
            for (const auto &t : tok) {
                auto dash = t.find('-');
                if (dash == std::string::npos)
                    throw std::invalid_argument("bad edge '" + t + "'");
                g.edges.push_back({to_int(t.substr(0, dash), "vertex"), to_int(t.substr(dash + 1), "vertex"), "", ""});
            }
        } else if (head == "L") {
            for (const auto &t : tok) {
                auto at = t.rfind('@');
                if (at == std::string::npos || at == 0)
                    throw std::invalid_argument("bad leg '" + t + "'");
                g.legs.push_back({t.substr(0, at), to_int(t.substr(at + 1), "vertex")});
            }
        } else if (head == "decor") {
            decor_tokens = tok;
        } else {
            throw std::invalid_argument("unknown graph section '" + head + "'");
        }
    }
    if (!seen_v)
        throw std::invalid_argument("graph string needs a V section");
    Generator gen = Generator::bare(g);
    for (const auto &t : decor_tokens) {
        auto colon = t.rfind(':');
        auto caret = t.rfind('^');
        if (colon == std::string::npos || caret == std::string::npos || caret < colon)
            throw std::invalid_argument("bad decoration '" + t + "'");
        std::string ref = t.substr(0, colon);
        std::string sym = t.substr(colon + 1, caret - colon - 1);
        int exp = to_int(t.substr(caret + 1), "exponent");
        if (sym == "psi") {
            int l = gen.leg_index(ref);
            if (l >= 0) {
                gen.decor.leg_psi[l] += exp;
                continue;
            }
            if (ref.size() > 1 && ref[0] == 'e' && ref.find('.') != std::string::npos) {
                auto dot = ref.find('.');
                int e = to_int(ref.substr(1, dot - 1), "edge");
                int side = to_int(ref.substr(dot + 1), "side");
                if (e < 0 || e >= static_cast<int>(g.edges.size()) || side < 0 || side > 1)
                    throw std::invalid_argument("bad half-edge '" + ref + "'");
                gen.decor.edge_psi[e][side] += exp;
                continue;
            }
            throw std::invalid_argument("unknown half-edge '" + ref + "'");
        }
        if (ref.size() < 2 || ref[0] != 'v')
            throw std::invalid_argument("kappa/lambda need a vertex ref, got '" + ref + "'");
        int v = to_int(ref.substr(1), "vertex");
        if (v < 0 || v >= g.num_vertices())
            throw std::invalid_argument("vertex out of range in '" + t + "'");
        if (sym.rfind("kappa", 0) == 0)
            gen.decor.vertex[v].mul_kappa(to_int(sym.substr(5), "kappa index"), exp);
        else if (sym.rfind("lambda", 0) == 0)
            gen.decor.vertex[v].mul_lambda(to_int(sym.substr(6), "lambda index"), exp);
        else
            throw std::invalid_argument("unknown symbol '" + sym + "'");
    }
    validate(gen);
    return gen;
}

} // namespace torelli
