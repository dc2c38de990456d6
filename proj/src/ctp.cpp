#include "torelli/ctp.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace torelli::ctp {

int GenusTree::total_genus() const
{
    return std::accumulate(genus.begin(), genus.end(), 0);
}

int GenusTree::degree(int v) const
{
    int d = 0;
    for (auto [a, b] : edges)
        d += (a == v) + (b == v);
    return d;
}

bool GenusTree::adjacent(int v, int w) const
{
    for (auto [a, b] : edges)
        if ((a == v && b == w) || (a == w && b == v))
            return true;
    return false;
}

namespace {

std::vector<std::vector<int>> neighbours(const GenusTree &t)
{
    std::vector<std::vector<int>> nb(t.genus.size());
    for (auto [a, b] : t.edges) {
        nb[a].push_back(b);
        nb[b].push_back(a);
    }
    return nb;
}

std::string rooted(const GenusTree &t, const std::vector<std::vector<int>> &nb, int v, int parent)
{
    std::vector<std::string> kids;
    for (int w : nb[v])
        if (w != parent)
            kids.push_back(rooted(t, nb, w, v));
    std::sort(kids.begin(), kids.end());
    std::string s = "(" + std::to_string(t.genus[v]);
    for (const auto &k : kids)
        s += k;
    return s + ")";
}

std::vector<int> centers(const GenusTree &t, const std::vector<std::vector<int>> &nb)
{
    int n = t.num_vertices();
    std::vector<int> deg(n), layer;
    std::vector<bool> gone(n, false);
    for (int v = 0; v < n; ++v) {
        deg[v] = static_cast<int>(nb[v].size());
        if (deg[v] <= 1)
            layer.push_back(v);
    }
    int left = n;
    while (left > 2) {
        std::vector<int> next;
        for (int v : layer) {
            gone[v] = true;
            --left;
            for (int w : nb[v])
                if (!gone[w] && --deg[w] == 1)
                    next.push_back(w);
        }
        layer = next;
    }
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (!gone[v])
            out.push_back(v);
    return out;
}

} // namespace

std::string GenusTree::canonical() const
{
    if (genus.empty())
        return "()";
    auto nb = neighbours(*this);
    auto c = centers(*this, nb);
    if (c.size() == 1)
        return rooted(*this, nb, c[0], -1);
    std::string a = rooted(*this, nb, c[0], c[1]), b = rooted(*this, nb, c[1], c[0]);
    if (b < a)
        std::swap(a, b);
    return "[" + a + b + "]";
}

std::string GenusTree::str() const
{
    std::ostringstream os;
    os << "V";
    for (std::size_t i = 0; i < genus.size(); ++i)
        os << (i ? "," : " ") << genus[i];
    if (!edges.empty()) {
        os << "; E";
        for (std::size_t i = 0; i < edges.size(); ++i)
            os << (i ? "," : " ") << edges[i].first << "-" << edges[i].second;
    }
    return os.str();
}

char sign_char(Sign s)
{
    return s == Sign::Plus ? '+' : (s == Sign::Minus ? '-' : 'B');
}

std::string sign_name(Sign s)
{
    return s == Sign::Plus ? "+" : (s == Sign::Minus ? "-" : "+-");
}

namespace {

std::vector<GenusTree> tree_shapes(int k)
{
    std::vector<GenusTree> cur{GenusTree{{0}, {}}};
    for (int n = 2; n <= k; ++n) {
        std::map<std::string, GenusTree> next;
        for (const auto &t : cur)
            for (int v = 0; v < t.num_vertices(); ++v) {
                GenusTree s = t;
                s.genus.push_back(0);
                s.edges.push_back({v, n - 1});
                next.emplace(s.canonical(), s);
            }
        cur.clear();
        for (auto &[key, t] : next)
            cur.push_back(std::move(t));
    }
    return cur;
}

void for_each_genus_vector(int k, int g, int lo, const std::function<void(const std::vector<int> &)> &fn)
{
    std::vector<int> v(k);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == k - 1) {
            if (left >= lo) {
                v[i] = left;
                fn(v);
            }
            return;
        }
        for (int x = lo; x <= left; ++x) {
            v[i] = x;
            rec(i + 1, left - x);
        }
    };
    rec(0, g);
}

std::string sigma_string(const std::optional<Sign> &s)
{
    return s ? std::string(1, sign_char(*s)) : std::string(".");
}

} // namespace

std::vector<GenusTree> enumerate_stable_trees(int g, bool positive_only, std::optional<int> max_edges)
{
    if (g < 1)
        throw std::invalid_argument("enumerate_stable_trees needs g >= 1");
    // A genus-0 vertex has valence >= 3, so there are at most g - 2 of them beside at most g
    // positive-genus vertices.
    int kmax = positive_only ? g : std::max(1, 2 * g - 2);
    if (max_edges)
        kmax = std::min(kmax, *max_edges + 1);
    std::map<std::string, GenusTree> found;
    for (int k = 1; k <= kmax; ++k)
        for (const auto &shape : tree_shapes(k))
            for_each_genus_vector(k, g, positive_only ? 1 : 0, [&](const std::vector<int> &gv) {
                GenusTree t = shape;
                t.genus = gv;
                for (int v = 0; v < k; ++v)
                    if (gv[v] == 0 && t.degree(v) < 3)
                        return;
                found.emplace(t.canonical(), t);
            });
    std::vector<GenusTree> out;
    for (auto &[key, t] : found)
        out.push_back(std::move(t));
    std::stable_sort(out.begin(), out.end(),
                     [](const GenusTree &a, const GenusTree &b) { return a.edges.size() < b.edges.size(); });
    return out;
}

bool Component::valid(std::string *why) const
{
    auto fail = [&](const std::string &m) {
        if (why)
            *why = m;
        return false;
    };
    int n = t1.num_vertices();
    if (t2.num_vertices() != n || static_cast<int>(nu.size()) != n || static_cast<int>(sigma.size()) != n)
        return fail("size mismatch");
    std::vector<bool> hit(n, false);
    for (int v = 0; v < n; ++v) {
        if (nu[v] < 0 || nu[v] >= n || hit[nu[v]])
            return fail("nu is not a bijection");
        hit[nu[v]] = true;
        if (t1.genus[v] < 1)
            return fail("vertex of genus 0");
        if (t2.genus[nu[v]] != t1.genus[v])
            return fail("nu does not preserve genus");
        if (t1.genus[v] >= 2 && !sigma[v])
            return fail("missing sign");
        if (t1.genus[v] < 2 && sigma[v])
            return fail("sign on a genus-1 vertex");
        if (sigma[v] && ((*sigma[v] == Sign::Both) != (t1.genus[v] == 2)))
            return fail("sign +- must occur exactly at genus 2");
    }
    for (auto [a, b] : t1.edges)
        if (t1.genus[a] == 1 && t1.genus[b] == 1 && t2.adjacent(nu[a], nu[b]))
            return fail("adjacent elliptic pair");
    return true;
}

std::string Component::canonical() const
{
    int n = t1.num_vertices();
    std::vector<int> inv(n);
    for (int v = 0; v < n; ++v)
        inv[nu[v]] = v;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    bool first = true;
    do {
        // perm[v] = new label of t1 vertex v
        std::ostringstream os;
        std::vector<std::string> verts(n);
        for (int v = 0; v < n; ++v)
            verts[perm[v]] = std::to_string(t1.genus[v]) + sigma_string(sigma[v]);
        for (const auto &s : verts)
            os << s << ' ';
        auto edge_list = [&](const std::vector<std::pair<int, int>> &es, bool second) {
            std::vector<std::pair<int, int>> out;
            for (auto [a, b] : es) {
                int x = perm[second ? inv[a] : a], y = perm[second ? inv[b] : b];
                out.push_back({std::min(x, y), std::max(x, y)});
            }
            std::sort(out.begin(), out.end());
            return out;
        };
        os << '|';
        for (auto [a, b] : edge_list(t1.edges, false))
            os << a << '-' << b << ' ';
        os << '|';
        for (auto [a, b] : edge_list(t2.edges, true))
            os << a << '-' << b << ' ';
        std::string s = os.str();
        if (first || s < best)
            best = s;
        first = false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

Component Component::swapped() const
{
    Component c;
    c.t1 = t2;
    c.t2 = t1;
    int n = t1.num_vertices();
    c.nu.assign(n, 0);
    c.sigma.assign(n, std::nullopt);
    for (int v = 0; v < n; ++v) {
        c.nu[nu[v]] = v;
        c.sigma[nu[v]] = sigma[v];
    }
    return c;
}

std::string Component::name() const
{
    if (t1.total_genus() == 4) {
        if (t1.num_vertices() == 1)
            return "Delta" + sign_name(*sigma[0]);
        if (t1.num_vertices() == 2) {
            int big = t1.genus[0] >= t1.genus[1] ? 0 : 1;
            if (t1.genus[big] == 3)
                return "A" + sign_name(*sigma[big]);
            if (t1.genus[big] == 2)
                return "B";
        }
    }
    return canonical();
}

std::string Component::serialize() const
{
    std::ostringstream os;
    os << "T1 " << t1.str() << "\nT2 " << t2.str() << "\nnu:";
    for (int x : nu)
        os << ' ' << x;
    os << "\nsigma:";
    for (std::size_t v = 0; v < sigma.size(); ++v)
        if (sigma[v])
            os << ' ' << v << ':' << sign_name(*sigma[v]);
    return os.str();
}

namespace {

std::string trim(const std::string &s)
{
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

GenusTree parse_tree(const std::string &text)
{
    GenusTree t;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) {
        part = trim(part);
        if (part.empty())
            continue;
        char kind = part[0];
        std::stringstream items(trim(part.substr(1)));
        std::string item;
        while (std::getline(items, item, ',')) {
            item = trim(item);
            if (item.empty())
                continue;
            if (kind == 'V')
                t.genus.push_back(std::stoi(item));
            else if (kind == 'E') {
                auto dash = item.find('-');
                if (dash == std::string::npos)
                    throw std::invalid_argument("bad edge '" + item + "'");
                t.edges.push_back({std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1))});
            } else
                throw std::invalid_argument("bad tree part '" + part + "'");
        }
    }
    int n = t.num_vertices();
    if (n == 0 || static_cast<int>(t.edges.size()) != n - 1)
        throw std::invalid_argument("not a tree: " + text);
    for (auto [a, b] : t.edges)
        if (a < 0 || b < 0 || a >= n || b >= n || a == b)
            throw std::invalid_argument("bad edge in " + text);
    std::vector<int> root(n);
    std::iota(root.begin(), root.end(), 0);
    std::function<int(int)> find = [&](int x) { return root[x] == x ? x : root[x] = find(root[x]); };
    for (auto [a, b] : t.edges) {
        int x = find(a), y = find(b);
        if (x == y)
            throw std::invalid_argument("not a tree: " + text);
        root[x] = y;
    }
    return t;
}

} // namespace

Component Component::parse(const std::string &text)
{
    Component c;
    bool have1 = false, have2 = false, have_nu = false;
    std::stringstream ss(text);
    std::string line;
    std::vector<std::pair<int, Sign>> signs;
    while (std::getline(ss, line)) {
        line = trim(line);
        if (line.empty())
            continue;
        if (line.rfind("T1 ", 0) == 0) {
            c.t1 = parse_tree(line.substr(3));
            have1 = true;
        } else if (line.rfind("T2 ", 0) == 0) {
            c.t2 = parse_tree(line.substr(3));
            have2 = true;
        } else if (line.rfind("nu:", 0) == 0) {
            std::stringstream is(line.substr(3));
            int x;
            while (is >> x)
                c.nu.push_back(x);
            have_nu = true;
        } else if (line.rfind("sigma:", 0) == 0) {
            std::stringstream is(line.substr(6));
            std::string tok;
            while (is >> tok) {
                auto colon = tok.find(':');
                if (colon == std::string::npos)
                    throw std::invalid_argument("bad sigma entry '" + tok + "'");
                std::string s = tok.substr(colon + 1);
                Sign sg = s == "+" ? Sign::Plus : s == "-" ? Sign::Minus : s == "+-" ? Sign::Both
                                                                                    : throw std::invalid_argument("bad sign '" + s + "'");
                signs.push_back({std::stoi(tok.substr(0, colon)), sg});
            }
        } else
            throw std::invalid_argument("unrecognized component line '" + line + "'");
    }
    if (!have1 || !have2 || !have_nu)
        throw std::invalid_argument("component needs T1, T2 and nu lines");
    c.sigma.assign(c.t1.genus.size(), std::nullopt);
    for (auto [v, s] : signs) {
        if (v < 0 || v >= static_cast<int>(c.sigma.size()))
            throw std::invalid_argument("sigma vertex out of range");
        c.sigma[v] = s;
    }
    std::string why;
    if (!c.valid(&why))
        throw std::invalid_argument("invalid component: " + why);
    return c;
}

std::vector<Component> enumerate_components(int g, std::optional<int> max_edges, int max_vertices)
{
    if (g < 2)
        throw std::invalid_argument("enumerate_components needs g >= 2");
    if (!max_edges && g >= 4)
        max_edges = 1;
    auto trees = enumerate_stable_trees(g, true, max_edges);
    for (const auto &a : trees)
        if (a.num_vertices() > max_vertices)
            throw EnumerationLimit("component enumeration limited to trees with at most " +
                                   std::to_string(max_vertices) + " vertices");
    std::map<std::string, Component> found;
    for (const auto &a : trees) {
        for (const auto &b : trees) {
            if (a.num_vertices() != b.num_vertices())
                continue;
            auto ga = a.genus, gb = b.genus;
            std::sort(ga.begin(), ga.end());
            std::sort(gb.begin(), gb.end());
            if (ga != gb)
                continue;
            int n = a.num_vertices();
            std::vector<int> nu(n);
            std::iota(nu.begin(), nu.end(), 0);
            do {
                bool ok = true;
                for (int v = 0; v < n && ok; ++v)
                    ok = a.genus[v] == b.genus[nu[v]];
                if (!ok)
                    continue;
                std::vector<int> free;
                for (int v = 0; v < n; ++v)
                    if (a.genus[v] >= 3)
                        free.push_back(v);
                for (unsigned mask = 0; mask < (1u << free.size()); ++mask) {
                    Component c{a, b, nu, std::vector<std::optional<Sign>>(n)};
                    for (int v = 0; v < n; ++v)
                        if (a.genus[v] == 2)
                            c.sigma[v] = Sign::Both;
                    for (std::size_t i = 0; i < free.size(); ++i)
                        c.sigma[free[i]] = (mask >> i) & 1u ? Sign::Minus : Sign::Plus;
                    if (c.valid())
                        found.emplace(c.canonical(), c);
                }
            } while (std::next_permutation(nu.begin(), nu.end()));
        }
    }
    std::vector<Component> out;
    for (auto &[k, c] : found)
        out.push_back(std::move(c));
    std::stable_sort(out.begin(), out.end(), [](const Component &x, const Component &y) {
        if (x.t1.edges.size() != y.t1.edges.size())
            return x.t1.edges.size() < y.t1.edges.size();
        return x.name() < y.name();
    });
    return out;
}

int component_dimension(const Component &c)
{
    int d = 0;
    for (int v = 0; v < c.t1.num_vertices(); ++v) {
        int g = c.t1.genus[v];
        d += 3 * g - 3 + 2 * c.t1.degree(v) - (g == 1 ? 1 : 0);
    }
    return d;
}

std::string HalfEdgePairing::str() const
{
    std::ostringstream os;
    os << "g=" << genus << " n=" << n0 << "," << n1 << " blue";
    for (auto [a, b] : blue)
        os << ' ' << a << '-' << b;
    os << " red";
    for (auto [a, b] : red)
        os << ' ' << a << '-' << b;
    return os.str();
}

HalfEdgePairing HalfEdgePairing::parse(const std::string &text)
{
    HalfEdgePairing p;
    std::stringstream ss(text);
    std::string tok;
    std::vector<std::pair<int, int>> *cur = nullptr;
    bool have_g = false, have_n = false;
    while (ss >> tok) {
        if (tok.rfind("g=", 0) == 0) {
            p.genus = std::stoi(tok.substr(2));
            have_g = true;
        } else if (tok.rfind("n=", 0) == 0) {
            auto comma = tok.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("expected n=A,B");
            p.n0 = std::stoi(tok.substr(2, comma - 2));
            p.n1 = std::stoi(tok.substr(comma + 1));
            have_n = true;
        } else if (tok == "blue")
            cur = &p.blue;
        else if (tok == "red")
            cur = &p.red;
        else {
            auto dash = tok.find('-');
            if (!cur || dash == std::string::npos)
                throw std::invalid_argument("unexpected token '" + tok + "'");
            cur->push_back({std::stoi(tok.substr(0, dash)), std::stoi(tok.substr(dash + 1))});
        }
    }
    if (!have_g || !have_n)
        throw std::invalid_argument("pairing needs g= and n= fields");
    return p;
}

namespace {

// Vertex ids: side 0 is 0..n0-1, side 1 is n0..n0+n1-1. partner[color][v] or -1.
struct Adjacency {
    int n = 0;
    std::array<std::vector<int>, 2> partner;
};

Adjacency adjacency(const HalfEdgePairing &p)
{
    if (p.n0 < 0 || p.n1 < 0)
        throw MalformedPairing("negative half-edge count");
    Adjacency a;
    a.n = p.n0 + p.n1;
    for (int c = 0; c < 2; ++c) {
        a.partner[c].assign(a.n, -1);
        for (auto [x, y] : c == 0 ? p.blue : p.red) {
            if (x < 0 || x >= p.n0 || y < 0 || y >= p.n1)
                throw MalformedPairing("edge " + std::to_string(x) + "-" + std::to_string(y) + " out of range");
            int u = x, v = p.n0 + y;
            if (a.partner[c][u] >= 0 || a.partner[c][v] >= 0)
                throw MalformedPairing(std::string("vertex with two ") + (c == 0 ? "blue" : "red") + " edges");
            a.partner[c][u] = v;
            a.partner[c][v] = u;
        }
    }
    return a;
}

struct Piece {
    bool cycle;
    int length;
    std::vector<int> vertices; // in walking order
    int first_color;           // color of the first edge walked, -1 if no edge
};

std::vector<Piece> decompose(const Adjacency &a)
{
    std::vector<Piece> out;
    std::vector<bool> seen(a.n, false);
    auto deg = [&](int v) { return (a.partner[0][v] >= 0) + (a.partner[1][v] >= 0); };
    auto walk = [&](int start, int color, bool cycle) {
        Piece pc{cycle, 0, {start}, color};
        seen[start] = true;
        int v = start;
        int c = color;
        while (c >= 0 && a.partner[c][v] >= 0) {
            int w = a.partner[c][v];
            ++pc.length;
            if (w == start)
                break;
            seen[w] = true;
            pc.vertices.push_back(w);
            v = w;
            c = 1 - c;
        }
        out.push_back(pc);
    };
    for (int v = 0; v < a.n; ++v)
        if (!seen[v] && deg(v) <= 1)
            walk(v, a.partner[0][v] >= 0 ? 0 : (a.partner[1][v] >= 0 ? 1 : -1), false);
    for (int v = 0; v < a.n; ++v)
        if (!seen[v])
            walk(v, 0, true);
    return out;
}

} // namespace

PairingVerdict check_pairing(const HalfEdgePairing &p)
{
    auto a = adjacency(p);
    int two_cycles = 0;
    for (const auto &pc : decompose(a)) {
        if (pc.cycle) {
            if (pc.length != 2 && pc.length != 4)
                return {false, "cycle of length " + std::to_string(pc.length)};
            two_cycles += pc.length == 2;
        } else if (pc.length > 3)
            return {false, "path of length " + std::to_string(pc.length)};
    }
    if (two_cycles > 2 * p.genus + 2)
        return {false, std::to_string(two_cycles) + " cycles of length 2, at most " + std::to_string(2 * p.genus + 2) +
                           " allowed"};
    return {true, ""};
}

bool check_pairing_bruteforce(const HalfEdgePairing &p)
{
    int n = p.n0 + p.n1;
    std::vector<int> root(n);
    std::iota(root.begin(), root.end(), 0);
    std::function<int(int)> find = [&](int x) { return root[x] == x ? x : root[x] = find(root[x]); };
    std::vector<std::pair<int, int>> all = p.blue;
    all.insert(all.end(), p.red.begin(), p.red.end());
    for (auto [x, y] : all)
        root[find(x)] = find(p.n0 + y);
    std::map<int, int> verts, edges;
    for (int v = 0; v < n; ++v)
        ++verts[find(v)];
    for (auto [x, y] : all)
        ++edges[find(x)];
    int two = 0;
    for (auto [r, nv] : verts) {
        int ne = edges.count(r) ? edges[r] : 0;
        if (ne == nv) {
            if (ne != 2 && ne != 4)
                return false;
            two += ne == 2;
        } else if (ne > 3)
            return false;
    }
    return two <= 2 * p.genus + 2;
}

HalfEdgePairing completion(const HalfEdgePairing &p)
{
    auto a = adjacency(p);
    HalfEdgePairing q = p;
    for (const auto &pc : decompose(a)) {
        if (pc.cycle || pc.length != 3)
            continue;
        int u = pc.vertices.front(), w = pc.vertices.back();
        // edge colors along the path are c, 1-c, c; the closing edge gets 1-c
        auto &dst = pc.first_color == 0 ? q.red : q.blue;
        if (u >= p.n0)
            std::swap(u, w);
        dst.push_back({u, w - p.n0});
    }
    std::sort(q.blue.begin(), q.blue.end());
    std::sort(q.red.begin(), q.red.end());
    return q;
}

bool pairing_equivalent(const HalfEdgePairing &p, const HalfEdgePairing &q)
{
    for (const auto *x : {&p, &q}) {
        auto v = check_pairing(*x);
        if (!v.ok)
            throw std::invalid_argument("pairing is not admissible: " + v.diagnostic);
    }
    if (p.genus != q.genus || p.n0 != q.n0 || p.n1 != q.n1)
        return false;
    auto a = completion(p), b = completion(q);
    return a.blue == b.blue && a.red == b.red;
}

std::vector<IntersectionStratum> one_edge_intersections(int g)
{
    if (g != 4)
        throw std::invalid_argument("one_edge_intersections is implemented for g = 4");
    auto comps = enumerate_components(g, 1);
    std::vector<const Component *> diag, other;
    for (const auto &c : comps)
        (c.t1.edges.empty() ? diag : other).push_back(&c);
    std::vector<IntersectionStratum> out;
    int z = 0;
    for (const Component *y : other)
        for (const Component *d : diag) {
            Sign s = *d->sigma[0];
            // Specialize the diagonal component to the tree of y: genus >= 3 vertices keep
            // the sign (genus 2 may take +-), and every half-edge at a vertex of genus >= 2 is
            // paired with its partner, one condition each.
            bool meets = true;
            int conditions = 0;
            for (int v = 0; v < y->t1.num_vertices(); ++v) {
                if (y->t1.genus[v] >= 3 && *y->sigma[v] != s)
                    meets = false;
                if (y->t1.genus[v] >= 2)
                    conditions += y->t1.degree(v);
            }
            if (!meets)
                continue;
            IntersectionStratum st;
            st.name = "Z" + std::to_string(++z);
            st.x = d->name();
            st.y = y->name();
            st.dimension = component_dimension(*y) - conditions;
            st.note = "gamma" + sign_name(s) + " pairing on the half-edges of genus >= 2 vertices";
            out.push_back(st);
        }
    for (std::size_t i = 0; i < diag.size(); ++i)
        for (std::size_t j = i + 1; j < diag.size(); ++j) {
            IntersectionStratum st;
            st.name = diag[i]->name() + " & " + diag[j]->name();
            st.x = diag[i]->name();
            st.y = diag[j]->name();
            st.dimension = 2 * g - 1;
            st.divisorial = false;
            st.note = "supported on the hyperelliptic locus, codimension " +
                      std::to_string(3 * g - 3 - (2 * g - 1)) + " in each factor";
            out.push_back(st);
        }
    return out;
}

} // namespace torelli::ctp
