#include "torelli/taut.hpp"

#include "surgery.hpp"

#include <algorithm>
#include <sstream>

namespace torelli {

using detail::GenTerms;

Ambient::Ambient(int g_, std::vector<std::string> m, Policy p) : g(g_), markings(std::move(m)), policy(p)
{
    std::sort(markings.begin(), markings.end());
    if (std::adjacent_find(markings.begin(), markings.end()) != markings.end())
        throw std::invalid_argument("repeated marking");
    if (g < 0 || 2 * g - 2 + n() <= 0)
        throw std::invalid_argument("unstable moduli space (g=" + std::to_string(g) + ", n=" + std::to_string(n()) +
                                    ")");
}

Ambient Ambient::numbered(int g, int n, Policy policy)
{
    std::vector<std::string> m;
    for (int i = 1; i <= n; ++i)
        m.push_back(std::to_string(i));
    return Ambient(g, m, policy);
}

bool Ambient::has_marking(const std::string &m) const
{
    return std::binary_search(markings.begin(), markings.end(), m);
}

Ambient Ambient::with_marking(const std::string &x) const
{
    if (has_marking(x))
        throw std::invalid_argument("marking '" + x + "' already present");
    auto m = markings;
    m.push_back(x);
    return Ambient(g, m, policy);
}

Ambient Ambient::without_marking(const std::string &x) const
{
    if (!has_marking(x))
        throw std::invalid_argument("marking '" + x + "' not present");
    auto m = markings;
    m.erase(std::find(m.begin(), m.end(), x));
    return Ambient(g, m, policy);
}

std::string Ambient::str() const
{
    std::ostringstream os;
    os << "M_{" << g << ",{";
    for (std::size_t i = 0; i < markings.size(); ++i)
        os << (i ? "," : "") << markings[i];
    os << "}}" << (policy == Policy::CompactType ? "^ct" : "");
    return os.str();
}

TautClass::TautClass(Ambient amb) : amb_(std::move(amb)) {}

std::set<int> TautClass::degrees() const
{
    std::set<int> d;
    for (const auto &[g, c] : terms_)
        d.insert(g.degree());
    return d;
}

namespace {

void check_lives_on(const Generator &g, const Ambient &amb)
{
    if (g.graph.policy != amb.policy || g.graph.total_genus() != amb.g || g.graph.markings() != amb.markings)
        throw std::invalid_argument("generator " + to_string(g) + " does not live on " + amb.str());
}

void accumulate(std::map<Generator, Rational> &terms, const Generator &g, const Rational &c)
{
    if (c.is_zero())
        return;
    auto [it, fresh] = terms.emplace(g, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero())
            terms.erase(it);
    }
}

} // namespace

void TautClass::add(const Generator &g, const Rational &c)
{
    if (c.is_zero())
        return;
    validate(g);
    check_lives_on(g, amb_);
    if (vanishes_trivially(g))
        return;
    accumulate(terms_, canonicalize(g).gen, c);
}

TautClass &TautClass::operator+=(const TautClass &o)
{
    if (o.amb_ != amb_)
        throw std::invalid_argument("adding classes on different spaces");
    for (const auto &[g, c] : o.terms_)
        accumulate(terms_, g, c);
    return *this;
}

TautClass &TautClass::operator-=(const TautClass &o)
{
    if (o.amb_ != amb_)
        throw std::invalid_argument("subtracting classes on different spaces");
    for (const auto &[g, c] : o.terms_)
        accumulate(terms_, g, -c);
    return *this;
}

TautClass &TautClass::operator*=(const Rational &c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &[g, v] : terms_)
        v *= c;
    return *this;
}

std::string TautClass::serialize() const
{
    std::ostringstream os;
    for (const auto &[g, c] : terms_)
        os << c << '\t' << to_string(g) << '\n';
    return os.str();
}

TautClass TautClass::parse(const Ambient &amb, const std::string &text)
{
    TautClass out(amb);
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw std::invalid_argument("class line needs a tab: '" + line + "'");
        out.add(parse_generator(line.substr(tab + 1), amb.policy), Rational::parse(line.substr(0, tab)));
    }
    return out;
}

Ambient OneEdge::target(Policy p) const
{
    if (loop)
        return Ambient(g_a + 1, legs_a, p);
    auto m = legs_a;
    m.insert(m.end(), legs_b.begin(), legs_b.end());
    return Ambient(g_a + g_b, m, p);
}

std::vector<Ambient> OneEdge::factors(Policy p) const
{
    auto a = legs_a;
    a.push_back(h_a);
    if (loop) {
        a.push_back(h_b);
        return {Ambient(g_a, a, p)};
    }
    auto b = legs_b;
    b.push_back(h_b);
    return {Ambient(g_a, a, p), Ambient(g_b, b, p)};
}

Generator OneEdge::generator(Policy p) const
{
    StableGraph g;
    g.policy = p;
    if (loop) {
        g.genus = {g_a};
        g.edges = {{0, 0, h_a, h_b}};
        for (const auto &l : legs_a)
            g.legs.push_back({l, 0});
    } else {
        g.genus = {g_a, g_b};
        g.edges = {{0, 1, h_a, h_b}};
        for (const auto &l : legs_a)
            g.legs.push_back({l, 0});
        for (const auto &l : legs_b)
            g.legs.push_back({l, 1});
    }
    return Generator::bare(g);
}

namespace {

struct Side {
    int g;
    std::vector<std::string> legs;
    auto operator<=>(const Side &) const = default;
};

std::string side_str(const Side &s)
{
    std::string out = "{" + std::to_string(s.g) + ",{";
    for (std::size_t i = 0; i < s.legs.size(); ++i)
        out += (i ? "," : "") + s.legs[i];
    return out + "}}";
}

} // namespace

std::string boundary_name(const Ambient &amb, const Generator &g)
{
    if (g.graph.edges.size() != 1)
        throw std::invalid_argument("not a one-edge graph");
    const auto &e = g.graph.edges[0];
    if (e.v0 == e.v1)
        return "delta_irr";
    Side a{g.graph.genus[e.v0], {}}, b{g.graph.genus[e.v1], {}};
    for (const auto &l : g.graph.legs)
        (l.vertex == e.v0 ? a : b).legs.push_back(l.label);
    std::sort(a.legs.begin(), a.legs.end());
    std::sort(b.legs.begin(), b.legs.end());
    if (b < a)
        std::swap(a, b);
    if (amb.g == 4 && amb.n() == 0)
        return a.g == 1 ? "delta_A" : "delta_B";
    return "delta_" + side_str(a);
}

std::vector<BoundaryDivisor> one_edge_graphs(const Ambient &amb)
{
    std::vector<BoundaryDivisor> out;
    std::set<Generator> seen;
    auto push = [&](const OneEdge &shape) {
        auto cf = canonicalize(shape.generator(amb.policy));
        if (!seen.insert(cf.gen).second)
            return;
        out.push_back({shape, cf.gen, cf.automorphisms, boundary_name(amb, cf.gen)});
    };
    int n = amb.n();
    for (int g1 = 0; g1 <= amb.g; ++g1)
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            OneEdge s;
            s.g_a = g1;
            s.g_b = amb.g - g1;
            for (int i = 0; i < n; ++i)
                (mask & (1u << i) ? s.legs_a : s.legs_b).push_back(amb.markings[i]);
            if (!detail::stable_vertex(s.g_a, static_cast<int>(s.legs_a.size()) + 1) ||
                !detail::stable_vertex(s.g_b, static_cast<int>(s.legs_b.size()) + 1))
                continue;
            push(s);
        }
    if (amb.policy == Policy::Stable && amb.g >= 1 && detail::stable_vertex(amb.g - 1, n + 2)) {
        OneEdge s;
        s.loop = true;
        s.g_a = amb.g - 1;
        s.legs_a = amb.markings;
        push(s);
    }
    return out;
}

namespace {

Generator point_generator(const Ambient &amb)
{
    StableGraph g;
    g.policy = amb.policy;
    g.genus = {amb.g};
    for (const auto &m : amb.markings)
        g.legs.push_back({m, 0});
    return Generator::bare(g);
}

} // namespace

TautClass unit_class(const Ambient &amb)
{
    TautClass c(amb);
    c.add(point_generator(amb), Rational(1));
    return c;
}

TautClass monomial_class(const Ambient &amb, const Monomial &m)
{
    TautClass c(amb);
    Generator g = point_generator(amb);
    g.decor.vertex[0] = m;
    c.add(g, Rational(1));
    return c;
}

TautClass kappa_class(const Ambient &amb, int i)
{
    if (i == 0)
        return Rational(2 * amb.g - 2 + amb.n()) * unit_class(amb);
    Monomial m;
    m.mul_kappa(i);
    return monomial_class(amb, m);
}

TautClass lambda_class(const Ambient &amb, int i)
{
    if (i == 0)
        return unit_class(amb);
    Monomial m;
    m.mul_lambda(i);
    return monomial_class(amb, m);
}

TautClass psi_class(const Ambient &amb, const std::string &marking, int exp)
{
    TautClass c(amb);
    Generator g = point_generator(amb);
    int l = g.leg_index(marking);
    if (l < 0)
        throw std::invalid_argument("no marking '" + marking + "' on " + amb.str());
    g.decor.leg_psi[l] = exp;
    c.add(g, Rational(1));
    return c;
}

TautClass delta_class(const Ambient &amb)
{
    TautClass c(amb);
    for (const auto &d : one_edge_graphs(amb))
        c.add(d.gen, Rational(1, d.automorphisms));
    return c;
}

TautClass delta_split(const Ambient &amb, int g1, const std::vector<std::string> &side)
{
    OneEdge s;
    s.g_a = g1;
    s.g_b = amb.g - g1;
    s.legs_a = side;
    for (const auto &m : amb.markings)
        if (std::find(side.begin(), side.end(), m) == side.end())
            s.legs_b.push_back(m);
    if (!detail::stable_vertex(s.g_a, static_cast<int>(s.legs_a.size()) + 1) ||
        !detail::stable_vertex(s.g_b, static_cast<int>(s.legs_b.size()) + 1))
        throw std::invalid_argument("boundary split is unstable");
    auto cf = canonicalize(s.generator(amb.policy));
    TautClass c(amb);
    c.add(cf.gen, Rational(1, cf.automorphisms));
    return c;
}

TautClass delta_irr(const Ambient &amb)
{
    if (amb.policy != Policy::Stable)
        throw std::invalid_argument("delta_irr needs the stable policy");
    OneEdge s;
    s.loop = true;
    s.g_a = amb.g - 1;
    s.legs_a = amb.markings;
    auto cf = canonicalize(s.generator(amb.policy));
    TautClass c(amb);
    c.add(cf.gen, Rational(1, cf.automorphisms));
    return c;
}

TautClass delta_rational_tail(const Ambient &amb, const std::string &p, const std::string &x)
{
    return delta_split(amb, 0, {p, x});
}

ProductClass::ProductClass(std::vector<Ambient> factors) : factors_(std::move(factors)) {}

ProductClass ProductClass::tensor(const std::vector<TautClass> &parts)
{
    std::vector<Ambient> f;
    for (const auto &p : parts)
        f.push_back(p.ambient());
    ProductClass out(f);
    std::vector<std::pair<Key, Rational>> acc{{{}, Rational(1)}};
    for (const auto &p : parts) {
        std::vector<std::pair<Key, Rational>> next;
        for (const auto &[k, c] : acc)
            for (const auto &[g, d] : p.terms()) {
                Key k2 = k;
                k2.push_back(g);
                next.push_back({k2, c * d});
            }
        acc = std::move(next);
    }
    for (const auto &[k, c] : acc)
        out.terms_[k] += c;
    std::erase_if(out.terms_, [](const auto &kv) { return kv.second.is_zero(); });
    return out;
}

void ProductClass::add(const Key &k, const Rational &c)
{
    if (c.is_zero())
        return;
    if (k.size() != factors_.size())
        throw std::invalid_argument("term has the wrong number of factors");
    Key canon;
    for (std::size_t i = 0; i < k.size(); ++i) {
        validate(k[i]);
        check_lives_on(k[i], factors_[i]);
        if (vanishes_trivially(k[i]))
            return;
        canon.push_back(canonicalize(k[i]).gen);
    }
    auto [it, fresh] = terms_.emplace(canon, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

ProductClass &ProductClass::operator+=(const ProductClass &o)
{
    if (o.factors_ != factors_)
        throw std::invalid_argument("adding product classes on different spaces");
    for (const auto &[k, c] : o.terms_) {
        auto [it, fresh] = terms_.emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }
    return *this;
}

ProductClass &ProductClass::operator-=(const ProductClass &o)
{
    ProductClass neg = o;
    neg *= Rational(-1);
    return *this += neg;
}

ProductClass &ProductClass::operator*=(const Rational &c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &[k, v] : terms_)
        v *= c;
    return *this;
}

std::string ProductClass::serialize() const
{
    std::ostringstream os;
    for (const auto &[k, c] : terms_) {
        os << c << '\t';
        for (std::size_t i = 0; i < k.size(); ++i)
            os << (i ? " | " : "") << to_string(k[i]);
        os << '\n';
    }
    return os.str();
}

namespace {

GenTerms multiply_terms(const Generator &a, const Generator &b) { return detail::multiply_generators(a, b); }

} // namespace

TautClass multiply(const TautClass &a, const TautClass &b)
{
    if (a.ambient() != b.ambient())
        throw std::invalid_argument("multiplying classes on different spaces");
    TautClass out(a.ambient());
    for (const auto &[ga, ca] : a.terms())
        for (const auto &[gb, cb] : b.terms())
            for (const auto &[g, c] : multiply_terms(ga, gb))
                out.add(g, ca * cb * c);
    return out;
}

TautClass power(const TautClass &a, int e)
{
    if (e < 0)
        throw std::invalid_argument("negative power");
    TautClass out = unit_class(a.ambient());
    for (int i = 0; i < e; ++i)
        out = multiply(out, a);
    return out;
}

ProductClass multiply(const ProductClass &a, const ProductClass &b)
{
    if (a.factors() != b.factors())
        throw std::invalid_argument("multiplying product classes on different spaces");
    ProductClass out(a.factors());
    for (const auto &[ka, ca] : a.terms())
        for (const auto &[kb, cb] : b.terms()) {
            std::vector<std::pair<ProductClass::Key, Rational>> acc{{{}, ca * cb}};
            for (std::size_t i = 0; i < ka.size(); ++i) {
                std::vector<std::pair<ProductClass::Key, Rational>> next;
                auto prods = multiply_terms(ka[i], kb[i]);
                for (const auto &[k, c] : acc)
                    for (const auto &[g, d] : prods) {
                        auto k2 = k;
                        k2.push_back(g);
                        next.push_back({k2, c * d});
                    }
                acc = std::move(next);
            }
            for (const auto &[k, c] : acc)
                out.add(k, c);
        }
    return out;
}

TautClass pullback_forgetful(const TautClass &c, const std::string &x)
{
    TautClass out(c.ambient().with_marking(x));
    for (const auto &[g, k] : c.terms())
        for (const auto &[h, d] : detail::forget_pullback(g, x))
            out.add(h, k * d);
    return out;
}

TautClass pushforward_forgetful(const TautClass &c, const std::string &x)
{
    TautClass out(c.ambient().without_marking(x));
    for (const auto &[g, k] : c.terms())
        for (const auto &[h, d] : detail::forget_pushforward(g, x))
            out.add(h, k * d);
    return out;
}

namespace {

template <class Op>
ProductClass on_factor(const ProductClass &c, int factor, const Ambient &new_amb, Op op)
{
    if (factor < 0 || factor >= static_cast<int>(c.factors().size()))
        throw std::invalid_argument("factor index out of range");
    auto f = c.factors();
    f[factor] = new_amb;
    ProductClass out(f);
    for (const auto &[k, coef] : c.terms())
        for (const auto &[h, d] : op(k[factor])) {
            auto k2 = k;
            k2[factor] = h;
            out.add(k2, coef * d);
        }
    return out;
}

} // namespace

ProductClass pullback_forgetful(const ProductClass &c, int factor, const std::string &x)
{
    return on_factor(c, factor, c.factors().at(factor).with_marking(x),
                     [&](const Generator &g) { return detail::forget_pullback(g, x); });
}

ProductClass pushforward_forgetful(const ProductClass &c, int factor, const std::string &x)
{
    return on_factor(c, factor, c.factors().at(factor).without_marking(x),
                     [&](const Generator &g) { return detail::forget_pushforward(g, x); });
}

ProductClass pullback_gluing(const TautClass &c, const OneEdge &gamma)
{
    if (gamma.target(c.ambient().policy) != c.ambient())
        throw std::invalid_argument("gluing graph does not match " + c.ambient().str());
    ProductClass out(gamma.factors(c.ambient().policy));
    for (const auto &[g, k] : c.terms())
        for (const auto &[fs, d] : detail::glue_pullback(g, gamma))
            out.add(fs, k * d);
    return out;
}

TautClass pushforward_gluing(const ProductClass &c, const OneEdge &gamma)
{
    Policy p = c.factors().empty() ? Policy::CompactType : c.factors()[0].policy;
    if (gamma.factors(p) != c.factors())
        throw std::invalid_argument("factor spaces do not match the gluing graph");
    TautClass out(gamma.target(p));
    for (const auto &[k, coef] : c.terms())
        out.add(detail::glue_pushforward(k, gamma), coef);
    return out;
}

TautClass kappa1_expand(const TautClass &c)
{
    TautClass done(c.ambient());
    TautClass todo = c;
    while (!todo.is_zero()) {
        TautClass next(c.ambient());
        for (const auto &[g, k] : todo.terms()) {
            bool changed = false;
            auto terms = detail::kappa1_step(g, changed);
            for (const auto &[h, d] : terms)
                (changed ? next : done).add(h, k * d);
        }
        todo = std::move(next);
    }
    return done;
}

TautClass restrict_interior(const TautClass &c)
{
    TautClass out(c.ambient());
    for (const auto &[g, k] : c.terms())
        if (g.graph.edges.empty())
            out.add(g, k);
    return out;
}

TautClass change_policy(const TautClass &c, Policy p)
{
    Ambient amb = c.ambient();
    amb.policy = p;
    TautClass out(amb);
    for (const auto &[g, k] : c.terms()) {
        Generator h = g;
        h.graph.policy = p;
        out.add(h, k);
    }
    return out;
}

std::string monomial_name(const Monomial &m)
{
    std::string out;
    auto put = [&](const std::string &s, int e) {
        if (!out.empty())
            out += "*";
        out += s;
        if (e > 1)
            out += "^" + std::to_string(e);
    };
    for (auto [i, e] : m.lambda)
        put("lambda" + std::to_string(i), e);
    for (auto [i, e] : m.kappa)
        put("kappa" + std::to_string(i), e);
    return out;
}

namespace {

// Name of a single generator, and the factor by which its coefficient is scaled in the
// printed form (|Aut| for boundary divisors, so that 1/2 xi_B reads as delta_B).
std::pair<std::string, long> generator_name(const Ambient &amb, const Generator &g)
{
    if (g.graph.edges.empty()) {
        std::string s = monomial_name(g.decor.vertex[0]);
        for (std::size_t i = 0; i < g.graph.legs.size(); ++i) {
            int e = g.decor.leg_psi[i];
            if (e == 0)
                continue;
            if (!s.empty())
                s += "*";
            s += "psi_" + g.graph.legs[i].label;
            if (e > 1)
                s += "^" + std::to_string(e);
        }
        return {s.empty() ? "1" : s, 1};
    }
    if (g.graph.edges.size() == 1 && g.degree() == 1)
        return {boundary_name(amb, g), canonicalize(g).automorphisms};
    return {"[" + to_string(g) + "]", 1};
}

std::string join_terms(const std::vector<std::pair<std::string, Rational>> &items)
{
    if (items.empty())
        return "0";
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const auto &[name, c] = items[i];
        Rational a = c.sign() < 0 ? -c : c;
        if (i == 0)
            out += c.sign() < 0 ? "-" : "";
        else
            out += c.sign() < 0 ? " - " : " + ";
        if (name == "1")
            out += a.str();
        else if (a == Rational(1))
            out += name;
        else
            out += a.str() + " " + name;
    }
    return out;
}

} // namespace

std::string pretty(const TautClass &c)
{
    std::vector<std::pair<std::string, Rational>> point, divisors, rest;
    std::map<std::string, Rational> div_coeff;
    for (const auto &[g, k] : c.terms()) {
        auto [name, scale] = generator_name(c.ambient(), g);
        Rational coef = k * Rational(scale);
        if (g.graph.edges.empty())
            point.push_back({name, coef});
        else if (g.graph.edges.size() == 1 && g.degree() == 1)
            div_coeff[name] += coef;
        else
            rest.push_back({name, coef});
    }
    auto all = one_edge_graphs(c.ambient());
    bool collapse = !all.empty() && div_coeff.size() == all.size();
    if (collapse) {
        Rational first = div_coeff.begin()->second;
        for (const auto &[n, v] : div_coeff)
            collapse = collapse && v == first;
        if (collapse)
            divisors.push_back({"delta", first});
    }
    if (!collapse)
        for (const auto &[n, v] : div_coeff)
            divisors.push_back({n, v});
    std::vector<std::pair<std::string, Rational>> items = point;
    items.insert(items.end(), divisors.begin(), divisors.end());
    items.insert(items.end(), rest.begin(), rest.end());
    return join_terms(items);
}

std::string pretty(const ProductClass &c)
{
    std::vector<std::pair<std::string, Rational>> items;
    for (const auto &[k, coef] : c.terms()) {
        std::string name;
        Rational scale(1);
        for (std::size_t i = 0; i < k.size(); ++i) {
            auto [n, s] = generator_name(c.factors()[i], k[i]);
            name += (i ? " (x) " : "") + n;
            scale *= Rational(s);
        }
        items.push_back({name, coef * scale});
    }
    return join_terms(items);
}

} // namespace torelli
