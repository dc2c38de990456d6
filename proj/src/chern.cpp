#include "torelli/chern.hpp"

#include "torelli/bernoulli.hpp"
#include "torelli/newton.hpp"

#include <sstream>
#include <stdexcept>

namespace torelli::chern {

namespace {

void require_degree(int m)
{
    if (m < 0)
        throw std::invalid_argument("negative degree");
}

// Boundary generator with psi^i on the first glued half and psibar^j on the second.
Generator decorated_edge(const BoundaryDivisor &d, int i, int j)
{
    Generator g = d.gen;
    g.decor.edge_psi[0] = {i, j};
    return g;
}

} // namespace

TautClass ch_log_cotangent(const Ambient &amb, int m)
{
    if (m < 1)
        throw std::invalid_argument("ch_log_cotangent needs m >= 1");
    Rational fact = factorial(m + 1);
    Rational ck = bernoulli_polynomial(m + 1, Rational(2)) / fact;
    Rational cb = bernoulli_polynomial(m + 1, Rational(1)) / fact;
    TautClass out = ck * kappa_class(amb, m);
    for (const auto &p : amb.markings)
        out -= cb * psi_class(amb, p, m);
    if (cb.is_zero())
        return out;
    for (const auto &d : one_edge_graphs(amb)) {
        Rational w = cb / Rational(d.automorphisms);
        for (int i = 0; i <= m - 1; ++i) {
            int j = m - 1 - i;
            out.add(decorated_edge(d, i, j), j % 2 == 0 ? w : -w);
        }
    }
    return out;
}

TautClass ch_structure_sheaves(const Ambient &amb, int m)
{
    require_degree(m);
    TautClass out(amb);
    if (m == 0)
        return out;
    // degree m-1 part of (1 - e^{-t})/t at t = -psi - psibar is (psi + psibar)^{m-1} / m!
    for (const auto &d : one_edge_graphs(amb)) {
        Rational w = Rational(1) / (factorial(m) * Rational(d.automorphisms));
        for (int i = 0; i <= m - 1; ++i)
            out.add(decorated_edge(d, i, m - 1 - i), w * binomial(m - 1, i));
    }
    return out;
}

TautClass ch_tangent(const Ambient &amb, int m)
{
    TautClass c = ch_log_cotangent(amb, m) - ch_structure_sheaves(amb, m);
    return m % 2 == 0 ? c : -c;
}

std::vector<TautClass> chern_tangent_moduli(const Ambient &amb, int k)
{
    if (k < 0 || k > 3)
        throw std::invalid_argument("Chern classes implemented through degree 3");
    ChernCharVector<TautClass> v;
    for (int m = 1; m <= k; ++m)
        v.ch.push_back(kappa1_expand(ch_tangent(amb, m)));
    auto mul = [](const TautClass &a, const TautClass &b) { return kappa1_expand(multiply(a, b)); };
    return chern_from_ch(v, k, mul);
}

HodgeExpression HodgeExpression::lambda(int g, int i)
{
    HodgeExpression h(g);
    if (i == 0)
        h.add_term({}, Rational(1));
    else if (i <= g)
        h.add_term({{i, 1}}, Rational(1));
    return h;
}

HodgeExpression HodgeExpression::constant(int g, const Rational &c)
{
    HodgeExpression h(g);
    h.add_term({}, c);
    return h;
}

void HodgeExpression::add_term(const Exps &e, const Rational &c)
{
    if (c.is_zero())
        return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

HodgeExpression &HodgeExpression::operator+=(const HodgeExpression &o)
{
    if (o.g_ != g_)
        throw std::invalid_argument("Hodge expressions of different genus");
    for (const auto &[e, c] : o.terms_)
        add_term(e, c);
    reduced_ = reduced_ && o.reduced_;
    return *this;
}

HodgeExpression &HodgeExpression::operator*=(const Rational &c)
{
    if (c.is_zero())
        terms_.clear();
    for (auto &[e, v] : terms_)
        v *= c;
    return *this;
}

HodgeExpression operator*(const HodgeExpression &a, const HodgeExpression &b)
{
    if (a.g_ != b.g_)
        throw std::invalid_argument("Hodge expressions of different genus");
    HodgeExpression out(a.g_);
    for (const auto &[ea, ca] : a.terms_)
        for (const auto &[eb, cb] : b.terms_) {
            auto e = ea;
            for (auto [i, x] : eb)
                e[i] += x;
            out.add_term(e, ca * cb);
        }
    return out;
}

bool HodgeExpression::square_free() const
{
    for (const auto &[e, c] : terms_)
        for (auto [i, x] : e)
            if (x > 1)
                return false;
    return true;
}

HodgeExpression HodgeExpression::reduce() const
{
    // lambda_k^2 = 2 (-1)^(k+1) sum_{i<k} (-1)^i lambda_i lambda_(2k-i), from the degree-2k
    // part of c(E) c(E^dual) = 1.
    HodgeExpression cur = *this;
    for (int guard = 0; guard < 10000; ++guard) {
        HodgeExpression next(g_);
        bool changed = false;
        for (const auto &[e, c] : cur.terms_) {
            int k = 0;
            for (auto [i, x] : e)
                if (x > 1) {
                    k = i;
                    break;
                }
            if (k == 0) {
                next.add_term(e, c);
                continue;
            }
            changed = true;
            Exps rest = e;
            if ((rest[k] -= 2) == 0)
                rest.erase(k);
            Rational sign = (k % 2 == 1) ? Rational(2) : Rational(-2);
            for (int i = 0; i < k; ++i) {
                int j = 2 * k - i;
                if (j > g_)
                    continue;
                Exps t = rest;
                if (i > 0)
                    t[i] += 1;
                t[j] += 1;
                next.add_term(t, (i % 2 == 0 ? sign : -sign) * c);
            }
        }
        cur = std::move(next);
        if (!changed) {
            cur.reduced_ = true;
            return cur;
        }
    }
    throw std::runtime_error("lambda reduction did not terminate");
}

TautClass HodgeExpression::evaluate(const std::vector<TautClass> &lambdas) const
{
    if (lambdas.empty())
        throw std::invalid_argument("no lambda values supplied");
    const Ambient &amb = lambdas[0].ambient();
    TautClass out(amb);
    for (const auto &[e, c] : terms_) {
        TautClass t = unit_class(amb);
        for (auto [i, x] : e)
            for (int r = 0; r < x; ++r)
                t = multiply(t, lambdas.at(i - 1));
        out += c * t;
    }
    return out;
}

std::string HodgeExpression::str() const
{
    if (terms_.empty())
        return "0";
    std::vector<std::pair<std::string, Rational>> items;
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto &[e, c] = *it;
        std::string name;
        for (auto [i, x] : e) {
            if (!name.empty())
                name += "*";
            name += "lambda" + std::to_string(i);
            if (x > 1)
                name += "^" + std::to_string(x);
        }
        Rational a = c.sign() < 0 ? -c : c;
        os << (first ? (c.sign() < 0 ? "-" : "") : (c.sign() < 0 ? " - " : " + "));
        if (name.empty())
            os << a;
        else if (a == Rational(1))
            os << name;
        else
            os << a << ' ' << name;
        first = false;
    }
    return os.str();
}

HodgeExpression power_sum(int g, int k)
{
    // p_k = sum_{i<k} (-1)^(i-1) e_i p_(k-i) + (-1)^(k-1) k e_k
    std::vector<HodgeExpression> p{HodgeExpression::constant(g, Rational(g))};
    for (int n = 1; n <= k; ++n) {
        HodgeExpression acc = Rational(n % 2 == 1 ? n : -n) * HodgeExpression::lambda(g, n);
        for (int i = 1; i < n; ++i)
            acc += Rational(i % 2 == 1 ? 1 : -1) * (HodgeExpression::lambda(g, i) * p[n - i]);
        p.push_back(acc);
    }
    return p[k];
}

HodgeExpression ch_tangent_Ag(int g, int m, bool reduced)
{
    if (g < 1 || m < 0 || m > 2 * g)
        throw std::invalid_argument("ch_tangent_Ag needs g >= 1 and 0 <= m <= 2g");
    // roots -a_i - a_j, i <= j: sum_{i<=j} (a_i + a_j)^m = (sum_k C(m,k) p_k p_(m-k) + 2^m p_m) / 2
    HodgeExpression acc(g);
    for (int k = 0; k <= m; ++k)
        acc += binomial(m, k) * (power_sum(g, k) * power_sum(g, m - k));
    acc += pow(Rational(2), m) * power_sum(g, m);
    Rational scale = Rational(m % 2 == 0 ? 1 : -1) / (Rational(2) * factorial(m));
    acc *= scale;
    return reduced ? acc.reduce() : acc;
}

std::string AbarDivisor::str() const
{
    std::ostringstream os;
    bool any = false;
    if (!lambda1.is_zero()) {
        if (lambda1 == Rational(-1))
            os << "-";
        else if (lambda1 != Rational(1))
            os << lambda1 << " ";
        os << "lambda1";
        any = true;
    }
    if (!D.is_zero()) {
        Rational a = D.sign() < 0 ? -D : D;
        os << (any ? (D.sign() < 0 ? " - " : " + ") : (D.sign() < 0 ? "-" : ""));
        if (a != Rational(1))
            os << a << " ";
        os << "D";
        any = true;
    }
    return any ? os.str() : "0";
}

TautClass AbarDivisor::pullback_torelli() const
{
    Ambient amb(4, {}, Policy::Stable);
    return lambda1 * lambda_class(amb, 1) + D * delta_irr(amb);
}

AbarDivisor c1_log_Abar4()
{
    // c_1(Sym^2 E) = (g+1) lambda_1 = 5 lambda_1, log term - [D]
    Rational l = -ch_tangent_Ag(4, 1, false).terms().at({{1, 1}});
    return {l, Rational(-1)};
}

} // namespace torelli::chern
