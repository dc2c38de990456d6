#include "torelli/pipeline.hpp"

#include "torelli/bernoulli.hpp"
#include "torelli/ctp.hpp"
#include "torelli/excess.hpp"
#include "torelli/newton.hpp"

#include <sstream>

namespace torelli::pipeline {

namespace {

constexpr Policy CT = Policy::CompactType;

std::vector<TautClass> lambdas(const Ambient &amb)
{
    std::vector<TautClass> out;
    for (int i = 1; i <= amb.g; ++i)
        out.push_back(lambda_class(amb, i));
    return out;
}

// t^* ch_m or c_1 of T A_g as a class on amb.
TautClass pulled_c1_Ag(const Ambient &amb)
{
    return chern::ch_tangent_Ag(amb.g, 1, false).evaluate(lambdas(amb));
}

ProductClass lift(const std::vector<Ambient> &factors, int i, const TautClass &c)
{
    std::vector<TautClass> parts;
    for (std::size_t j = 0; j < factors.size(); ++j)
        parts.push_back(static_cast<int>(j) == i ? c : unit_class(factors[j]));
    return ProductClass::tensor(parts);
}

// Coefficient of the single-term class `basis` inside c.
Rational coefficient_of(const TautClass &c, const TautClass &basis)
{
    if (basis.terms().size() != 1)
        throw std::invalid_argument("basis class must have one term");
    const auto &[gen, b] = *basis.terms().begin();
    auto it = c.terms().find(gen);
    return it == c.terms().end() ? Rational(0) : it->second / b;
}

void note(Intermediates *log, const std::string &k, const std::string &v)
{
    if (log)
        log->push_back({k, v});
}

struct G4Geometry {
    std::map<std::string, int> dims;
    std::vector<ctp::IntersectionStratum> strata;
};

G4Geometry g4_geometry()
{
    G4Geometry geo;
    for (const auto &c : ctp::enumerate_components(4, 1))
        geo.dims[c.name()] = ctp::component_dimension(c);
    geo.strata = ctp::one_edge_intersections(4);
    for (const char *n : {"Delta+", "Delta-", "A+", "A-", "B"})
        if (!geo.dims.count(n))
            throw PipelineMismatch(std::string("component ") + n + " missing from the enumeration");
    return geo;
}

} // namespace

TautClass ContributionLedger::total(const Ambient &amb) const
{
    TautClass t(amb);
    for (const auto &e : entries)
        t += e.multiplicity * e.cls;
    return t;
}

std::string ContributionLedger::str() const
{
    std::ostringstream os;
    for (const auto &e : entries)
        os << e.label << "\t" << e.multiplicity << " * (" << pretty(e.cls) << ")\t" << e.source << "\t" << e.anchor
           << "\n";
    return os.str();
}

TautClass delta_contribution(const Ambient &amb)
{
    // c_1 of the excess bundle t^*T A_g - T M_g on the diagonal
    TautClass c1M = chern::chern_tangent_moduli(amb, 1)[0];
    return pulled_c1_Ag(amb) - c1M;
}

TautClass a_contribution(Intermediates *log)
{
    Ambient m4(4, {}, CT);
    std::vector<Ambient> fac{Ambient(1, {"p"}, CT), Ambient(3, {"q", "y"}, CT)};
    // The two curves are E u_{p~q} C and E u_{p~y} C.
    OneEdge g1{false, 1, {}, 3, {}, "p", "q"};
    OneEdge g2{false, 1, {}, 3, {}, "p", "y"};
    auto p1_pull = [&](const TautClass &a) { return pullback_forgetful(pullback_gluing(a, g1), 1, "y"); };
    auto p2_pull = [&](const TautClass &a) { return pullback_forgetful(pullback_gluing(a, g2), 1, "q"); };
    auto p1_push = [&](const ProductClass &x) { return pushforward_gluing(pushforward_forgetful(x, 1, "y"), g1); };

    TautClass c1M = chern::chern_tangent_moduli(m4, 1)[0];
    ProductClass c1X = lift(fac, 0, chern::chern_tangent_moduli(fac[0], 1)[0]) +
                       lift(fac, 1, chern::chern_tangent_moduli(fac[1], 1)[0]);
    ProductClass integrand = p1_pull(pulled_c1_Ag(m4)) - p1_pull(c1M) - p2_pull(c1M) + c1X;
    note(log, "A integrand", pretty(integrand));
    TautClass out = p1_push(integrand);
    note(log, "A contribution", pretty(out));
    return out;
}

TautClass b_contribution(Intermediates *log)
{
    Ambient m4(4, {}, CT);
    std::vector<Ambient> fac{Ambient(2, {"p", "x"}, CT), Ambient(2, {"q", "y"}, CT)};
    // First curve glues p~q, second glues x~y.
    OneEdge gp{false, 2, {}, 2, {}, "p", "q"};
    OneEdge gx{false, 2, {}, 2, {}, "x", "y"};
    auto p1_push = [&](const ProductClass &c) {
        return pushforward_gluing(pushforward_forgetful(pushforward_forgetful(c, 0, "x"), 1, "y"), gp);
    };
    auto p2_pull = [&](const TautClass &a) {
        return pullback_forgetful(pullback_forgetful(pullback_gluing(a, gx), 0, "p"), 1, "q");
    };

    auto cM = chern::chern_tangent_moduli(m4, 2);
    auto c0 = chern::chern_tangent_moduli(fac[0], 2);
    auto c1 = chern::chern_tangent_moduli(fac[1], 2);
    ProductClass c1X = lift(fac, 0, c0[0]) + lift(fac, 1, c1[0]);
    ProductClass c2X = lift(fac, 0, c0[1]) + ProductClass::tensor({c0[0], c1[0]}) + lift(fac, 1, c1[1]);

    ProductClass p2c1 = p2_pull(cM[0]);
    TautClass t1 = p1_push(c2X);
    TautClass t2 = -p1_push(p2_pull(cM[1]));
    TautClass t3 = p1_push(multiply(p2c1, p2c1 - c1X));
    TautClass sq = p1_push(p2_pull(multiply(delta_class(m4), delta_class(m4))));
    note(log, "B: p1_* c2(TX)", pretty(t1));
    note(log, "B: -p1_* p2^* c2(TM)", pretty(t2));
    note(log, "B: p1_* (p2^*delta)^2", pretty(sq));
    note(log, "B: p1_* p2^*c1 (p2^*c1 - c1(TX))", pretty(t3));
    TautClass out = Rational(1, 2) * (t1 + t2 + t3);
    note(log, "B contribution", pretty(out));
    return out;
}

G4Result t_pullback_g4()
{
    Ambient m4(4, {}, CT);
    G4Geometry geo = g4_geometry();
    G4Result r{TautClass(m4), {}, {}};

    TautClass dc = delta_contribution(m4);
    note(&r.intermediates, "c1(T M4)", pretty(chern::chern_tangent_moduli(m4, 1)[0]));
    note(&r.intermediates, "t^*c1(T A4)", pretty(pulled_c1_Ag(m4)));
    TautClass ac = a_contribution(&r.intermediates);
    TautClass bc = b_contribution(&r.intermediates);

    for (const char *s : {"Delta+", "Delta-"})
        r.ledger.entries.push_back({s, "c1(t^*T A4 - T M4) on the diagonal", dc, Rational(1),
                                    "diagonal components, excess bundle of rank 1"});
    for (const char *s : {"A+", "A-"})
        r.ledger.entries.push_back({s, "p1_* c1 of the excess bundle on M_{1,1} x M_{3,2}", ac, Rational(1),
                                    "(1,3)-tree components via forgetful and gluing maps"});
    r.ledger.entries.push_back({"B", "half of p1_* c2 of the excess bundle on M_{2,2} x M_{2,2}", bc, Rational(1),
                                "(2,2)-tree component, halved for the swap of the two factors"});

    TautClass dA = delta_split(m4, 1, {});
    TautClass dB = delta_split(m4, 2, {});
    int zn = 0;
    for (const auto &z : geo.strata) {
        if (!z.divisorial) {
            note(&r.intermediates, z.name, "dimension " + std::to_string(z.dimension) + ", " + z.note);
            continue;
        }
        ++zn;
        excess::ExcessDims d{geo.dims.at(z.x) - z.dimension, geo.dims.at(z.y) - z.dimension};
        long m = excess::multiplicity(d);
        bool is_a = z.y[0] == 'A';
        r.ledger.entries.push_back({z.name, z.x + " & " + z.y + ", d_A=" + std::to_string(d.d_A) +
                                                ", d_B=" + std::to_string(d.d_B),
                                    is_a ? dA : dB, Rational(m),
                                    "excess multiplicity m(" + std::to_string(d.d_A) + "," +
                                        std::to_string(d.d_B) + ")"});
    }
    if (zn != 4)
        throw PipelineMismatch("expected four divisorial one-edge intersections, found " + std::to_string(zn));
    auto res = excess::verify_residual_model();
    for (int i = 0; i < 2; ++i)
        r.ledger.entries.push_back({"Z" + std::to_string(5 + i),
                                    std::string("residual part of Delta") + (i ? "-" : "+") + " & B", dB,
                                    res.residual_part, "residual intersection model"});

    r.final = r.ledger.total(m4);
    for (const auto &[gen, c] : r.final.terms())
        if (!gen.graph.edges.empty())
            throw PipelineMismatch("boundary terms survive in t^*T4:\n" + r.ledger.str() + "total: " + pretty(r.final));
    return r;
}

// ---- genus 5 ----

KappaPoly KappaPoly::kappa(int i)
{
    KappaPoly p;
    p.add({{i, 1}}, Rational(1));
    return p;
}

KappaPoly KappaPoly::constant(const Rational &c)
{
    KappaPoly p;
    p.add({}, c);
    return p;
}

void KappaPoly::add(const std::map<int, int> &e, const Rational &c)
{
    if (c.is_zero())
        return;
    auto [it, fresh] = terms.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero())
            terms.erase(it);
    }
}

KappaPoly &KappaPoly::operator+=(const KappaPoly &o)
{
    for (const auto &[e, c] : o.terms)
        add(e, c);
    return *this;
}

KappaPoly operator*(const Rational &c, KappaPoly a)
{
    if (c.is_zero())
        return {};
    for (auto &[e, v] : a.terms)
        v *= c;
    return a;
}

KappaPoly operator*(const KappaPoly &a, const KappaPoly &b)
{
    KappaPoly out;
    for (const auto &[ea, ca] : a.terms)
        for (const auto &[eb, cb] : b.terms) {
            auto e = ea;
            for (auto [i, x] : eb)
                e[i] += x;
            out.add(e, ca * cb);
        }
    return out;
}

std::string KappaPoly::str() const
{
    if (terms.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[e, c] : terms) {
        Rational a = c.sign() < 0 ? -c : c;
        os << (first ? (c.sign() < 0 ? "-" : "") : (c.sign() < 0 ? " - " : " + "));
        std::string name;
        for (auto [i, x] : e)
            name += (name.empty() ? "" : "*") + std::string("kappa") + std::to_string(i) +
                    (x > 1 ? "^" + std::to_string(x) : "");
        if (name.empty())
            os << a;
        else if (a == Rational(1))
            os << name;
        else
            os << a << " " << name;
        first = false;
    }
    return os.str();
}

namespace {

Rational double_factorial_odd(int d)
{
    // (2d-1)!!, with (-1)!! = 1
    Rational r(1);
    for (int k = 2 * d - 1; k > 1; k -= 2)
        r *= Rational(k);
    return r;
}

} // namespace

Rational lambda_gg1_integral(int g, const std::vector<int> &psi, const std::vector<int> &kappa)
{
    if (g < 1)
        throw std::invalid_argument("lambda_g lambda_{g-1} integrals need g >= 1");
    if (kappa.empty()) {
        int n = static_cast<int>(psi.size());
        int sum = 0;
        for (int d : psi) {
            if (d < 0)
                return Rational(0);
            sum += d;
        }
        if (sum != g - 2 + n || 2 * g - 3 + n < 0)
            return Rational(0);
        Rational b = bernoulli_number(2 * g);
        if (b.sign() < 0)
            b = -b;
        Rational den = pow(Rational(2), 2 * g - 1) * factorial(2 * g);
        for (int d : psi)
            den *= double_factorial_odd(d);
        return factorial(2 * g - 3 + n) * b / den;
    }
    // kappa_b on M_{g,n} is the pushforward of psi_{n+1}^{b+1}; the other kappas pull back
    // as kappa_c - psi_{n+1}^c.
    int b = kappa.back();
    std::vector<int> rest(kappa.begin(), kappa.end() - 1);
    Rational total(0);
    int r = static_cast<int>(rest.size());
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
        int extra = b + 1;
        std::vector<int> keep;
        int sign = 1;
        for (int i = 0; i < r; ++i)
            if ((mask >> i) & 1u) {
                extra += rest[i];
                sign = -sign;
            } else
                keep.push_back(rest[i]);
        std::vector<int> d = psi;
        d.push_back(extra);
        total += Rational(sign) * lambda_gg1_integral(g, d, keep);
    }
    return total;
}

Rational kappa_socle_ratio(int g, const KappaPoly &p)
{
    Rational unit = lambda_gg1_integral(g, {}, {g - 2});
    if (unit.is_zero())
        throw std::invalid_argument("kappa_{g-2} pairs to zero");
    Rational acc(0);
    for (const auto &[e, c] : p.terms) {
        std::vector<int> ks;
        int deg = 0;
        for (auto [i, x] : e)
            for (int k = 0; k < x; ++k) {
                ks.push_back(i);
                deg += i;
            }
        if (deg != g - 2)
            throw std::invalid_argument("kappa monomial of degree " + std::to_string(deg) + ", expected " +
                                        std::to_string(g - 2));
        acc += c * lambda_gg1_integral(g, {}, ks);
    }
    return acc / unit;
}

std::vector<KappaPoly> interior_lambdas(int g, int up_to)
{
    // On M_g: ch_m(E) = B_{m+1}/(m+1)! kappa_m for odd m, zero for even m.
    ChernCharVector<KappaPoly> v;
    for (int m = 1; m <= up_to; ++m)
        v.ch.push_back(m % 2 == 1 ? (bernoulli_number(m + 1) / factorial(m + 1)) * KappaPoly::kappa(m) : KappaPoly{});
    auto out = chern_from_ch(v, up_to, [](const KappaPoly &a, const KappaPoly &b) { return a * b; });
    for (int i = g + 1; i <= up_to; ++i)
        out[i - 1] = KappaPoly{};
    return out;
}

Rational top_interior_coefficient(const TautClass &c)
{
    const Ambient &amb = c.ambient();
    if (amb.n() != 0)
        throw std::invalid_argument("top_interior_coefficient expects an unpointed ambient");
    int g = amb.g;
    auto lam = interior_lambdas(g, g);
    KappaPoly acc;
    for (const auto &[gen, coef] : c.terms()) {
        if (!gen.graph.edges.empty())
            throw std::invalid_argument("boundary term in an interior class: " + to_string(gen));
        const Monomial &m = gen.decor.vertex.at(0);
        KappaPoly t = KappaPoly::constant(coef);
        for (auto [i, x] : m.kappa) {
            KappaPoly k = KappaPoly::kappa(i);
            for (int r = 0; r < x; ++r)
                t = t * k;
        }
        for (auto [i, x] : m.lambda)
            for (int r = 0; r < x; ++r)
                t = t * lam.at(i - 1);
        acc += t;
    }
    return kappa_socle_ratio(g, acc);
}

Rational hyperelliptic_class_g5()
{
    return Rational(31, 30);
}

G5Result t_pullback_g5()
{
    Ambient m5(5, {}, CT);
    G5Report rep{{}, {}, {}, {}, TautClass(m5), {}, {}, {}, 0, {}, {}};
    auto lam = lambdas(m5);
    auto mul = [](const TautClass &a, const TautClass &b) { return restrict_interior(multiply(a, b)); };
    ChernCharVector<TautClass> chN;
    for (int i = 1; i <= 3; ++i) {
        TautClass chM = restrict_interior(kappa1_expand(chern::ch_tangent(m5, i)));
        auto raw = chern::ch_tangent_Ag(5, i, false);
        rep.ch_M.push_back(chM);
        rep.ch_A_raw.push_back(raw);
        rep.ch_A_reduced.push_back(raw.reduce());
        TautClass n = restrict_interior(raw.evaluate(lam)) - chM;
        rep.ch_N.push_back(n);
        chN.ch.push_back(n);
    }
    auto c = chern_from_ch(chN, 3, mul);
    rep.c3_N = c[2];
    TautClass closed = chern3_closed_form(chN[1], chN[2], chN[3], mul);
    if (top_interior_coefficient(closed) != top_interior_coefficient(c[2]))
        throw PipelineMismatch("c3(N) from Newton and from the closed form disagree");

    Monomial k111, k12;
    k111.mul_kappa(1, 3);
    k12.mul_kappa(1);
    k12.mul_kappa(2);
    rep.kappa1_cubed = top_interior_coefficient(monomial_class(m5, k111));
    rep.kappa1_kappa2 = top_interior_coefficient(monomial_class(m5, k12));
    rep.two_c3_N = Rational(2) * top_interior_coefficient(c[2]);
    rep.multiplicity = excess::multiplicity({3, 3});
    rep.hyperelliptic = hyperelliptic_class_g5();
    rep.final = rep.two_c3_N + Rational(rep.multiplicity) * rep.hyperelliptic;
    return {rep.final * kappa_class(m5, 3), rep};
}

// ---- Abar_4 ----

Abar4Result t_pushforward_Abar4()
{
    Ambient s4(4, {}, Policy::Stable);
    Ambient m4(4, {}, CT);
    TautClass c1 = chern::chern_tangent_moduli(s4, 1)[0];
    TautClass dirr = delta_irr(s4);
    chern::AbarDivisor c1log = chern::c1_log_Abar4();

    Abar4Result r{TautClass(s4), {}, TautClass(s4), coefficient_of(c1, dirr),
                  chern::AbarDivisor{0, 1}.pullback_torelli()};
    // t^*c_1(T Abar_4) = -(t^* c_1(Omega^log)) with D pulling back to delta_irr
    r.diagonal_each = (-c1log).pullback_torelli() - c1;

    G4Result g4 = t_pullback_g4();
    TautClass others(m4);
    for (const auto &e : g4.ledger.entries)
        if (e.label.rfind("Delta", 0) != 0)
            others += e.multiplicity * e.cls;
    r.curve_side = Rational(2) * r.diagonal_each + change_policy(others, Policy::Stable);

    TautClass l1 = lambda_class(s4, 1);
    r.divisor = {coefficient_of(r.curve_side, l1), coefficient_of(r.curve_side, dirr)};
    if (!(r.curve_side == r.divisor.pullback_torelli()))
        throw PipelineMismatch("t^*t_*[Mbar_4] is not a combination of lambda1 and delta_irr: " + pretty(r.curve_side));
    return r;
}

DimensionVerdict torelli_dimension(int g)
{
    if (g < 2)
        throw std::invalid_argument("torelli_dimension needs g >= 2");
    int d = (-g * g + 11 * g - 12) / 2;
    DimensionVerdict v{d, d < 0, ""};
    if (v.vanishes)
        v.note = "vanishes (negative dimension)";
    else if (g == 8)
        v.note = "vanishes since R^i(M_8^ct) = 0 for i > 2g-3 (cited, not recomputed)";
    return v;
}

const std::vector<ConstantRow> &reference_constants()
{
    static const std::vector<ConstantRow> rows = [] {
        const std::string faber = "C. Faber, tautological projections of the Torelli image (external computation)";
        std::vector<ConstantRow> r;
        r.push_back({"taut(T5)", "2(72 lambda1 lambda2 - 48 lambda3)", "imported, display-only", faber,
                     {{"lambda1*lambda2", 72}, {"lambda3", -48}}, 2});
        r.push_back({"taut(T6)",
                     "2(384 lambda1 lambda2 lambda3 - 1152 lambda2 lambda4 + 474048/691 lambda1 lambda5 - "
                     "248064/691 lambda6)",
                     "imported, display-only",
                     faber,
                     {{"lambda1*lambda2*lambda3", 384},
                      {"lambda2*lambda4", -1152},
                      {"lambda1*lambda5", Rational(474048, 691)},
                      {"lambda6", Rational(-248064, 691)}},
                     2});
        r.push_back({"taut(T7)",
                     "2(768 lambda1 lambda2 lambda3 lambda4 - 6912 lambda2 lambda3 lambda5 + 2209152/691 lambda1 "
                     "lambda4 lambda5 + 7522176/691 lambda1 lambda3 lambda6 - 8842752/691 lambda4 lambda6 + "
                     "968832/691 lambda3 lambda7 - 3276672/691 lambda1 lambda2 lambda7)",
                     "imported, display-only",
                     faber,
                     {{"lambda1*lambda2*lambda3*lambda4", 768},
                      {"lambda2*lambda3*lambda5", -6912},
                      {"lambda1*lambda4*lambda5", Rational(2209152, 691)},
                      {"lambda1*lambda3*lambda6", Rational(7522176, 691)},
                      {"lambda4*lambda6", Rational(-8842752, 691)},
                      {"lambda3*lambda7", Rational(968832, 691)},
                      {"lambda1*lambda2*lambda7", Rational(-3276672, 691)}},
                     2});
        r.push_back({"[H5]", "31/30 kappa3", "imported, display-only",
                     "J. Schmitt, J. van Zelm, intersections of admissible cover loci with tautological classes",
                     {{"kappa3", hyperelliptic_class_g5()}}, 1});
        return r;
    }();
    return rows;
}

} // namespace torelli::pipeline
