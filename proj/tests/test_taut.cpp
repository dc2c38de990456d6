#include "torelli/acceptance.hpp"
#include "torelli/graph.hpp"
#include "torelli/taut.hpp"

#include <doctest.h>

#include <random>

using namespace torelli;

namespace {

const Policy CT = Policy::CompactType;

long aut(const std::string &s, Policy p = CT)
{
    return canonicalize(parse_generator(s, p)).automorphisms;
}

} // namespace

TEST_CASE("graph serialization round trip")
{
    for (const char *s : {"V 4", "V 1 3; E 0-1", "V 2; L p@0 x@0; decor p:psi^1", "V 2; L p@0; decor v0:kappa2^1",
                          "V 1 3; E 0-1; decor e0.1:psi^1"}) {
        Generator g = parse_generator(s, CT);
        CHECK(to_string(g) == s);
    }
    CHECK_THROWS(parse_generator("V 0", CT));
    CHECK_THROWS(validate(parse_generator("V 1 1; E 0-1 0-1", CT)));
}

TEST_CASE("canonicalization and automorphisms")
{
    CHECK(aut("V 4") == 1);
    CHECK(aut("V 2 2; E 0-1") == 2);
    CHECK(aut("V 1 3; E 0-1") == 1);
    CHECK(aut("V 2 2; E 0-1; decor e0.0:psi^1") == 1);
    CHECK(aut("V 1 2 1; E 0-1 1-2") == 2);
    CHECK(aut("V 3; E 0-0", Policy::Stable) == 2);
    CHECK(canonicalize(parse_generator("V 3 1; E 0-1", CT)).gen == canonicalize(parse_generator("V 1 3; E 1-0", CT)).gen);
}

TEST_CASE("property: canonicalization is idempotent and relabeling-invariant")
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        Generator g = acceptance::random_generator(rng, i % 2 ? Policy::Stable : CT, 5);
        CanonicalForm cf = canonicalize(g);
        CanonicalForm again = canonicalize(cf.gen);
        CHECK(again.gen == cf.gen);
        CHECK(again.automorphisms == cf.automorphisms);
        CanonicalForm moved = canonicalize(acceptance::relabel(g, rng));
        CHECK(moved.gen == cf.gen);
        CHECK(moved.automorphisms == cf.automorphisms);
    }
}

TEST_CASE("forgetful pullback")
{
    Ambient base(3, {"p"}, CT);
    Ambient up = base.with_marking("x");
    CHECK(pullback_forgetful(kappa_class(base, 2), "x") == kappa_class(up, 2) - psi_class(up, "x", 2));
    CHECK(pullback_forgetful(lambda_class(base, 1), "x") == lambda_class(up, 1));
    CHECK(pullback_forgetful(psi_class(base, "p"), "x") == psi_class(up, "p") - delta_rational_tail(up, "p", "x"));
}

TEST_CASE("forgetful pushforward")
{
    for (int g = 1; g <= 5; ++g) {
        Ambient up(g, {"p", "x"}, CT);
        Ambient base(g, {"p"}, CT);
        CHECK(pushforward_forgetful(psi_class(up, "x"), "x") == Rational(2 * g - 1) * unit_class(base));
        CHECK(pushforward_forgetful(lambda_class(up, 1), "x").is_zero());
    }
}

TEST_CASE("property: projection formula pi_*(pi^* a psi_x) = kappa_0 a")
{
    for (auto [g, n] : std::vector<std::pair<int, int>>{{4, 1}, {3, 1}, {2, 2}, {5, 0}}) {
        Ambient amb = Ambient::numbered(g, n, CT);
        Ambient up = amb.with_marking("x");
        Rational k0(2 * g - 2 + n);
        std::vector<TautClass> alphas{lambda_class(amb, 1), kappa_class(amb, 2), delta_class(amb),
                                      unit_class(amb)};
        for (const auto &a : alphas) {
            TautClass back = pushforward_forgetful(multiply(pullback_forgetful(a, "x"), psi_class(up, "x")), "x");
            CHECK(back == k0 * a);
        }
    }
}

TEST_CASE("gluing pullback")
{
    Ambient m4(4, {}, CT);
    OneEdge a13{false, 1, {}, 3, {}};
    auto f = a13.factors(CT);
    REQUIRE(f.size() == 2);
    auto one = [&](int i) { return unit_class(f[i]); };
    CHECK(pullback_gluing(kappa_class(m4, 2), a13) ==
          ProductClass::tensor({kappa_class(f[0], 2), one(1)}) + ProductClass::tensor({one(0), kappa_class(f[1], 2)}));
    CHECK(pullback_gluing(lambda_class(m4, 1), a13) ==
          ProductClass::tensor({lambda_class(f[0], 1), one(1)}) +
              ProductClass::tensor({one(0), lambda_class(f[1], 1)}));
    ProductClass want = ProductClass::tensor({delta_class(f[0]), one(1)}) +
                        ProductClass::tensor({one(0), delta_class(f[1])}) -
                        ProductClass::tensor({psi_class(f[0], a13.h_a), one(1)}) -
                        ProductClass::tensor({one(0), psi_class(f[1], a13.h_b)});
    CHECK(pullback_gluing(delta_class(m4), a13) == want);
}

TEST_CASE("gluing pushforward")
{
    Ambient m4(4, {}, CT);
    OneEdge b22{false, 2, {}, 2, {}};
    auto fb = b22.factors(CT);
    CHECK(Rational(1, 2) * pushforward_gluing(ProductClass::tensor({unit_class(fb[0]), unit_class(fb[1])}), b22) ==
          delta_split(m4, 2, {}));
    OneEdge a13{false, 1, {}, 3, {}};
    auto fa = a13.factors(CT);
    CHECK(pushforward_gluing(ProductClass::tensor({unit_class(fa[0]), unit_class(fa[1])}), a13) ==
          delta_split(m4, 1, {}));
    TautClass dec = pushforward_gluing(ProductClass::tensor({psi_class(fa[0], a13.h_a), unit_class(fa[1])}), a13);
    TautClass want(m4);
    want.add(parse_generator("V 1 3; E 0-1; decor e0.0:psi^1", CT), Rational(1));
    CHECK(dec == want);
}

TEST_CASE("ring products")
{
    Ambient m4(4, {}, CT);
    Monomial sq;
    sq.mul_lambda(1, 2);
    CHECK(multiply(lambda_class(m4, 1), lambda_class(m4, 1)) == monomial_class(m4, sq));
    OneEdge a13{false, 1, {}, 3, {}};
    auto f = a13.factors(CT);
    TautClass dA = delta_split(m4, 1, {});
    TautClass proj = pushforward_gluing(ProductClass::tensor({lambda_class(f[0], 1), unit_class(f[1])}) +
                                            ProductClass::tensor({unit_class(f[0]), lambda_class(f[1], 1)}),
                                        a13);
    CHECK(multiply(dA, lambda_class(m4, 1)) == proj);
    CHECK(multiply(lambda_class(m4, 1), dA) == proj);
    CHECK(power(delta_class(m4), 0) == unit_class(m4));
}

TEST_CASE("kappa_1 expansion")
{
    Ambient m11 = Ambient::numbered(1, 1, Policy::Stable);
    CHECK(kappa1_expand(kappa_class(m11, 1)) ==
          Rational(12) * lambda_class(m11, 1) + psi_class(m11, "1") - delta_class(m11));
    Ambient m4(4, {}, CT);
    CHECK(kappa1_expand(kappa_class(m4, 2)) == kappa_class(m4, 2));
    TautClass k1 = kappa1_expand(kappa_class(m4, 1));
    CHECK(kappa1_expand(multiply(kappa_class(m4, 1), kappa_class(m4, 1))) == multiply(k1, k1));
}

TEST_CASE("class serialization round trip")
{
    Ambient m4(4, {}, CT);
    TautClass c = Rational(13) * lambda_class(m4, 1) - Rational(2, 3) * delta_class(m4) + kappa_class(m4, 2);
    CHECK(TautClass::parse(m4, c.serialize()) == c);
    CHECK(pretty(Rational(16) * lambda_class(m4, 1)) == "16 lambda1");
}
