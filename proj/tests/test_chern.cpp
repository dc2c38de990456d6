#include "torelli/acceptance.hpp"
#include "torelli/chern.hpp"
#include "torelli/taut.hpp"

#include <doctest.h>

using namespace torelli;
using namespace torelli::chern;

namespace {

const Policy CT = Policy::CompactType;

HodgeExpression L(int g, int i)
{
    return HodgeExpression::lambda(g, i);
}

// Sum over one-edge graphs of xi_*((psi + psibar)/2) / |Aut|.
TautClass half_edge_psi_sum(const Ambient &amb)
{
    TautClass out(amb);
    for (const auto &d : one_edge_graphs(amb))
        for (std::array<int, 2> e : {std::array<int, 2>{1, 0}, std::array<int, 2>{0, 1}}) {
            Generator g = d.gen;
            g.decor.edge_psi[0] = e;
            out.add(g, Rational(1, 2) / Rational(d.automorphisms));
        }
    return out;
}

} // namespace

TEST_CASE("log cotangent Chern character")
{
    Ambient m5(5, {}, CT);
    CHECK(restrict_interior(ch_log_cotangent(m5, 2)) == Rational(1, 2) * kappa_class(m5, 2));
    CHECK(restrict_interior(ch_tangent(m5, 3)) == Rational(-119, 720) * kappa_class(m5, 3));
    Ambient m4(4, {}, CT);
    CHECK(restrict_interior(ch_log_cotangent(m4, 1)) == Rational(13, 12) * kappa_class(m4, 1));
}

TEST_CASE("boundary structure sheaves")
{
    for (Policy p : {CT, Policy::Stable}) {
        Ambient m4(4, {}, p);
        CHECK(ch_structure_sheaves(m4, 1) == delta_class(m4));
        CHECK(ch_structure_sheaves(m4, 0).is_zero());
    }
    Ambient m4(4, {}, CT);
    CHECK(ch_structure_sheaves(m4, 2) == half_edge_psi_sum(m4));
}

TEST_CASE("first Chern class of the tangent bundle")
{
    Ambient m4(4, {}, CT);
    CHECK(chern_tangent_moduli(m4, 1)[0] == Rational(2) * delta_class(m4) - Rational(13) * lambda_class(m4, 1));
    Ambient m32(3, {"q", "y"}, CT);
    CHECK(chern_tangent_moduli(m32, 1)[0] == Rational(2) * delta_class(m32) - Rational(13) * lambda_class(m32, 1) -
                                                 psi_class(m32, "q") - psi_class(m32, "y"));
    CHECK_THROWS(chern_tangent_moduli(m4, 4));
}

TEST_CASE("second Chern class of T M4^ct")
{
    Ambient m4(4, {}, CT);
    TautClass c2 = chern_tangent_moduli(m4, 2)[1];
    CHECK(c2 == acceptance::c2_M4_reference(Rational(-1, 2)));
    CHECK(c2 != acceptance::c2_M4_reference(Rational(-1, 3)));
}

TEST_CASE("Chern character of T A_g")
{
    for (int g = 1; g <= 7; ++g)
        CHECK(ch_tangent_Ag(g, 1, false) == Rational(-(1 + g)) * L(g, 1));
    for (int g = 2; g <= 7; ++g)
        CHECK(ch_tangent_Ag(g, 2, true) == L(g, 2));
    HodgeExpression raw = Rational(1, 6) * (Rational(-12) * (L(5, 1) * L(5, 1) * L(5, 1)) +
                                            Rational(33) * (L(5, 1) * L(5, 2)) + Rational(-27) * L(5, 3));
    CHECK(ch_tangent_Ag(5, 3, false) == raw);
    CHECK(ch_tangent_Ag(5, 3, true).square_free());
    CHECK(ch_tangent_Ag(5, 2, false) == Rational(4) * (L(5, 1) * L(5, 1)) - Rational(7) * L(5, 2));
}

TEST_CASE("property: power sums reduce to zero in even degree")
{
    for (int g = 1; g <= 6; ++g)
        for (int k = 2; k <= 2 * g; k += 2)
            CHECK(power_sum(g, k).reduce().is_zero());
}

TEST_CASE("log canonical class of the partial compactification")
{
    CHECK(c1_log_Abar4() == AbarDivisor{5, -1});
    CHECK(-c1_log_Abar4() == AbarDivisor{-5, 1});
    Ambient mbar4(4, {}, Policy::Stable);
    CHECK(c1_log_Abar4().pullback_torelli() == Rational(5) * lambda_class(mbar4, 1) - delta_irr(mbar4));
}
