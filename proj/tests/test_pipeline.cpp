#include "torelli/pipeline.hpp"

#include <doctest.h>

#include <map>

using namespace torelli;
using namespace torelli::pipeline;

namespace {

const Policy CT = Policy::CompactType;

std::map<std::string, std::string> as_map(const Intermediates &v)
{
    return {v.begin(), v.end()};
}

} // namespace

TEST_CASE("genus 4 contributions")
{
    Ambient m4(4, {}, CT);
    TautClass l1 = lambda_class(m4, 1);
    CHECK(delta_contribution(m4) == Rational(8) * l1 - Rational(2) * delta_class(m4));
    CHECK(a_contribution() == Rational(4) * delta_split(m4, 1, {}));
    Intermediates log;
    CHECK(b_contribution(&log) == Rational(8) * delta_split(m4, 2, {}));
    auto m = as_map(log);
    CHECK(m["B: p1_* c2(TX)"] == "8 delta_B");
    CHECK(m["B: -p1_* p2^* c2(TM)"] == "-24 delta_B");
    CHECK(m["B: p1_* p2^*c1 (p2^*c1 - c1(TX))"] == "32 delta_B");
    CHECK(m["B: p1_* (p2^*delta)^2"] == "16 delta_B");
}

TEST_CASE("genus 4 ledger")
{
    auto r = t_pullback_g4();
    Ambient m4(4, {}, CT);
    CHECK(r.final == Rational(16) * lambda_class(m4, 1));
    CHECK(r.ledger.total(m4) == r.final);
    std::vector<std::string> labels;
    std::vector<Rational> mults;
    for (const auto &e : r.ledger.entries) {
        labels.push_back(e.label);
        mults.push_back(e.multiplicity);
        CHECK_FALSE(e.anchor.empty());
    }
    CHECK(labels == std::vector<std::string>{"Delta+", "Delta-", "A+", "A-", "B", "Z1", "Z2", "Z3", "Z4", "Z5", "Z6"});
    CHECK(mults == std::vector<Rational>{1, 1, 1, 1, 1, -2, -2, -3, -3, 1, 1});
    CHECK(r.ledger.str().find("Z3") != std::string::npos);
}

TEST_CASE("lambda_g lambda_{g-1} integrals")
{
    CHECK(lambda_gg1_integral(1, {0}) == Rational(1, 24));
    CHECK(lambda_gg1_integral(2, {1}) == Rational(1, 2880));
    CHECK(lambda_gg1_integral(2, {0}).is_zero());
    CHECK(lambda_gg1_integral(3, {}, {1}) == lambda_gg1_integral(3, {2}));
}

TEST_CASE("genus 5 report")
{
    auto r = t_pullback_g5();
    const auto &R = r.report;
    CHECK(R.kappa1_cubed == 288);
    CHECK(R.kappa1_kappa2 == 20);
    CHECK(R.two_c3_N == Rational(454, 15));
    CHECK(R.multiplicity == -20);
    CHECK(R.hyperelliptic == Rational(31, 30));
    CHECK(R.final == Rational(48, 5));
    CHECK(R.two_c3_N + Rational(R.multiplicity) * R.hyperelliptic == R.final);
    Ambient m5(5, {}, CT);
    CHECK(r.final == Rational(48, 5) * kappa_class(m5, 3));
}

TEST_CASE("interior lambda classes in genus 5")
{
    auto l = interior_lambdas(5, 3);
    REQUIRE(l.size() >= 1);
    CHECK(l[0] == Rational(1, 12) * KappaPoly::kappa(1));
}

TEST_CASE("pushforward to the partial compactification of A4")
{
    auto r = t_pushforward_Abar4();
    Ambient mbar4(4, {}, Policy::Stable);
    CHECK(r.curve_side == Rational(16) * lambda_class(mbar4, 1) - Rational(2) * delta_irr(mbar4));
    CHECK(r.c1_delta_irr == 2);
    CHECK(r.d_pullback == delta_irr(mbar4));
    CHECK(r.divisor == chern::AbarDivisor{16, -2});
}

TEST_CASE("dimension of the Torelli self-intersection class")
{
    CHECK(torelli_dimension(4).dimension == 8);
    CHECK_FALSE(torelli_dimension(4).vanishes);
    CHECK(torelli_dimension(5).dimension == 9);
    CHECK(torelli_dimension(10).dimension == -1);
    CHECK(torelli_dimension(10).vanishes);
}

TEST_CASE("reference constants")
{
    std::map<std::string, ConstantRow> rows;
    for (const auto &r : reference_constants()) {
        CHECK(r.tag == "imported, display-only");
        CHECK_FALSE(r.source.empty());
        rows[r.name] = r;
    }
    REQUIRE(rows.size() == 4);
    CHECK(rows["taut(T5)"].value == "2(72 lambda1 lambda2 - 48 lambda3)");
    CHECK(rows["taut(T5)"].overall == 2);
    CHECK(rows["taut(T6)"].coefficients.at("lambda6") == Rational(-248064, 691));
    CHECK(rows["taut(T6)"].overall == 2);
    CHECK(rows["[H5]"].coefficients.at("kappa3") == Rational(31, 30));
    CHECK(hyperelliptic_class_g5() == Rational(31, 30));
}
