#include "torelli/bernoulli.hpp"
#include "torelli/newton.hpp"
#include "torelli/rational.hpp"
#include "torelli/series.hpp"

#include <doctest.h>

#include <random>

using namespace torelli;

namespace {

TruncatedSeries S(std::initializer_list<Rational> c, int cap)
{
    return TruncatedSeries(c, cap);
}

Rational mul(const Rational &a, const Rational &b)
{
    return a * b;
}

} // namespace

TEST_CASE("rational arithmetic and serialization")
{
    CHECK(Rational(3, 6) == Rational(1, 2));
    CHECK(Rational(2, -4).str() == "-1/2");
    CHECK(Rational(6, 3).str() == "2");
    CHECK(Rational::parse("-454/15") == Rational(-454, 15));
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational(454, 15) - Rational(20) * Rational(31, 30) == Rational(48, 5));
    CHECK_THROWS(Rational(1, 0));
    CHECK_THROWS(Rational(1, 2).to_long());
}

TEST_CASE("bernoulli polynomials")
{
    CHECK(bernoulli_number(1) == Rational(-1, 2));
    CHECK(bernoulli_number(2) == Rational(1, 6));
    CHECK(bernoulli_number(12) == Rational(-691, 2730));
    CHECK(bernoulli_polynomial(1, Rational(1)) == Rational(1, 2));
    CHECK(bernoulli_polynomial(2, Rational(2)) == Rational(13, 6));
    CHECK(bernoulli_polynomial(3, Rational(2)) == Rational(3));
    CHECK(bernoulli_polynomial(4, Rational(2)) / Rational(24) == Rational(119, 720));
}

TEST_CASE("property: B_m(1) = B_m(0) for m >= 2, and B_m(x+1) - B_m(x) = m x^(m-1)")
{
    for (int m = 2; m <= 30; ++m)
        CHECK(bernoulli_polynomial(m, Rational(1)) == bernoulli_polynomial(m, Rational(0)));
    CHECK(bernoulli_polynomial(1, Rational(1)) != bernoulli_polynomial(1, Rational(0)));
    for (int m = 1; m <= 12; ++m)
        for (Rational x : {Rational(0), Rational(1, 3), Rational(-5, 2), Rational(4)}) {
            Rational pw(1);
            for (int i = 0; i < m - 1; ++i)
                pw *= x;
            CHECK(bernoulli_polynomial(m, x + Rational(1)) - bernoulli_polynomial(m, x) == Rational(m) * pw);
        }
}

TEST_CASE("series products")
{
    auto p = series_mul(S({1, 1}, 2), S({1, -1}, 2));
    CHECK(p.coeff(0) == 1);
    CHECK(p.coeff(1) == 0);
    CHECK(p.coeff(2) == -1);

    auto cube = series_pow(TruncatedSeries::linear(2, 3), 3);
    auto sq = series_mul(cube, cube);
    CHECK(sq.coeff(0) == 1);
    CHECK(sq.coeff(1) == 12);
    CHECK(sq.coeff(2) == 60);
    CHECK(sq.coeff(3) == 160);

    CHECK(series_mul(S({1, 4, 4}, 2), S({1, -2, 3}, 2)).coeff(1) == 2);
}

TEST_CASE("series inverses")
{
    auto a = series_inv(S({1, 1}, 3));
    for (int i = 0; i <= 3; ++i)
        CHECK(a.coeff(i) == Rational(i % 2 ? -1 : 1));
    auto b = series_inv(series_pow(S({1, 1}, 3), 3));
    CHECK(b.coeff(0) == 1);
    CHECK(b.coeff(1) == -3);
    CHECK(b.coeff(2) == 6);
    CHECK(b.coeff(3) == -10);
    CHECK(series_inv(TruncatedSeries::one(5)) == TruncatedSeries::one(5));
    CHECK_THROWS(series_inv(S({0, 1}, 3)));
}

TEST_CASE("property: a * inv(a) = 1 on random series")
{
    std::mt19937_64 rng(7);
    for (int t = 0; t < 300; ++t) {
        int cap = 1 + static_cast<int>(rng() % 12);
        std::vector<Rational> c;
        for (int i = 0; i <= cap; ++i)
            c.push_back(Rational(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 9)));
        if (c[0].is_zero())
            c[0] = Rational(-3, 2);
        TruncatedSeries s(c, cap);
        CHECK(series_mul(s, series_inv(s)) == TruncatedSeries::one(cap));
        CHECK(series_inv(series_inv(s)) == s);
    }
}

TEST_CASE("newton identities")
{
    ChernCharVector<Rational> zero{{0, 0, 0}};
    for (const auto &c : chern_from_ch(zero, 3, mul))
        CHECK(c == 0);

    Rational t(7, 3);
    ChernCharVector<Rational> line{{t, t * t / 2, t * t * t / 6}};
    auto c = chern_from_ch(line, 3, mul);
    CHECK(c[0] == t);
    CHECK(c[1] == 0);
    CHECK(c[2] == 0);

    Rational a(5), b(-2, 3);
    ChernCharVector<Rational> two{{a, b}};
    CHECK(chern_from_ch(two, 2, mul)[1] == (a * a - Rational(2) * b) / 2);

    CHECK_THROWS(chern_from_ch(two, 3, mul));
}

TEST_CASE("property: ch -> c -> ch round trip and closed-form c3")
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        std::vector<Rational> c;
        for (int i = 0; i < 5; ++i)
            c.push_back(Rational(static_cast<long>(rng() % 31) - 15, 1 + static_cast<long>(rng() % 5)));
        auto ch = ch_from_chern(c, mul);
        CHECK(chern_from_ch(ch, 5, mul) == c);
        CHECK(chern3_closed_form(ch[1], ch[2], ch[3], mul) == c[2]);
    }
}
