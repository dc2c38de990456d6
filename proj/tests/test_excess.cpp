#include "torelli/excess.hpp"

#include <doctest.h>

using namespace torelli;
using namespace torelli::excess;

TEST_CASE("excess multiplicity formula")
{
    CHECK(multiplicity({1, 1}) == -2);
    CHECK(multiplicity({2, 1}) == -3);
    CHECK(multiplicity({3, 3}) == -20);
    CHECK(multiplicity_shifted(3, 3, 0) == -20);
    CHECK(multiplicity_shifted(3, 3, 1) == multiplicity({2, 2}));
    CHECK_THROWS(multiplicity_shifted(2, 1, 1));
}

TEST_CASE("Chern quotient degrees on the local models")
{
    auto b2 = builtin_model("b2");
    CHECK(chern_quotient_degree(b2, Sub::A, 3) == 42);
    CHECK(chern_quotient_degree(b2, Sub::B, 3) == 42);
    CHECK(top_chern_degree(b2) == 64);
    auto b3 = builtin_model("b3");
    CHECK(chern_quotient_degree(b3, Sub::B, 1) == 2);
    CHECK(top_chern_degree(b3) == 0);

    LocalModel same = b2;
    same.normal_A = same.normal;
    for (int k = 1; k <= 3; ++k)
        CHECK(chern_quotient_degree(same, Sub::A, k) == 0);
    CHECK_THROWS(builtin_model("b9"));
}

TEST_CASE("oracle multiplicities on the built-in models")
{
    CHECK(oracle_multiplicity(builtin_model("b2"), {3, 3}) == -20);
    CHECK(oracle_multiplicity(builtin_model("b3"), {2, 1}) == -3);
    CHECK(oracle_multiplicity(builtin_model("b4"), {1, 1}) == -2);
    for (const auto &n : builtin_model_names()) {
        auto m = builtin_model(n);
        CHECK(oracle_multiplicity(m, m.dims) == multiplicity(m.dims));
    }
}

TEST_CASE("property: multiplicity is symmetric for 1 <= a, b <= 8")
{
    for (int a = 1; a <= 8; ++a)
        for (int b = 1; b <= 8; ++b)
            CHECK(multiplicity({a, b}) == multiplicity({b, a}));
}

TEST_CASE("binomial identity")
{
    CHECK(binomial_identity_check(3, 1));
    for (int d = 1; d <= 12; ++d) {
        CHECK(binomial_identity_check(d, d - 1));
        for (int k = 0; k < d; ++k)
            CHECK(binomial_identity_check(d, k));
    }
    CHECK_THROWS(binomial_identity_check(3, 3));
}

TEST_CASE("residual intersection model")
{
    auto r = verify_residual_model();
    CHECK(r.total == 8);
    CHECK(r.divisor_part == 7);
    CHECK(r.residual_part == 1);
    CHECK(r.total == r.divisor_part + r.residual_part);
}
