#include "torelli/excess.hpp"

#include "torelli/series.hpp"

#include <stdexcept>

namespace torelli::excess {

namespace {

void check_dims(const ExcessDims &dims)
{
    if (dims.d_A < 1 || dims.d_B < 1)
        throw std::invalid_argument("excess dimensions must be positive, got (" + std::to_string(dims.d_A) + ", " +
                                    std::to_string(dims.d_B) + ")");
}

TruncatedSeries total_chern(const std::vector<int> &degrees, int cap)
{
    TruncatedSeries c = TruncatedSeries::one(cap);
    for (int a : degrees)
        c = series_mul(c, TruncatedSeries::linear(Rational(a), cap));
    return c;
}

int sgn_pow(int e) { return e % 2 == 0 ? 1 : -1; }

} // namespace

long multiplicity(const ExcessDims &dims)
{
    check_dims(dims);
    int d = dims.d();
    Rational m(0);
    for (int k = 1; k <= d - 1; ++k) {
        Rational bracket = binomial(k - 1, dims.d_A - 1) * Rational(sgn_pow(dims.d_A)) +
                           binomial(k - 1, dims.d_B - 1) * Rational(sgn_pow(dims.d_B));
        m += Rational(sgn_pow(k + 1)) * (pow(Rational(2), d - k) - Rational(1)) * binomial(d, k) * bracket;
    }
    m += pow(Rational(2), d) - Rational(2);
    return m.to_long();
}

long multiplicity_shifted(int d_A, int d_B, int k)
{
    if (k < 0)
        throw std::invalid_argument("negative shift");
    if (d_A - k < 1 || d_B - k < 1)
        throw std::invalid_argument("shift " + std::to_string(k) + " makes a dimension non-positive");
    return multiplicity({d_A - k, d_B - k});
}

Rational chern_quotient_degree(const LocalModel &model, Sub sub, int k)
{
    if (k < 0 || k > model.n)
        throw std::invalid_argument("quotient degree " + std::to_string(k) + " outside ambient dimension");
    int cap = model.n;
    const auto &subb = sub == Sub::A ? model.normal_A : model.normal_B;
    TruncatedSeries q = series_mul(total_chern(model.normal, cap), series_inv(total_chern(subb, cap)));
    return q[k];
}

Rational top_chern_degree(const LocalModel &model)
{
    if (static_cast<int>(model.total.size()) != model.n)
        throw std::invalid_argument("model '" + model.name + "': bundle rank differs from ambient dimension");
    return total_chern(model.total, model.n)[model.n];
}

long oracle_multiplicity(const LocalModel &model, const ExcessDims &dims)
{
    check_dims(dims);
    if (dims.d() > model.n)
        throw std::invalid_argument("model '" + model.name + "' is too small for the given dimensions");
    Rational m = top_chern_degree(model) - chern_quotient_degree(model, Sub::A, dims.d_A) -
                 chern_quotient_degree(model, Sub::B, dims.d_B);
    return m.to_long();
}

LocalModel builtin_model(const std::string &name)
{
    if (name == "b2")
        return {"b2", 6, {2, 2, 2, 2, 2, 2}, {2, 2, 2, 2, 2, 2}, {1, 1, 1}, {1, 1, 1}, {3, 3}};
    if (name == "b3")
        return {"b3", 3, {0, 2, 2}, {2, 2}, {1}, {1, 1}, {2, 1}};
    if (name == "b4")
        return {"b4", 2, {2, 0}, {2}, {1}, {1}, {1, 1}};
    throw std::invalid_argument("unknown local model '" + name + "'");
}

std::vector<std::string> builtin_model_names() { return {"b2", "b3", "b4"}; }

bool binomial_identity_check(int d, int k)
{
    if (k < 0 || k > d - 1)
        throw std::invalid_argument("identity needs 0 <= k <= d-1");
    Rational lhs(0);
    for (int j = k; j <= d - 1; ++j)
        lhs += binomial(d, j) * binomial(j, k);
    return lhs == (pow(Rational(2), d - k) - Rational(1)) * binomial(d, k);
}

ResidualResult verify_residual_model()
{
    const int n = 3;
    TruncatedSeries cE = total_chern({2, 2, 2}, n);
    TruncatedSeries cD = TruncatedSeries::linear(Rational(1), n);
    TruncatedSeries D({Rational(0), Rational(1)}, n);

    ResidualResult r;
    r.total = cE[n];
    r.divisor_part = series_mul(series_mul(cE, D), series_inv(cD))[n];
    // R is a reduced point, so only the degree-0 part of c(E) c(O(D))^{-1} survives on it.
    r.residual_part = series_mul(cE, series_inv(cD))[0];
    if (r.total != r.divisor_part + r.residual_part)
        throw std::logic_error("residual decomposition does not add up");
    return r;
}

} // namespace torelli::excess
