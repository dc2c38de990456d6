#include "torelli/series.hpp"

#include <sstream>
#include <stdexcept>

namespace torelli {

namespace {

void check_caps(const TruncatedSeries &a, const TruncatedSeries &b)
{
    if (a.cap() != b.cap())
        throw std::invalid_argument("series cap mismatch: " + std::to_string(a.cap()) + " vs " +
                                    std::to_string(b.cap()));
}

} // namespace

TruncatedSeries::TruncatedSeries(int cap) : cap_(cap)
{
    if (cap < 0)
        throw std::invalid_argument("negative series cap");
    c_.assign(cap + 1, Rational(0));
}

TruncatedSeries::TruncatedSeries(std::initializer_list<Rational> coeffs, int cap)
    : TruncatedSeries(std::vector<Rational>(coeffs), cap)
{
}

TruncatedSeries::TruncatedSeries(const std::vector<Rational> &coeffs, int cap) : TruncatedSeries(cap)
{
    if (static_cast<int>(coeffs.size()) > cap + 1)
        throw std::length_error("series has degree above its cap " + std::to_string(cap));
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        c_[i] = coeffs[i];
}

const Rational &TruncatedSeries::operator[](int i) const
{
    if (i < 0 || i > cap_)
        throw std::out_of_range("series index " + std::to_string(i) + " outside cap " + std::to_string(cap_));
    return c_[i];
}

Rational TruncatedSeries::coeff(int i) const { return (*this)[i]; }

void TruncatedSeries::set(int i, const Rational &c)
{
    if (i < 0 || i > cap_)
        throw std::out_of_range("series index " + std::to_string(i) + " outside cap " + std::to_string(cap_));
    c_[i] = c;
}

std::string TruncatedSeries::str() const
{
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i <= cap_; ++i) {
        if (c_[i].is_zero())
            continue;
        if (!first)
            os << " + ";
        first = false;
        os << c_[i];
        if (i == 1)
            os << "*H";
        else if (i > 1)
            os << "*H^" << i;
    }
    if (first)
        os << "0";
    return os.str();
}

TruncatedSeries series_add(const TruncatedSeries &a, const TruncatedSeries &b)
{
    check_caps(a, b);
    TruncatedSeries r(a.cap());
    for (int i = 0; i <= a.cap(); ++i)
        r.set(i, a[i] + b[i]);
    return r;
}

TruncatedSeries series_mul(const TruncatedSeries &a, const TruncatedSeries &b)
{
    check_caps(a, b);
    int n = a.cap();
    TruncatedSeries r(n);
    for (int i = 0; i <= n; ++i) {
        if (a[i].is_zero())
            continue;
        for (int j = 0; i + j <= n; ++j)
            r.set(i + j, r[i + j] + a[i] * b[j]);
    }
    return r;
}

TruncatedSeries series_inv(const TruncatedSeries &a)
{
    if (a[0].is_zero())
        throw std::domain_error("series with zero constant term is not invertible");
    int n = a.cap();
    TruncatedSeries r(n);
    Rational inv0 = Rational(1) / a[0];
    r.set(0, inv0);
    for (int k = 1; k <= n; ++k) {
        Rational s(0);
        for (int j = 1; j <= k; ++j)
            s += a[j] * r[k - j];
        r.set(k, -s * inv0);
    }
    return r;
}

TruncatedSeries series_pow(const TruncatedSeries &a, unsigned e)
{
    TruncatedSeries r = TruncatedSeries::one(a.cap());
    for (unsigned i = 0; i < e; ++i)
        r = series_mul(r, a);
    return r;
}

} // namespace torelli
