#include "torelli/rational.hpp"

#include <stdexcept>

namespace torelli {

Rational::Rational(long n, long d)
{
    if (d == 0)
        throw std::domain_error("rational with zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational::Rational(const mpz_class &n, const mpz_class &d)
{
    if (d == 0)
        throw std::domain_error("rational with zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational Rational::parse(const std::string &s)
{
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return Rational(mpz_class(s));
        return Rational(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
    } catch (const std::invalid_argument &) {
        throw std::invalid_argument("not a rational: '" + s + "'");
    }
}

Rational &Rational::operator/=(const Rational &o)
{
    if (o.is_zero())
        throw std::domain_error("division by zero rational");
    v_ /= o.v_;
    return *this;
}

long Rational::to_long() const
{
    if (!is_integer() || !v_.get_num().fits_slong_p())
        throw std::range_error("rational " + str() + " is not a machine integer");
    return v_.get_num().get_si();
}

std::string Rational::str() const
{
    if (is_integer())
        return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational pow(const Rational &base, unsigned exp)
{
    Rational r(1);
    for (unsigned i = 0; i < exp; ++i)
        r *= base;
    return r;
}

Rational factorial(unsigned n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

Rational binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n)
        return Rational(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(b);
}

} // namespace torelli
