#pragma once

#include "torelli/rational.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace torelli {

inline constexpr int default_series_cap = 16;

// Univariate power series in H truncated after degree cap.
class TruncatedSeries {
public:
    explicit TruncatedSeries(int cap = default_series_cap);
    TruncatedSeries(std::initializer_list<Rational> coeffs, int cap);
    TruncatedSeries(const std::vector<Rational> &coeffs, int cap);

    static TruncatedSeries one(int cap) { return TruncatedSeries({Rational(1)}, cap); }
    // 1 + a*H, the total Chern class of a line bundle of degree a.
    static TruncatedSeries linear(const Rational &a, int cap) { return TruncatedSeries({Rational(1), a}, cap); }

    int cap() const { return cap_; }
    const Rational &operator[](int i) const;
    Rational coeff(int i) const; // zero above cap is an error, below 0 too
    void set(int i, const Rational &c);

    bool operator==(const TruncatedSeries &o) const = default;
    std::string str() const;

private:
    int cap_;
    std::vector<Rational> c_;
};

TruncatedSeries series_add(const TruncatedSeries &a, const TruncatedSeries &b);
TruncatedSeries series_mul(const TruncatedSeries &a, const TruncatedSeries &b);
TruncatedSeries series_inv(const TruncatedSeries &a);
TruncatedSeries series_pow(const TruncatedSeries &a, unsigned e);

} // namespace torelli
