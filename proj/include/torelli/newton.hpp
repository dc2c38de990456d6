#pragma once

#include "torelli/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace torelli {

// Chern character entries ch_1..ch_k of some ring R. Entry m has degree m.
template <class R>
struct ChernCharVector {
    std::vector<R> ch; // ch[0] is ch_1

    std::size_t size() const { return ch.size(); }
    const R &operator[](int m) const { return ch.at(static_cast<std::size_t>(m - 1)); }
};

// Newton identities: k c_k = sum_{i=1..k} (-1)^(i-1) i! ch_i c_(k-i), c_0 = 1.
// R needs R + R, R - R, Rational * R; mul(a, b) is the ring product.
template <class R, class Mul>
std::vector<R> chern_from_ch(const ChernCharVector<R> &v, int k, Mul mul)
{
    if (k < 0)
        throw std::invalid_argument("negative Chern degree");
    if (static_cast<int>(v.size()) < k)
        throw std::invalid_argument("Chern character given through degree " + std::to_string(v.size()) +
                                    ", need " + std::to_string(k));
    std::vector<R> c;
    for (int n = 1; n <= k; ++n) {
        Rational top = factorial(n) * Rational(n % 2 == 1 ? 1 : -1);
        R acc = top * v[n];
        for (int i = 1; i < n; ++i) {
            Rational s = factorial(i) * Rational(i % 2 == 1 ? 1 : -1);
            acc = acc + s * mul(v[i], c[n - i - 1]);
        }
        c.push_back(Rational(1, n) * acc);
    }
    return c;
}

// Inverse direction: p_k = sum_{i<k} (-1)^(i-1) c_i p_(k-i) + (-1)^(k-1) k c_k, ch_k = p_k / k!.
template <class R, class Mul>
ChernCharVector<R> ch_from_chern(const std::vector<R> &c, Mul mul)
{
    int k = static_cast<int>(c.size());
    std::vector<R> p;
    ChernCharVector<R> out;
    for (int n = 1; n <= k; ++n) {
        R acc = Rational(n % 2 == 1 ? n : -n) * c[n - 1];
        for (int i = 1; i < n; ++i)
            acc = acc + Rational(i % 2 == 1 ? 1 : -1) * mul(c[i - 1], p[n - i - 1]);
        p.push_back(acc);
        out.ch.push_back((Rational(1) / factorial(n)) * acc);
    }
    return out;
}

// c_3 = (1/3)(6 ch_3 - ch_1^3 + 3 ch_1 (ch_1^2/2 - ch_2)), written out separately as a cross-check.
template <class R, class Mul>
R chern3_closed_form(const R &ch1, const R &ch2, const R &ch3, Mul mul)
{
    R sq = mul(ch1, ch1);
    R cube = mul(sq, ch1);
    R inner = Rational(1, 2) * sq - ch2;
    return Rational(1, 3) * (Rational(6) * ch3 - cube + Rational(3) * mul(ch1, inner));
}

} // namespace torelli
