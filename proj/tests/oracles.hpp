#ifndef EMDEN_TESTS_ORACLES_HPP
#define EMDEN_TESTS_ORACLES_HPP

// Reference computations that share no code with the library: plain
// coefficient vectors, schoolbook multiplication and Taylor expansion of g
// around y(0). Slow on purpose.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <type_traits>
#include <vector>

#include <emden/coefficient.hpp>
#include <emden/series.hpp>

namespace oracle
{

using emden::rational;

template <class T>
using poly = std::vector<T>;

template <class T>
poly<T> mul(const poly<T> &a, const poly<T> &b, std::size_t order)
{
    poly<T> out(order + 1, T(0));
    for (std::size_t i = 0; i < a.size() && i <= order; ++i) {
        for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

// sum_j taylor[j] (y - y(0))^j, truncated. taylor[j] = g^(j)(y(0)) / j!.
template <class T>
poly<T> compose(const std::vector<T> &taylor, const poly<T> &y, std::size_t order)
{
    poly<T> h = y;
    h.resize(order + 1, T(0));
    h[0] = T(0);
    poly<T> out(order + 1, T(0));
    poly<T> hj(order + 1, T(0));
    hj[0] = T(1);
    for (std::size_t j = 0; j < taylor.size() && j <= order; ++j) {
        for (std::size_t k = 0; k <= order; ++k) {
            out[k] += taylor[j] * hj[k];
        }
        hj = mul(hj, h, order);
    }
    return out;
}

inline rational factorial(std::size_t n)
{
    rational f = 1;
    for (std::size_t i = 2; i <= n; ++i) {
        f *= static_cast<long>(i);
    }
    return f;
}

template <class T>
T from_rational(const rational &r)
{
    if constexpr (std::is_same_v<T, double>) {
        return r.convert_to<double>();
    } else {
        return r;
    }
}

template <class T>
T ipow(const T &base, std::size_t n)
{
    T out(1);
    for (std::size_t i = 0; i < n; ++i) {
        out *= base;
    }
    return out;
}

// Taylor coefficients of the supported nonlinearities at y0. The value at
// y0 itself is passed in (exact callers pass 0 or 1 where it is rational).
template <class T>
std::vector<T> taylor_exp(T alpha, T e_at_y0, std::size_t order)
{
    std::vector<T> c(order + 1);
    for (std::size_t j = 0; j <= order; ++j) {
        c[j] = e_at_y0 * ipow<T>(alpha, j) / from_rational<T>(factorial(j));
    }
    return c;
}

// ln(alpha y + beta) around base b = alpha y0 + beta.
template <class T>
std::vector<T> taylor_log(T alpha, T base, T log_base, std::size_t order)
{
    std::vector<T> c(order + 1);
    c[0] = log_base;
    for (std::size_t j = 1; j <= order; ++j) {
        const T term = ipow<T>(T(alpha / base), j) / T(static_cast<long>(j));
        c[j] = j % 2 == 1 ? term : T(-term);
    }
    return c;
}

// sin, cos, sinh or cosh of alpha y; s and c are sin/cos (or sinh/cosh) of
// alpha y0.
template <class T>
std::vector<T> taylor_trig(T alpha, T s, T c, bool hyperbolic, bool cosine, std::size_t order)
{
    // Successive derivatives at alpha y0.
    std::vector<T> cycle;
    if (hyperbolic) {
        cycle = cosine ? std::vector<T>{c, s, c, s} : std::vector<T>{s, c, s, c};
    } else {
        cycle = cosine ? std::vector<T>{c, T(-s), T(-c), s} : std::vector<T>{s, c, T(-s), T(-c)};
    }
    std::vector<T> out(order + 1);
    for (std::size_t j = 0; j <= order; ++j) {
        out[j] = cycle[j % 4] * ipow<T>(alpha, j) / from_rational<T>(factorial(j));
    }
    return out;
}

// y^m around y0 via the generalized binomial series; y0_pow(j) returns
// y0^(m - j).
template <class T>
std::vector<T> taylor_power(T m, const std::function<T(std::size_t)> &y0_pow, std::size_t order)
{
    std::vector<T> c(order + 1);
    T binom(1);
    for (std::size_t j = 0; j <= order; ++j) {
        c[j] = binom * y0_pow(j);
        binom = binom * (m - T(static_cast<long>(j))) / T(static_cast<long>(j + 1));
    }
    return c;
}

// Taylor coefficients of (1 + x^2/3)^(-1/2) through x^order.
inline poly<rational> binomial_series_lane_emden5(std::size_t order)
{
    poly<rational> out(order + 1, rational(0));
    rational binom = 1;
    rational third_pow = 1;
    for (std::size_t j = 0; 2 * j <= order; ++j) {
        out[2 * j] = binom * third_pow;
        binom = binom * (rational(-1, 2) - static_cast<long>(j)) / static_cast<long>(j + 1);
        third_pow /= 3;
    }
    return out;
}

// Direct recurrence for x y'' + p y' + a x f(x) g(y) = 0 with y'(0) = 0:
// at every step g(y) is re-expanded from scratch by `g_of`.
template <class T>
poly<T> hand_recurrence(T p, T a, const poly<T> &f, T y0, const std::function<poly<T>(const poly<T> &)> &g_of,
                        std::size_t order)
{
    poly<T> y(order + 1, T(0));
    y[0] = y0;
    poly<T> xf(order + 1, T(0));
    for (std::size_t k = 0; k < f.size() && k + 1 <= order; ++k) {
        xf[k + 1] = f[k];
    }
    for (std::size_t k = 0; k < order; ++k) {
        const poly<T> g = g_of(y);
        T rhs(0);
        for (std::size_t r = 0; r <= k; ++r) {
            rhs += xf[r] * g[k - r];
        }
        const T kk(static_cast<long>(k));
        y[k + 1] = -a * rhs / ((kk + T(1)) * (kk + p));
    }
    return y;
}

inline std::vector<rational> exact_values(const emden::series &s)
{
    std::vector<rational> out;
    for (const auto &c : s.coeffs()) {
        out.push_back(c.as_rational());
    }
    return out;
}

inline std::vector<double> float_values(const emden::series &s)
{
    std::vector<double> out;
    for (const auto &c : s.coeffs()) {
        out.push_back(c.to_double());
    }
    return out;
}

inline emden::series to_series(const poly<rational> &p)
{
    std::vector<emden::coefficient> c;
    for (const auto &v : p) {
        c.emplace_back(v);
    }
    return emden::series(c);
}

inline emden::series to_series(const poly<double> &p)
{
    std::vector<emden::coefficient> c;
    for (double v : p) {
        c.emplace_back(v);
    }
    return emden::series(c);
}

// Random polynomial of degree <= degree, zero-padded to `order`, with small
// numerators and denominators.
inline poly<rational> random_polynomial(std::mt19937 &rng, std::size_t degree, std::size_t order)
{
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 9);
    std::uniform_int_distribution<std::size_t> deg(1, degree);
    poly<rational> out(order + 1, rational(0));
    const std::size_t d = deg(rng);
    for (std::size_t k = 0; k <= d; ++k) {
        out[k] = rational(num(rng), den(rng));
    }
    return out;
}

// Largest |a_k - b_k| relative to the largest |b_k| (or 1 if b vanishes).
inline double max_norm_relative_error(const std::vector<double> &a, const std::vector<double> &b)
{
    double scale = 0.0;
    double worst = 0.0;
    for (std::size_t k = 0; k < b.size(); ++k) {
        scale = std::max(scale, std::fabs(b[k]));
        worst = std::max(worst, std::fabs(a[k] - b[k]));
    }
    return worst / (scale > 0.0 ? scale : 1.0);
}

} // namespace oracle

#endif
