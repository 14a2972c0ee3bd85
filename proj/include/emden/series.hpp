#ifndef EMDEN_SERIES_HPP
#define EMDEN_SERIES_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <emden/coefficient.hpp>

namespace emden
{

// Truncated series of differential-transform coefficients Y(0..N), i.e. the
// polynomial sum Y(k) x^k with every power above N discarded. Immutable.
class series
{
public:
    // Throws on an empty vector or on coefficients of mixed modes.
    explicit series(std::vector<coefficient> coeffs);

    static series zeros(std::size_t order, mode m);
    // Parses each entry with coefficient::parse.
    static series parse(std::initializer_list<std::string_view> coeffs, mode m);
    static series parse(const std::vector<std::string> &coeffs, mode m);

    std::size_t order() const noexcept
    {
        return m_coeffs.size() - 1u;
    }
    mode get_mode() const noexcept
    {
        return m_coeffs.front().get_mode();
    }
    const coefficient &operator[](std::size_t k) const
    {
        return m_coeffs[k];
    }
    std::span<const coefficient> coeffs() const noexcept
    {
        return m_coeffs;
    }

    // Zero-pads or truncates to the given order.
    series resized(std::size_t order) const;
    series converted(mode) const;
    // x * s, keeping the same order (the top coefficient drops out).
    series shifted_up() const;

    friend bool operator==(const series &, const series &);

private:
    std::vector<coefficient> m_coeffs;
};

// alpha*g + beta*h.
series add_scaled(const coefficient &alpha, const series &g, const coefficient &beta, const series &h);

// Transform of the n-th derivative: result[k] = (k+1)...(k+n) g[k+n],
// of order g.order() - n.
series derivative_transform(const series &g, std::size_t n);

// Truncated Cauchy product of two series of equal order.
series cauchy_product(const series &g, const series &h);

// Left fold of cauchy_product over a nonempty list.
series multi_product(std::span<const series> factors);

// The delta(k - n) series: the transform of x^n.
series monomial(std::size_t n, std::size_t order, mode m = mode::rational);

// Horner evaluation of the truncated polynomial.
coefficient evaluate(const series &s, const coefficient &x);
double evaluate(const series &s, double x);

} // namespace emden

#endif
