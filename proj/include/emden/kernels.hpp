#ifndef EMDEN_KERNELS_HPP
#define EMDEN_KERNELS_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <emden/coefficient.hpp>
#include <emden/series.hpp>

// Incremental differential transforms of y^m, exp, ln, sin/cos and
// sinh/cosh of a series y. Each kernel consumes the prefix Y(0..k) and
// emits F(k); values already emitted never change.

namespace emden
{

// The nonlinear function is undefined (or its recurrence singular) at the
// data supplied.
class domain_violation : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// The k = 0 value would be irrational, which rational mode cannot hold.
class transcendental_seed : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// y^m. Uses the y(0)-division recurrence when Y(0) != 0 and falls back to
// repeated Cauchy products for nonnegative integer m with Y(0) == 0.
class power_kernel
{
public:
    explicit power_kernel(coefficient exponent);

    coefficient advance(std::span<const coefficient> y_prefix);

    std::size_t next_index() const noexcept
    {
        return m_values.size();
    }
    std::span<const coefficient> values() const noexcept
    {
        return m_values;
    }
    const coefficient &exponent() const noexcept
    {
        return m_exponent;
    }
    bool uses_product_fallback() const noexcept
    {
        return m_fallback;
    }

private:
    coefficient m_exponent;
    std::vector<coefficient> m_values;
    bool m_fallback = false;
    // Prefixes of y^1 .. y^m for the fallback route.
    std::vector<std::vector<coefficient>> m_powers;
};

// e^(alpha y).
class exp_kernel
{
public:
    explicit exp_kernel(coefficient alpha);

    coefficient advance(std::span<const coefficient> y_prefix);

    std::size_t next_index() const noexcept
    {
        return m_values.size();
    }
    std::span<const coefficient> values() const noexcept
    {
        return m_values;
    }

private:
    coefficient m_alpha;
    std::vector<coefficient> m_values;
};

// ln(alpha y + beta), requiring alpha Y(0) + beta > 0.
class log_kernel
{
public:
    log_kernel(coefficient alpha, coefficient beta);

    coefficient advance(std::span<const coefficient> y_prefix);

    std::size_t next_index() const noexcept
    {
        return m_values.size();
    }
    std::span<const coefficient> values() const noexcept
    {
        return m_values;
    }

private:
    coefficient m_alpha;
    coefficient m_beta;
    coefficient m_base; // alpha Y(0) + beta, fixed at k = 0
    std::vector<coefficient> m_values;
};

// Coupled pair (sin(alpha y), cos(alpha y)) or, with hyperbolic = true,
// (sinh(alpha y), cosh(alpha y)).
class trig_pair_kernel
{
public:
    trig_pair_kernel(coefficient alpha, bool hyperbolic);

    // Returns (F(k), G(k)): the sin/sinh value first, cos/cosh second.
    std::pair<coefficient, coefficient> advance(std::span<const coefficient> y_prefix);

    std::size_t next_index() const noexcept
    {
        return m_f.size();
    }
    std::span<const coefficient> f_values() const noexcept
    {
        return m_f;
    }
    std::span<const coefficient> g_values() const noexcept
    {
        return m_g;
    }
    bool hyperbolic() const noexcept
    {
        return m_hyperbolic;
    }

private:
    coefficient m_alpha;
    bool m_hyperbolic;
    std::vector<coefficient> m_f;
    std::vector<coefficient> m_g;
};

class sincos_kernel : public trig_pair_kernel
{
public:
    explicit sincos_kernel(coefficient alpha) : trig_pair_kernel(std::move(alpha), false) {}
};

class sinhcosh_kernel : public trig_pair_kernel
{
public:
    explicit sinhcosh_kernel(coefficient alpha) : trig_pair_kernel(std::move(alpha), true) {}
};

// Y(0)^m, exact in rational mode when the result is rational.
coefficient power_seed(const coefficient &y0, const coefficient &exponent);

// Whole-series wrappers: feed every prefix of y through a fresh kernel.
series power_transform(const series &y, const coefficient &exponent);
series exp_transform(const series &y, const coefficient &alpha);
series log_transform(const series &y, const coefficient &alpha, const coefficient &beta);
std::pair<series, series> sincos_transform(const series &y, const coefficient &alpha);
std::pair<series, series> sinhcosh_transform(const series &y, const coefficient &alpha);

} // namespace emden

#endif
