#include <emden/kernels.hpp>

#include <cmath>
#include <limits>
#include <string>

#include <gmp.h>

namespace emden
{

namespace
{

void require_prefix(std::span<const coefficient> y_prefix, std::size_t next_index, const char *kernel)
{
    if (y_prefix.size() != next_index + 1u) {
        throw std::invalid_argument(std::string(kernel) + ": expected a prefix of length "
                                    + std::to_string(next_index + 1u) + ", got " + std::to_string(y_prefix.size()));
    }
    const auto m = y_prefix.front().get_mode();
    for (const auto &c : y_prefix) {
        if (c.get_mode() != m) {
            throw mode_error(std::string(kernel) + ": prefix mixes modes");
        }
    }
}

// r/k in the mode of the computation.
coefficient ratio(long long r, long long k, mode m)
{
    return coefficient::from_rational(rational(r, k), m);
}

long long small_integer(const coefficient &c, const char *what)
{
    const auto d = c.to_double();
    if (std::fabs(d) > 1e6) {
        throw std::domain_error(std::string(what) + " is too large");
    }
    return std::llround(d);
}

// Exact q-th root of a nonnegative integer, if it exists.
bool exact_root(const integer &value, unsigned long q, integer &out)
{
    mpz_t tmp;
    mpz_init(tmp);
    const int exact = mpz_root(tmp, value.backend().data(), q);
    out = integer(tmp);
    mpz_clear(tmp);
    return exact != 0;
}

rational integer_power(const rational &base, long long e)
{
    rational acc{1};
    rational b = e < 0 ? rational(1 / base) : base;
    auto n = static_cast<unsigned long long>(e < 0 ? -e : e);
    while (n > 0) {
        if (n & 1u) {
            acc *= b;
        }
        b *= b;
        n >>= 1u;
    }
    return acc;
}

} // namespace

coefficient power_seed(const coefficient &y0, const coefficient &exponent)
{
    require_same_mode(y0, exponent);
    if (exponent.is_zero()) {
        return coefficient::one(y0.get_mode());
    }
    if (y0.get_mode() == mode::floating) {
        const double base = y0.as_double();
        const double m = exponent.as_double();
        if (base < 0.0 && !exponent.is_integer()) {
            throw domain_violation("non-integer power of a negative Y(0)");
        }
        if (base == 0.0 && m < 0.0) {
            throw domain_violation("negative power of Y(0) = 0");
        }
        return coefficient(std::pow(base, m));
    }

    const auto &base = y0.as_rational();
    const auto &m = exponent.as_rational();
    if (exponent.is_integer()) {
        if (base == 0 && m < 0) {
            throw domain_violation("negative power of Y(0) = 0");
        }
        return coefficient(integer_power(base, small_integer(exponent, "exponent")));
    }
    if (base <= 0) {
        throw domain_violation("non-integer power requires Y(0) > 0");
    }
    const integer den_m = boost::multiprecision::denominator(m);
    if (den_m > 1000000) {
        throw std::domain_error("exponent denominator is too large");
    }
    const auto q = den_m.convert_to<unsigned long>();
    integer num_root;
    integer den_root;
    if (!exact_root(boost::multiprecision::numerator(base), q, num_root)
        || !exact_root(boost::multiprecision::denominator(base), q, den_root)) {
        throw transcendental_seed("Y(0)^m = " + y0.str() + "^(" + exponent.str()
                                  + ") is irrational; transcendental seed not representable in rational mode");
    }
    const auto p = boost::multiprecision::numerator(m).convert_to<long long>();
    return coefficient(integer_power(rational(num_root, den_root), p));
}

power_kernel::power_kernel(coefficient exponent) : m_exponent(std::move(exponent)) {}

coefficient power_kernel::advance(std::span<const coefficient> y)
{
    require_prefix(y, next_index(), "power kernel");
    require_same_mode(y[0], m_exponent);
    const auto md = y[0].get_mode();
    const std::size_t k = next_index();

    if (k == 0) {
        if (y[0].is_zero()) {
            if (!m_exponent.is_integer() || m_exponent.sign() < 0) {
                throw domain_violation("y^m with Y(0) = 0 and m = " + m_exponent.str()
                                       + ": singular recurrence (requires a nonnegative integer m)");
            }
            m_fallback = true;
            const auto power = small_integer(m_exponent, "exponent");
            m_powers.assign(static_cast<std::size_t>(power), {});
        } else if (!m_exponent.is_integer() && y[0].sign() < 0) {
            throw domain_violation("non-integer power requires Y(0) > 0");
        }
        m_values.push_back(power_seed(y[0], m_exponent));
        if (m_fallback) {
            for (auto &p : m_powers) {
                p.push_back(coefficient::zero(md));
            }
        }
        return m_values.back();
    }

    if (m_fallback) {
        if (m_powers.empty()) {
            m_values.push_back(coefficient::zero(md));
            return m_values.back();
        }
        m_powers[0].push_back(y[k]);
        for (std::size_t j = 1; j < m_powers.size(); ++j) {
            auto acc = coefficient::zero(md);
            for (std::size_t r = 0; r <= k; ++r) {
                acc += m_powers[j - 1u][r] * y[k - r];
            }
            m_powers[j].push_back(std::move(acc));
        }
        m_values.push_back(m_powers.back().back());
        return m_values.back();
    }

    // k Y(0) F(k) = sum_{r=1..k} ((m+1) r - k) Y(r) F(k-r)
    const auto m_plus_one = m_exponent + coefficient::one(md);
    const auto kk = coefficient::from_int(static_cast<long long>(k), md);
    auto acc = coefficient::zero(md);
    for (std::size_t r = 1; r <= k; ++r) {
        if (y[r].is_zero()) {
            continue;
        }
        const auto weight = (m_plus_one * coefficient::from_int(static_cast<long long>(r), md) - kk) / kk;
        acc += weight * y[r] * m_values[k - r];
    }
    m_values.push_back(acc / y[0]);
    return m_values.back();
}

exp_kernel::exp_kernel(coefficient alpha) : m_alpha(std::move(alpha)) {}

coefficient exp_kernel::advance(std::span<const coefficient> y)
{
    require_prefix(y, next_index(), "exp kernel");
    require_same_mode(y[0], m_alpha);
    const auto md = y[0].get_mode();
    const std::size_t k = next_index();

    if (k == 0) {
        const auto arg = m_alpha * y[0];
        if (md == mode::rational) {
            if (!arg.is_zero()) {
                throw transcendental_seed("e^(" + arg.str() + ") is transcendental; not representable in rational mode");
            }
            m_values.push_back(coefficient::one(md));
        } else {
            m_values.push_back(coefficient(std::exp(arg.as_double())));
        }
        return m_values.back();
    }

    // F(k) = alpha sum_{r=0..k-1} (r+1)/k Y(r+1) F(k-1-r)
    auto acc = coefficient::zero(md);
    const auto kk = static_cast<long long>(k);
    for (std::size_t r = 0; r < k; ++r) {
        if (y[r + 1u].is_zero()) {
            continue;
        }
        acc += ratio(static_cast<long long>(r + 1u), kk, md) * y[r + 1u] * m_values[k - 1u - r];
    }
    m_values.push_back(m_alpha * acc);
    return m_values.back();
}

log_kernel::log_kernel(coefficient alpha, coefficient beta) : m_alpha(std::move(alpha)), m_beta(std::move(beta))
{
    require_same_mode(m_alpha, m_beta);
}

coefficient log_kernel::advance(std::span<const coefficient> y)
{
    require_prefix(y, next_index(), "log kernel");
    require_same_mode(y[0], m_alpha);
    const auto md = y[0].get_mode();
    const std::size_t k = next_index();

    if (k == 0) {
        m_base = m_alpha * y[0] + m_beta;
        if (m_base.sign() <= 0) {
            throw domain_violation("ln(alpha*y + beta) needs alpha*Y(0)+beta > 0, got " + m_base.str());
        }
        if (md == mode::rational) {
            if (!(m_base == coefficient::one(md))) {
                throw transcendental_seed("ln(" + m_base.str()
                                          + ") is transcendental; not representable in rational mode");
            }
            m_values.push_back(coefficient::zero(md));
        } else {
            m_values.push_back(coefficient(std::log(m_base.as_double())));
        }
        return m_values.back();
    }

    const auto scale = m_alpha / m_base;
    if (k == 1) {
        m_values.push_back(scale * y[1]);
        return m_values.back();
    }

    // F(k) = alpha/(beta + alpha Y(0)) [Y(k) - sum_{r=0..k-2} (r+1)/k F(r+1) Y(k-1-r)]
    auto acc = y[k];
    const auto kk = static_cast<long long>(k);
    for (std::size_t r = 0; r + 2u <= k; ++r) {
        if (y[k - 1u - r].is_zero()) {
            continue;
        }
        acc -= ratio(static_cast<long long>(r + 1u), kk, md) * m_values[r + 1u] * y[k - 1u - r];
    }
    m_values.push_back(scale * acc);
    return m_values.back();
}

trig_pair_kernel::trig_pair_kernel(coefficient alpha, bool hyperbolic)
    : m_alpha(std::move(alpha)), m_hyperbolic(hyperbolic)
{
}

std::pair<coefficient, coefficient> trig_pair_kernel::advance(std::span<const coefficient> y)
{
    require_prefix(y, next_index(), m_hyperbolic ? "sinh/cosh kernel" : "sin/cos kernel");
    require_same_mode(y[0], m_alpha);
    const auto md = y[0].get_mode();
    const std::size_t k = next_index();

    if (k == 0) {
        const auto arg = m_alpha * y[0];
        if (md == mode::rational) {
            if (!arg.is_zero()) {
                throw transcendental_seed(std::string(m_hyperbolic ? "sinh/cosh(" : "sin/cos(") + arg.str()
                                          + ") is transcendental; not representable in rational mode");
            }
            m_f.push_back(coefficient::zero(md));
            m_g.push_back(coefficient::one(md));
        } else {
            const double a = arg.as_double();
            m_f.push_back(coefficient(m_hyperbolic ? std::sinh(a) : std::sin(a)));
            m_g.push_back(coefficient(m_hyperbolic ? std::cosh(a) : std::cos(a)));
        }
        return {m_f.back(), m_g.back()};
    }

    // F(k) = alpha sum (k-r)/k G(r) Y(k-r);  G(k) = -/+ alpha sum (k-r)/k F(r) Y(k-r)
    auto f_acc = coefficient::zero(md);
    auto g_acc = coefficient::zero(md);
    const auto kk = static_cast<long long>(k);
    for (std::size_t r = 0; r < k; ++r) {
        if (y[k - r].is_zero()) {
            continue;
        }
        const auto w = ratio(static_cast<long long>(k - r), kk, md) * y[k - r];
        f_acc += w * m_g[r];
        g_acc += w * m_f[r];
    }
    m_f.push_back(m_alpha * f_acc);
    m_g.push_back(m_hyperbolic ? m_alpha * g_acc : -(m_alpha * g_acc));
    return {m_f.back(), m_g.back()};
}

namespace
{

template <typename Kernel>
series run_batch(Kernel kernel, const series &y)
{
    for (std::size_t k = 0; k <= y.order(); ++k) {
        kernel.advance(y.coeffs().first(k + 1u));
    }
    return series(std::vector<coefficient>(kernel.values().begin(), kernel.values().end()));
}

std::pair<series, series> run_pair(trig_pair_kernel kernel, const series &y)
{
    for (std::size_t k = 0; k <= y.order(); ++k) {
        kernel.advance(y.coeffs().first(k + 1u));
    }
    return {series(std::vector<coefficient>(kernel.f_values().begin(), kernel.f_values().end())),
            series(std::vector<coefficient>(kernel.g_values().begin(), kernel.g_values().end()))};
}

} // namespace

series power_transform(const series &y, const coefficient &exponent)
{
    return run_batch(power_kernel(exponent), y);
}

series exp_transform(const series &y, const coefficient &alpha)
{
    return run_batch(exp_kernel(alpha), y);
}

series log_transform(const series &y, const coefficient &alpha, const coefficient &beta)
{
    return run_batch(log_kernel(alpha, beta), y);
}

std::pair<series, series> sincos_transform(const series &y, const coefficient &alpha)
{
    return run_pair(sincos_kernel(alpha), y);
}

std::pair<series, series> sinhcosh_transform(const series &y, const coefficient &alpha)
{
    return run_pair(sinhcosh_kernel(alpha), y);
}

} // namespace emden
