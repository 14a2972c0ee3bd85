#include <emden/series.hpp>

#include <stdexcept>
#include <string>
#include <utility>

namespace emden
{

namespace
{

void require_compatible(const series &g, const series &h, const char *op)
{
    if (g.get_mode() != h.get_mode()) {
        throw mode_error(std::string(op) + ": operands are in different modes");
    }
    if (g.order() != h.order()) {
        throw std::invalid_argument(std::string(op) + ": order mismatch (" + std::to_string(g.order()) + " vs "
                                    + std::to_string(h.order()) + ")");
    }
}

} // namespace

series::series(std::vector<coefficient> coeffs) : m_coeffs(std::move(coeffs))
{
    if (m_coeffs.empty()) {
        throw std::invalid_argument("a series needs at least one coefficient");
    }
    const auto m = m_coeffs.front().get_mode();
    for (const auto &c : m_coeffs) {
        if (c.get_mode() != m) {
            throw mode_error("series coefficients must share one mode");
        }
    }
}

series series::zeros(std::size_t order, mode m)
{
    return series(std::vector<coefficient>(order + 1u, coefficient::zero(m)));
}

series series::parse(std::initializer_list<std::string_view> coeffs, mode m)
{
    std::vector<coefficient> out;
    out.reserve(coeffs.size());
    for (auto s : coeffs) {
        out.push_back(coefficient::parse(s, m));
    }
    return series(std::move(out));
}

series series::parse(const std::vector<std::string> &coeffs, mode m)
{
    std::vector<coefficient> out;
    out.reserve(coeffs.size());
    for (const auto &s : coeffs) {
        out.push_back(coefficient::parse(s, m));
    }
    return series(std::move(out));
}

series series::resized(std::size_t order) const
{
    auto out = m_coeffs;
    out.resize(order + 1u, coefficient::zero(get_mode()));
    return series(std::move(out));
}

series series::converted(mode m) const
{
    std::vector<coefficient> out;
    out.reserve(m_coeffs.size());
    for (const auto &c : m_coeffs) {
        out.push_back(c.converted(m));
    }
    return series(std::move(out));
}

series series::shifted_up() const
{
    std::vector<coefficient> out;
    out.reserve(m_coeffs.size());
    out.push_back(coefficient::zero(get_mode()));
    for (std::size_t k = 0; k + 1u < m_coeffs.size(); ++k) {
        out.push_back(m_coeffs[k]);
    }
    return series(std::move(out));
}

bool operator==(const series &a, const series &b)
{
    if (a.get_mode() != b.get_mode() || a.order() != b.order()) {
        return false;
    }
    for (std::size_t k = 0; k <= a.order(); ++k) {
        if (!(a[k] == b[k])) {
            return false;
        }
    }
    return true;
}

series add_scaled(const coefficient &alpha, const series &g, const coefficient &beta, const series &h)
{
    require_compatible(g, h, "add_scaled");
    require_same_mode(alpha, g[0]);
    require_same_mode(beta, g[0]);
    std::vector<coefficient> out;
    out.reserve(g.order() + 1u);
    for (std::size_t k = 0; k <= g.order(); ++k) {
        out.push_back(alpha * g[k] + beta * h[k]);
    }
    return series(std::move(out));
}

series derivative_transform(const series &g, std::size_t n)
{
    if (n == 0) {
        return g;
    }
    if (n > g.order()) {
        throw std::invalid_argument("derivative_transform: derivative order " + std::to_string(n)
                                    + " exceeds series order " + std::to_string(g.order()));
    }
    const auto m = g.get_mode();
    std::vector<coefficient> out;
    out.reserve(g.order() - n + 1u);
    for (std::size_t k = 0; k + n <= g.order(); ++k) {
        // (k+1)(k+2)...(k+n)
        rational falling{1};
        for (std::size_t j = 1; j <= n; ++j) {
            falling *= static_cast<long long>(k + j);
        }
        out.push_back(coefficient::from_rational(falling, m) * g[k + n]);
    }
    return series(std::move(out));
}

series cauchy_product(const series &g, const series &h)
{
    require_compatible(g, h, "cauchy_product");
    std::vector<coefficient> out;
    out.reserve(g.order() + 1u);
    for (std::size_t k = 0; k <= g.order(); ++k) {
        auto acc = coefficient::zero(g.get_mode());
        for (std::size_t r = 0; r <= k; ++r) {
            if (g[r].is_zero() || h[k - r].is_zero()) {
                continue;
            }
            acc += g[r] * h[k - r];
        }
        out.push_back(std::move(acc));
    }
    return series(std::move(out));
}

series multi_product(std::span<const series> factors)
{
    if (factors.empty()) {
        throw std::invalid_argument("multi_product: empty factor list");
    }
    series acc = factors.front();
    for (const auto &f : factors.subspan(1)) {
        acc = cauchy_product(acc, f);
    }
    return acc;
}

series monomial(std::size_t n, std::size_t order, mode m)
{
    if (n > order) {
        throw std::invalid_argument("monomial: power " + std::to_string(n) + " exceeds order " + std::to_string(order));
    }
    std::vector<coefficient> out(order + 1u, coefficient::zero(m));
    out[n] = coefficient::one(m);
    return series(std::move(out));
}

coefficient evaluate(const series &s, const coefficient &x)
{
    require_same_mode(s[0], x);
    auto acc = s[s.order()];
    for (std::size_t k = s.order(); k-- > 0;) {
        acc *= x;
        acc += s[k];
    }
    return acc;
}

double evaluate(const series &s, double x)
{
    if (s.get_mode() == mode::rational) {
        return evaluate(s, coefficient(rational(x))).to_double();
    }
    return evaluate(s, coefficient(x)).as_double();
}

} // namespace emden
