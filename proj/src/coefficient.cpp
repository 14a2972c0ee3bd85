#include <emden/coefficient.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <system_error>

#include <mpfr.h>

namespace emden
{

std::string_view to_string(mode m)
{
    return m == mode::rational ? "rational" : "float";
}

mode parse_mode(std::string_view s)
{
    if (s == "rational" || s == "exact") {
        return mode::rational;
    }
    if (s == "float" || s == "floating" || s == "double") {
        return mode::floating;
    }
    throw std::invalid_argument("unknown mode '" + std::string(s) + "' (expected rational or float)");
}

namespace
{

// Correctly rounded (nearest-even) conversion; mpq_get_d truncates.
double rational_to_double(const rational &q)
{
    mpfr_t tmp;
    mpfr_init2(tmp, 53);
    mpfr_set_q(tmp, q.backend().data(), MPFR_RNDN);
    const double d = mpfr_get_d(tmp, MPFR_RNDN);
    mpfr_clear(tmp);
    return d;
}

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (c < '0' || c > '9') {
            return false;
        }
    }
    return true;
}

// Exact value of an unsigned decimal literal: digits[.digits][e[+-]digits].
rational parse_decimal(std::string_view s, std::string_view whole)
{
    auto bad = [&] { return std::invalid_argument("malformed number '" + std::string(whole) + "'"); };

    long long exponent = 0;
    if (const auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
        auto exp_text = s.substr(epos + 1);
        s = s.substr(0, epos);
        bool neg = false;
        if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
            neg = exp_text.front() == '-';
            exp_text.remove_prefix(1);
        }
        if (!all_digits(exp_text) || exp_text.size() > 6) {
            throw bad();
        }
        exponent = std::stoll(std::string(exp_text));
        if (neg) {
            exponent = -exponent;
        }
    }

    std::string digits;
    if (const auto dot = s.find('.'); dot != std::string_view::npos) {
        const auto int_part = s.substr(0, dot);
        const auto frac_part = s.substr(dot + 1);
        if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part))
            || (!frac_part.empty() && !all_digits(frac_part))) {
            throw bad();
        }
        digits = std::string(int_part) + std::string(frac_part);
        exponent -= static_cast<long long>(frac_part.size());
    } else {
        if (!all_digits(s)) {
            throw bad();
        }
        digits = std::string(s);
    }

    if (digits.empty()) {
        throw bad();
    }
    // A leading zero would make the string constructor read octal.
    const auto nonzero = digits.find_first_not_of('0');
    digits = nonzero == std::string::npos ? "0" : digits.substr(nonzero);
    rational value{integer(digits)};
    if (exponent != 0) {
        integer scale{1};
        for (long long i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) {
            scale *= 10;
        }
        value = exponent < 0 ? rational(value / rational(scale)) : rational(value * rational(scale));
    }
    return value;
}

double parse_double(std::string_view s, std::string_view whole)
{
    double out{};
    const auto *first = s.data();
    const auto *last = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last) {
        throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
    }
    return out;
}

} // namespace

coefficient coefficient::zero(mode m)
{
    return m == mode::rational ? coefficient(rational{0}) : coefficient(0.0);
}

coefficient coefficient::one(mode m)
{
    return m == mode::rational ? coefficient(rational{1}) : coefficient(1.0);
}

coefficient coefficient::from_int(long long v, mode m)
{
    return m == mode::rational ? coefficient(rational{v}) : coefficient(static_cast<double>(v));
}

coefficient coefficient::from_rational(const rational &r, mode m)
{
    return m == mode::rational ? coefficient(r) : coefficient(rational_to_double(r));
}

coefficient coefficient::parse(std::string_view text, mode m)
{
    std::string_view s = text;
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) {
        throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    }

    const auto slash = s.find('/');
    const auto num_text = s.substr(0, slash);
    const auto den_text = slash == std::string_view::npos ? std::string_view{} : s.substr(slash + 1);
    if (slash != std::string_view::npos && den_text.empty()) {
        throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    }

    if (m == mode::rational) {
        rational value = parse_decimal(num_text, text);
        if (!den_text.empty()) {
            const rational den = parse_decimal(den_text, text);
            if (den == 0) {
                throw std::domain_error("zero denominator in '" + std::string(text) + "'");
            }
            value /= den;
        }
        return coefficient(negative ? rational(-value) : value);
    }

    // Validate the grammar through the exact path so both modes accept the same text.
    (void)parse_decimal(num_text, text);
    double value = parse_double(num_text, text);
    if (!den_text.empty()) {
        (void)parse_decimal(den_text, text);
        const double den = parse_double(den_text, text);
        if (den == 0.0) {
            throw std::domain_error("zero denominator in '" + std::string(text) + "'");
        }
        value /= den;
    }
    return coefficient(negative ? -value : value);
}

bool coefficient::is_zero() const
{
    if (const auto *r = std::get_if<rational>(&m_value)) {
        return *r == 0;
    }
    return std::get<double>(m_value) == 0.0;
}

bool coefficient::is_integer() const
{
    if (const auto *r = std::get_if<rational>(&m_value)) {
        return boost::multiprecision::denominator(*r) == 1;
    }
    const double d = std::get<double>(m_value);
    return std::isfinite(d) && std::floor(d) == d;
}

int coefficient::sign() const
{
    if (const auto *r = std::get_if<rational>(&m_value)) {
        return r->sign();
    }
    const double d = std::get<double>(m_value);
    return (d > 0.0) - (d < 0.0);
}

const rational &coefficient::as_rational() const
{
    if (const auto *r = std::get_if<rational>(&m_value)) {
        return *r;
    }
    throw mode_error("coefficient is in float mode, not rational");
}

double coefficient::as_double() const
{
    if (const auto *d = std::get_if<double>(&m_value)) {
        return *d;
    }
    throw mode_error("coefficient is in rational mode, not float");
}

double coefficient::to_double() const
{
    if (const auto *r = std::get_if<rational>(&m_value)) {
        return rational_to_double(*r);
    }
    return std::get<double>(m_value);
}

coefficient coefficient::converted(mode m) const
{
    if (m == get_mode()) {
        return *this;
    }
    if (m == mode::floating) {
        return coefficient(to_double());
    }
    const double d = std::get<double>(m_value);
    if (!std::isfinite(d)) {
        throw std::domain_error("cannot convert non-finite value to rational");
    }
    // Exact: every finite double is a dyadic rational.
    return coefficient(rational(d));
}

std::string coefficient::str() const
{
    if (const auto *r = std::get_if<rational>(&m_value)) {
        const auto den = boost::multiprecision::denominator(*r);
        if (den == 1) {
            return boost::multiprecision::numerator(*r).str();
        }
        return boost::multiprecision::numerator(*r).str() + "/" + den.str();
    }
    return format_float(std::get<double>(m_value));
}

coefficient coefficient::operator-() const
{
    if (const auto *r = std::get_if<rational>(&m_value)) {
        return coefficient(rational(-*r));
    }
    return coefficient(-std::get<double>(m_value));
}

void require_same_mode(const coefficient &a, const coefficient &b)
{
    if (a.get_mode() != b.get_mode()) {
        throw mode_error("mixed-mode arithmetic: " + std::string(to_string(a.get_mode())) + " with "
                         + std::string(to_string(b.get_mode())));
    }
}

coefficient &coefficient::operator+=(const coefficient &o)
{
    require_same_mode(*this, o);
    if (auto *r = std::get_if<rational>(&m_value)) {
        *r += std::get<rational>(o.m_value);
    } else {
        std::get<double>(m_value) += std::get<double>(o.m_value);
    }
    return *this;
}

coefficient &coefficient::operator-=(const coefficient &o)
{
    require_same_mode(*this, o);
    if (auto *r = std::get_if<rational>(&m_value)) {
        *r -= std::get<rational>(o.m_value);
    } else {
        std::get<double>(m_value) -= std::get<double>(o.m_value);
    }
    return *this;
}

coefficient &coefficient::operator*=(const coefficient &o)
{
    require_same_mode(*this, o);
    if (auto *r = std::get_if<rational>(&m_value)) {
        *r *= std::get<rational>(o.m_value);
    } else {
        std::get<double>(m_value) *= std::get<double>(o.m_value);
    }
    return *this;
}

coefficient &coefficient::operator/=(const coefficient &o)
{
    require_same_mode(*this, o);
    if (auto *r = std::get_if<rational>(&m_value)) {
        const auto &d = std::get<rational>(o.m_value);
        if (d == 0) {
            throw std::domain_error("division by zero");
        }
        *r /= d;
    } else {
        std::get<double>(m_value) /= std::get<double>(o.m_value);
    }
    return *this;
}

bool operator==(const coefficient &a, const coefficient &b)
{
    require_same_mode(a, b);
    return a.m_value == b.m_value;
}

bool operator<(const coefficient &a, const coefficient &b)
{
    require_same_mode(a, b);
    if (a.get_mode() == mode::rational) {
        return std::get<rational>(a.m_value) < std::get<rational>(b.m_value);
    }
    return std::get<double>(a.m_value) < std::get<double>(b.m_value);
}

std::string format_float(double v)
{
    if (v == 0.0) {
        return "0";
    }
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

std::string format_shortest(double v)
{
    if (v == 0.0) {
        return "0";
    }
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

} // namespace emden
