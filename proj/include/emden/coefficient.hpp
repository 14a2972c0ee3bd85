#ifndef EMDEN_COEFFICIENT_HPP
#define EMDEN_COEFFICIENT_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <boost/multiprecision/gmp.hpp>

namespace emden
{

using rational = boost::multiprecision::mpq_rational;
using integer = boost::multiprecision::mpz_int;

// Arithmetic mode shared by every coefficient of a computation.
enum class mode { rational, floating };

std::string_view to_string(mode);
mode parse_mode(std::string_view);

// Raised when two coefficients of different modes meet in one operation.
class mode_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// A field element: an exact rational in lowest terms or an IEEE double.
class coefficient
{
public:
    coefficient() : m_value(rational{0}) {}
    explicit coefficient(rational r) : m_value(std::move(r)) {}
    explicit coefficient(double d) : m_value(d) {}

    static coefficient zero(mode);
    static coefficient one(mode);
    static coefficient from_int(long long, mode);
    static coefficient from_rational(const rational &, mode);

    // Accepts integers, decimals ("0.25", "-3.5") and fractions ("61/1632960").
    // Decimals are read exactly in rational mode.
    static coefficient parse(std::string_view, mode);

    mode get_mode() const noexcept
    {
        return std::holds_alternative<rational>(m_value) ? mode::rational : mode::floating;
    }

    bool is_zero() const;
    bool is_integer() const;
    int sign() const;

    const rational &as_rational() const;
    double as_double() const;
    double to_double() const;

    coefficient converted(mode) const;

    // Exact fractions as "p/q" (or "p"), floats with 17 significant digits.
    std::string str() const;

    coefficient operator-() const;
    coefficient &operator+=(const coefficient &);
    coefficient &operator-=(const coefficient &);
    coefficient &operator*=(const coefficient &);
    coefficient &operator/=(const coefficient &);

    friend coefficient operator+(coefficient a, const coefficient &b)
    {
        return a += b;
    }
    friend coefficient operator-(coefficient a, const coefficient &b)
    {
        return a -= b;
    }
    friend coefficient operator*(coefficient a, const coefficient &b)
    {
        return a *= b;
    }
    friend coefficient operator/(coefficient a, const coefficient &b)
    {
        return a /= b;
    }

    // Exact comparison; comparing across modes throws mode_error.
    friend bool operator==(const coefficient &, const coefficient &);
    friend bool operator<(const coefficient &, const coefficient &);

private:
    std::variant<rational, double> m_value;
};

void require_same_mode(const coefficient &, const coefficient &);

// Formats a double with 17 significant digits.
std::string format_float(double);
// Shortest round-trip form of a double.
std::string format_shortest(double);

} // namespace emden

#endif
