#include <emden/problem.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <utility>
#include <vector>

namespace emden
{

emden_problem emden_problem::converted(mode m) const
{
    return emden_problem{p.converted(m),      a.converted(m),  f_poly.converted(m), g.converted(m),
                         y0.converted(m),     dy0.converted(m), order,              m};
}

emden_problem emden_problem::with_order(std::size_t n) const
{
    auto out = *this;
    out.order = n;
    return out;
}

bool operator==(const emden_problem &x, const emden_problem &y)
{
    if (x.arith != y.arith || x.order != y.order) {
        return false;
    }
    const auto same = [](const coefficient &a, const coefficient &b) {
        return a.get_mode() == b.get_mode() && a == b;
    };
    return same(x.p, y.p) && same(x.a, y.a) && x.f_poly == y.f_poly && x.g == y.g && same(x.y0, y.y0)
           && same(x.dy0, y.dy0);
}

void check_problem(const emden_problem &pr)
{
    const auto m = pr.arith;
    for (const auto *c : {&pr.p, &pr.a, &pr.y0, &pr.dy0}) {
        if (c->get_mode() != m) {
            throw problem_error("problem coefficient " + c->str() + " is not in " + std::string(to_string(m))
                                + " mode");
        }
    }
    if (pr.f_poly.get_mode() != m) {
        throw problem_error("f(x) is not in " + std::string(to_string(m)) + " mode");
    }
    if (pr.p.sign() <= 0) {
        throw problem_error("p must be positive, got " + pr.p.str());
    }
    if (!pr.dy0.is_zero()) {
        throw problem_error("y'(0) must be 0, got " + pr.dy0.str());
    }
    if (pr.order < 2) {
        throw problem_error("order must be at least 2, got " + std::to_string(pr.order));
    }
    std::size_t degree = 0;
    for (std::size_t k = 0; k <= pr.f_poly.order(); ++k) {
        if (!pr.f_poly[k].is_zero()) {
            degree = k;
        }
    }
    if (degree > pr.order) {
        throw problem_error("f(x) has degree " + std::to_string(degree) + " above the order "
                            + std::to_string(pr.order));
    }
}

namespace
{

constexpr std::array<preset_info, 6> catalog{{
    {preset_kind::lane_emden, "lane_emden", "y'' + (2/x)y' + y^m = 0, y(0) = 1", "m >= 0", mode::rational,
     "p=2  a=1  f=1  g=y^m  y0=1"},
    {preset_kind::isothermal, "isothermal", "y'' + (2/x)y' + e^y = 0, y(0) = 0", "", mode::rational,
     "p=2  a=1  f=1  g=exp(y)  y0=0"},
    {preset_kind::sinh_case, "sinh_case", "y'' + (2/x)y' + sinh(y) = 0, y(0) = 1", "", mode::floating,
     "p=2  a=1  f=1  g=sinh(y)  y0=1"},
    {preset_kind::sin_case, "sin_case", "y'' + (2/x)y' + sin(y) = 0, y(0) = 1", "", mode::floating,
     "p=2  a=1  f=1  g=sin(y)  y0=1"},
    {preset_kind::example5, "example5", "y'' + (5/x)y' + 8a(e^y + 2e^(y/2)) = 0, y(0) = 0", "a != 0",
     mode::rational, "p=5  a=8a  f=1  g=exp(y) + 2*exp(1/2*y)  y0=0"},
    {preset_kind::example6, "example6", "y'' + (8/x)y' + 18ay + 4ay ln(y) = 0, y(0) = 1", "a != 0",
     mode::rational, "p=8  a=a  f=1  g=18*y + 4*y*ln(y)  y0=1"},
}};

} // namespace

std::span<const preset_info> preset_catalog()
{
    return catalog;
}

const preset_info &info(preset_kind k)
{
    for (const auto &i : catalog) {
        if (i.kind == k) {
            return i;
        }
    }
    throw std::logic_error("unknown preset kind");
}

std::optional<preset_kind> preset_from_name(std::string_view name)
{
    for (const auto &i : catalog) {
        if (i.name == name) {
            return i.kind;
        }
    }
    return std::nullopt;
}

std::string_view to_string(preset_kind k)
{
    return info(k).name;
}

preset_id preset_id::make(std::string_view name, const std::map<std::string, std::string> &params)
{
    const auto kind = preset_from_name(name);
    if (!kind) {
        throw problem_error("unknown preset '" + std::string(name) + "'");
    }
    preset_id id{*kind, rational{0}};
    std::string expected;
    switch (*kind) {
        case preset_kind::lane_emden:
            expected = "m";
            break;
        case preset_kind::example5:
        case preset_kind::example6:
            expected = "a";
            break;
        default:
            break;
    }
    for (const auto &[key, value] : params) {
        if (key != expected) {
            throw problem_error("preset " + std::string(name) + " takes no parameter '" + key + "'");
        }
    }
    if (expected == "m") {
        const auto it = params.find("m");
        if (it == params.end()) {
            throw problem_error("preset lane_emden needs parameter m (e.g. --param m=5)");
        }
        id.param = coefficient::parse(it->second, mode::rational).as_rational();
        if (id.param < 0) {
            throw problem_error("lane_emden needs m >= 0, got " + it->second);
        }
    } else if (expected == "a") {
        const auto it = params.find("a");
        id.param = it == params.end() ? rational{1} : coefficient::parse(it->second, mode::rational).as_rational();
        if (id.param == 0) {
            throw problem_error(std::string(name) + " needs a != 0");
        }
    }
    return id;
}

std::string preset_id::label() const
{
    const std::string name(to_string(kind));
    switch (kind) {
        case preset_kind::lane_emden:
            return name + "(m=" + coefficient(param).str() + ")";
        case preset_kind::example5:
        case preset_kind::example6:
            return name + "(a=" + coefficient(param).str() + ")";
        default:
            return name;
    }
}

emden_problem preset(const preset_id &id, std::size_t order, mode m)
{
    const auto num = [m](long long v) { return coefficient::from_int(v, m); };
    const auto par = coefficient::from_rational(id.param, m);
    emden_problem pr{num(2), num(1), series(std::vector<coefficient>{num(1)}), expr::var(), num(1), num(0), order, m};
    switch (id.kind) {
        case preset_kind::lane_emden:
            if (id.param < 0) {
                throw problem_error("lane_emden needs m >= 0");
            }
            pr.g = expr::power(par);
            break;
        case preset_kind::isothermal:
            pr.g = parse_expression("exp(y)", m);
            pr.y0 = num(0);
            break;
        case preset_kind::sinh_case:
            pr.g = parse_expression("sinh(y)", m);
            break;
        case preset_kind::sin_case:
            pr.g = parse_expression("sin(y)", m);
            break;
        case preset_kind::example5:
            if (id.param == 0) {
                throw problem_error("example5 needs a != 0");
            }
            pr.p = num(5);
            pr.a = num(8) * par;
            pr.g = parse_expression("exp(y) + 2*exp(y/2)", m);
            pr.y0 = num(0);
            break;
        case preset_kind::example6:
            if (id.param == 0) {
                throw problem_error("example6 needs a != 0");
            }
            pr.p = num(8);
            pr.a = par;
            pr.g = parse_expression("18*y + 4*y*ln(y)", m);
            break;
    }
    check_problem(pr);
    return pr;
}

namespace
{

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

class poly_scanner
{
public:
    poly_scanner(std::string_view text, mode m, std::size_t line, std::size_t column_offset)
        : m_text(text), m_mode(m), m_line(line), m_offset(column_offset)
    {
    }

    series run()
    {
        std::vector<coefficient> coeffs{coefficient::zero(m_mode)};
        bool first = true;
        while (true) {
            skip_space();
            bool neg = false;
            if (!first) {
                if (at_end()) {
                    break;
                }
                if (peek() == '+') {
                    ++m_pos;
                } else if (peek() == '-') {
                    neg = true;
                    ++m_pos;
                } else {
                    fail("expected '+' or '-'");
                }
                skip_space();
            }
            first = false;
            if (!at_end() && peek() == '-') {
                neg = !neg;
                ++m_pos;
                skip_space();
            }

            auto c = coefficient::one(m_mode);
            bool any = false;
            if (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) {
                c = number();
                any = true;
                skip_space();
                if (!at_end() && peek() == '*') {
                    ++m_pos;
                    skip_space();
                    if (at_end() || peek() != 'x') {
                        fail("expected x after '*'");
                    }
                }
            }
            std::size_t power = 0;
            if (!at_end() && peek() == 'x') {
                ++m_pos;
                any = true;
                power = 1;
                skip_space();
                if (!at_end() && peek() == '^') {
                    ++m_pos;
                    skip_space();
                    const auto start = m_pos;
                    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
                        ++m_pos;
                    }
                    if (start == m_pos || m_pos - start > 4) {
                        fail("expected a small nonnegative integer exponent");
                    }
                    power = std::stoul(std::string(m_text.substr(start, m_pos - start)));
                }
            }
            if (!any) {
                fail("expected a number or x");
            }
            if (neg) {
                c = -c;
            }
            if (coeffs.size() <= power) {
                coeffs.resize(power + 1u, coefficient::zero(m_mode));
            }
            coeffs[power] += c;
        }
        return series(std::move(coeffs));
    }

private:
    bool at_end() const
    {
        return m_pos >= m_text.size();
    }
    char peek() const
    {
        return m_text[m_pos];
    }
    void skip_space()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
            ++m_pos;
        }
    }
    [[noreturn]] void fail(const std::string &msg) const
    {
        throw parse_error("f(x): " + msg, m_line, m_offset + m_pos + 1u);
    }

    coefficient number()
    {
        const auto start = m_pos;
        auto digits = [&] {
            while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) {
                ++m_pos;
            }
        };
        digits();
        if (!at_end() && peek() == '/' && m_pos + 1u < m_text.size()
            && std::isdigit(static_cast<unsigned char>(m_text[m_pos + 1u]))) {
            ++m_pos;
            digits();
        }
        try {
            return coefficient::parse(m_text.substr(start, m_pos - start), m_mode);
        } catch (const std::exception &ex) {
            throw parse_error(ex.what(), m_line, m_offset + start + 1u);
        }
    }

    std::string_view m_text;
    mode m_mode;
    std::size_t m_line;
    std::size_t m_offset;
    std::size_t m_pos = 0;
};

struct raw_value {
    std::string text;
    std::size_t line;
    std::size_t column;
};

const std::map<std::string, std::vector<std::string>> &file_sections()
{
    static const std::map<std::string, std::vector<std::string>> sections{
        {"equation", {"p", "a", "f", "g"}},
        {"initial", {"y0", "dy0"}},
        {"solve", {"order", "mode"}},
    };
    return sections;
}

const char *section_of(const std::string &key)
{
    for (const auto &[section, keys] : file_sections()) {
        if (std::find(keys.begin(), keys.end(), key) != keys.end()) {
            return section.c_str();
        }
    }
    return "?";
}

} // namespace

series parse_polynomial(std::string_view text, mode m, std::size_t line)
{
    return poly_scanner(text, m, line, 0).run();
}

std::string format_polynomial(const series &s)
{
    std::string out;
    for (std::size_t k = 0; k <= s.order(); ++k) {
        if (s[k].is_zero()) {
            continue;
        }
        if (!out.empty()) {
            out += " + ";
        }
        if (k == 0) {
            out += s[k].str();
            continue;
        }
        if (!(s[k] == coefficient::one(s.get_mode()))) {
            out += s[k].str() + "*";
        }
        out += k == 1 ? std::string("x") : "x^" + std::to_string(k);
    }
    return out.empty() ? "0" : out;
}

emden_problem parse_problem_file(std::string_view text)
{
    std::map<std::string, raw_value> values;
    std::string section;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        auto raw_line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1u : eol + 1u;
        ++line_no;
        if (!raw_line.empty() && raw_line.back() == '\r') {
            raw_line.remove_suffix(1);
        }
        if (const auto hash = raw_line.find('#'); hash != std::string_view::npos) {
            raw_line = raw_line.substr(0, hash);
        }
        const auto content = trim(raw_line);
        if (content.empty()) {
            continue;
        }
        const auto column = static_cast<std::size_t>(content.data() - raw_line.data()) + 1u;
        if (content.front() == '[') {
            if (content.back() != ']') {
                throw parse_error("unterminated section header", line_no, column);
            }
            section = std::string(trim(content.substr(1, content.size() - 2u)));
            if (file_sections().count(section) == 0) {
                throw parse_error("unknown section [" + section + "]", line_no, column);
            }
            continue;
        }
        const auto eq = content.find('=');
        if (eq == std::string_view::npos) {
            throw parse_error("expected 'key = value'", line_no, column);
        }
        const std::string key(trim(content.substr(0, eq)));
        const auto value_view = trim(content.substr(eq + 1u));
        if (section.empty()) {
            throw parse_error("key '" + key + "' appears before any section header", line_no, column);
        }
        const auto &allowed = file_sections().at(section);
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw parse_error("unknown key '" + key + "' in [" + section + "]", line_no, column);
        }
        if (values.count(key) != 0) {
            throw parse_error("duplicate key '" + key + "'", line_no, column);
        }
        if (value_view.empty()) {
            throw parse_error("empty value for '" + key + "'", line_no, column);
        }
        const auto value_column = static_cast<std::size_t>(value_view.data() - raw_line.data()) + 1u;
        values.emplace(key, raw_value{std::string(value_view), line_no, value_column});
    }

    for (const char *required : {"p", "g", "y0"}) {
        if (values.count(required) == 0) {
            throw parse_error(std::string("missing required key '") + required + "' in [" + section_of(required) + "]",
                              line_no, 1);
        }
    }

    auto m = mode::rational;
    if (const auto it = values.find("mode"); it != values.end()) {
        try {
            m = parse_mode(it->second.text);
        } catch (const std::exception &ex) {
            throw parse_error(ex.what(), it->second.line, it->second.column);
        }
    }

    const auto number = [&](const char *key, const char *fallback) {
        const auto it = values.find(key);
        if (it == values.end()) {
            return coefficient::parse(fallback, m);
        }
        try {
            return coefficient::parse(it->second.text, m);
        } catch (const std::exception &ex) {
            throw parse_error(ex.what(), it->second.line, it->second.column);
        }
    };

    emden_problem pr{number("p", "0"), number("a", "1"), series::zeros(0, m), expr::var(), number("y0", "0"),
                     number("dy0", "0"), 10, m};

    if (const auto it = values.find("f"); it != values.end()) {
        pr.f_poly = poly_scanner(it->second.text, m, it->second.line, it->second.column - 1u).run();
    } else {
        pr.f_poly = series(std::vector<coefficient>{coefficient::one(m)});
    }

    {
        const auto &g = values.at("g");
        try {
            pr.g = parse_expression(g.text, m, g.line);
        } catch (const parse_error &ex) {
            throw parse_error(ex.message(), ex.line(), g.column + ex.column() - 1u);
        }
    }

    if (const auto it = values.find("order"); it != values.end()) {
        const auto &t = it->second.text;
        if (t.empty() || t.size() > 6 || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            throw parse_error("order must be a nonnegative integer", it->second.line, it->second.column);
        }
        pr.order = std::stoul(t);
    }

    const auto locate = [&](const char *key) -> std::pair<std::size_t, std::size_t> {
        const auto it = values.find(key);
        return it == values.end() ? std::pair<std::size_t, std::size_t>{line_no, 1}
                                  : std::pair<std::size_t, std::size_t>{it->second.line, it->second.column};
    };
    try {
        check_problem(pr);
    } catch (const problem_error &ex) {
        const std::string msg = ex.what();
        const char *key = msg.rfind("p ", 0) == 0       ? "p"
                          : msg.rfind("y'(0)", 0) == 0  ? "dy0"
                          : msg.rfind("order", 0) == 0  ? "order"
                          : msg.rfind("f(x)", 0) == 0   ? "f"
                                                        : "p";
        const auto [l, c] = locate(key);
        throw parse_error(msg, l, c);
    }

    const auto report = validate_expr(pr.g, pr.y0, m);
    if (!report.ok()) {
        const auto [l, c] = locate("g");
        throw parse_error(report.str(), l, c);
    }
    return pr;
}

std::string format_problem_file(const emden_problem &pr, std::string_view title)
{
    std::string out;
    if (!title.empty()) {
        out += "# " + std::string(title) + "\n\n";
    }
    out += "[equation]\n";
    out += "p = " + pr.p.str() + "\n";
    out += "a = " + pr.a.str() + "\n";
    out += "f = " + format_polynomial(pr.f_poly) + "\n";
    out += "g = " + pr.g.str() + "\n";
    out += "\n[initial]\n";
    out += "y0 = " + pr.y0.str() + "\n";
    out += "dy0 = " + pr.dy0.str() + "\n";
    out += "\n[solve]\n";
    out += "order = " + std::to_string(pr.order) + "\n";
    out += "mode = " + std::string(to_string(pr.arith)) + "\n";
    return out;
}

} // namespace emden
