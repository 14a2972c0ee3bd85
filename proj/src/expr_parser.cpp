#include <emden/expr.hpp>

#include <cctype>
#include <string>
#include <utility>

namespace emden
{

parse_error::parse_error(const std::string &message, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      m_message(message), m_line(line), m_column(column)
{
}

namespace
{

enum class tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct token {
    tok type;
    std::string_view text;
    std::size_t column; // 1-based
};

class lexer
{
public:
    lexer(std::string_view text, std::size_t line) : m_text(text), m_line(line) {}

    std::vector<token> run()
    {
        std::vector<token> out;
        std::size_t i = 0;
        while (true) {
            while (i < m_text.size() && std::isspace(static_cast<unsigned char>(m_text[i]))) {
                ++i;
            }
            if (i == m_text.size()) {
                out.push_back({tok::end, {}, i + 1u});
                return out;
            }
            const char c = m_text[i];
            const std::size_t start = i;
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                i = scan_number(i);
                if (i + 1u < m_text.size() && m_text[i] == '/' && is_number_start(i + 1u)) {
                    i = scan_number(i + 1u);
                }
                out.push_back({tok::number, m_text.substr(start, i - start), start + 1u});
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c))) {
                while (i < m_text.size() && std::isalpha(static_cast<unsigned char>(m_text[i]))) {
                    ++i;
                }
                out.push_back({tok::ident, m_text.substr(start, i - start), start + 1u});
                continue;
            }
            tok t{};
            switch (c) {
                case '+':
                    t = tok::plus;
                    break;
                case '-':
                    t = tok::minus;
                    break;
                case '*':
                    t = tok::star;
                    break;
                case '/':
                    t = tok::slash;
                    break;
                case '^':
                    t = tok::caret;
                    break;
                case '(':
                    t = tok::lparen;
                    break;
                case ')':
                    t = tok::rparen;
                    break;
                default:
                    throw parse_error(std::string("unexpected character '") + c + "'", m_line, start + 1u);
            }
            ++i;
            out.push_back({t, m_text.substr(start, 1), start + 1u});
        }
    }

private:
    bool is_number_start(std::size_t i) const
    {
        return i < m_text.size() && (std::isdigit(static_cast<unsigned char>(m_text[i])) || m_text[i] == '.');
    }

    std::size_t scan_number(std::size_t i) const
    {
        while (i < m_text.size() && (std::isdigit(static_cast<unsigned char>(m_text[i])) || m_text[i] == '.')) {
            ++i;
        }
        if (i < m_text.size() && (m_text[i] == 'e' || m_text[i] == 'E')) {
            std::size_t j = i + 1u;
            if (j < m_text.size() && (m_text[j] == '+' || m_text[j] == '-')) {
                ++j;
            }
            if (j < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[j]))) {
                i = j;
                while (i < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[i]))) {
                    ++i;
                }
            }
        }
        return i;
    }

    std::string_view m_text;
    std::size_t m_line;
};

class parser
{
public:
    parser(std::string_view text, mode m, std::size_t line) : m_tokens(lexer(text, line).run()), m_mode(m), m_line(line)
    {
    }

    expr parse()
    {
        auto e = parse_sum();
        if (peek().type != tok::end) {
            fail("unexpected '" + std::string(peek().text) + "'");
        }
        return e;
    }

private:
    const token &peek() const
    {
        return m_tokens[m_pos];
    }

    const token &next()
    {
        return m_tokens[m_pos++];
    }

    bool accept(tok t)
    {
        if (peek().type == t) {
            ++m_pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string &msg) const
    {
        throw parse_error(msg, m_line, peek().column);
    }

    void expect(tok t, const char *what)
    {
        if (!accept(t)) {
            fail(std::string("expected ") + what);
        }
    }

    coefficient number(const token &t) const
    {
        try {
            return coefficient::parse(t.text, m_mode);
        } catch (const std::exception &ex) {
            throw parse_error(ex.what(), m_line, t.column);
        }
    }

    expr parse_sum()
    {
        std::vector<expr> terms;
        terms.push_back(parse_term(false));
        while (true) {
            if (accept(tok::plus)) {
                terms.push_back(parse_term(false));
            } else if (accept(tok::minus)) {
                terms.push_back(parse_term(true));
            } else {
                break;
            }
        }
        if (terms.size() == 1u) {
            return std::move(terms.front());
        }
        return expr::sum(std::move(terms));
    }

    expr parse_term(bool negate)
    {
        if (accept(tok::minus)) {
            negate = !negate;
        }
        auto c = coefficient::one(m_mode);
        if (negate) {
            c = -c;
        }
        std::vector<expr> factors;
        while (true) {
            auto f = parse_factor();
            if (f.get_kind() == expr::kind::constant) {
                c *= f.value();
            } else {
                factors.push_back(std::move(f));
            }
            if (peek().type == tok::slash) {
                fail("division is only allowed inside numeric literals and function arguments");
            }
            if (!accept(tok::star)) {
                break;
            }
        }
        if (factors.empty()) {
            return expr::constant(std::move(c));
        }
        auto base = factors.size() == 1u ? std::move(factors.front()) : expr::product(std::move(factors));
        if (c == coefficient::one(m_mode)) {
            return base;
        }
        return expr::scale(std::move(c), std::move(base));
    }

    expr parse_factor()
    {
        const auto &t = peek();
        switch (t.type) {
            case tok::number:
                ++m_pos;
                return expr::constant(number(t));
            case tok::lparen: {
                ++m_pos;
                auto inner = parse_sum();
                expect(tok::rparen, "')'");
                return inner;
            }
            case tok::ident:
                return parse_ident();
            default:
                fail(t.type == tok::end ? "unexpected end of expression" : "unexpected '" + std::string(t.text) + "'");
        }
    }

    expr parse_ident()
    {
        const auto t = next();
        if (t.text == "y") {
            if (!accept(tok::caret)) {
                return expr::var();
            }
            const bool neg = accept(tok::minus);
            if (peek().type != tok::number) {
                fail("expected a numeric exponent after '^'");
            }
            auto m = number(next());
            return expr::power(neg ? -m : m);
        }
        const auto name = t.text;
        const bool known = name == "exp" || name == "ln" || name == "log" || name == "sin" || name == "cos"
                           || name == "sinh" || name == "cosh";
        if (!known) {
            throw parse_error("unknown name '" + std::string(name) + "'", m_line, t.column);
        }
        expect(tok::lparen, "'(' after function name");
        const auto arg_column = peek().column;
        auto [alpha, beta] = parse_linear();
        expect(tok::rparen, "')'");
        if (name == "ln" || name == "log") {
            return expr::log(std::move(alpha), std::move(beta));
        }
        if (!beta.is_zero()) {
            throw parse_error(std::string(name) + "() takes a multiple of y without a constant offset", m_line,
                              arg_column);
        }
        if (name == "exp") {
            return expr::exp(std::move(alpha));
        }
        if (name == "sin") {
            return expr::sin(std::move(alpha));
        }
        if (name == "cos") {
            return expr::cos(std::move(alpha));
        }
        if (name == "sinh") {
            return expr::sinh(std::move(alpha));
        }
        return expr::cosh(std::move(alpha));
    }

    // alpha*y + beta inside a function call.
    std::pair<coefficient, coefficient> parse_linear()
    {
        auto alpha = coefficient::zero(m_mode);
        auto beta = coefficient::zero(m_mode);
        bool first = true;
        while (true) {
            bool neg = false;
            if (!first) {
                if (accept(tok::minus)) {
                    neg = true;
                } else if (!accept(tok::plus)) {
                    break;
                }
            }
            first = false;
            if (accept(tok::minus)) {
                neg = !neg;
            }

            auto factor = coefficient::one(m_mode);
            bool has_y = false;
            while (true) {
                const auto &t = peek();
                if (t.type == tok::number) {
                    factor *= number(next());
                } else if (t.type == tok::ident && t.text == "y") {
                    if (has_y) {
                        fail("function arguments must be linear in y");
                    }
                    ++m_pos;
                    has_y = true;
                    if (peek().type == tok::caret) {
                        fail("nesting violation: nonlinear functions apply directly to y");
                    }
                } else if (t.type == tok::ident || t.type == tok::lparen) {
                    fail("nesting violation: nonlinear functions apply directly to y");
                } else {
                    fail("expected a number or y in function argument");
                }
                if (accept(tok::star)) {
                    continue;
                }
                if (accept(tok::slash)) {
                    if (peek().type != tok::number) {
                        fail("expected a number after '/'");
                    }
                    const auto &dt = next();
                    const auto d = number(dt);
                    if (d.is_zero()) {
                        throw parse_error("division by zero", m_line, dt.column);
                    }
                    factor /= d;
                    if (accept(tok::star)) {
                        continue;
                    }
                }
                break;
            }
            if (neg) {
                factor = -factor;
            }
            if (has_y) {
                alpha += factor;
            } else {
                beta += factor;
            }
        }
        return {std::move(alpha), std::move(beta)};
    }

    std::vector<token> m_tokens;
    std::size_t m_pos = 0;
    mode m_mode;
    std::size_t m_line;
};

} // namespace

expr parse_expression(std::string_view text, mode m, std::size_t line)
{
    return parser(text, m, line).parse();
}

} // namespace emden
