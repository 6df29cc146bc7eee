#ifndef HOLKIT_EXPR_HPP
#define HOLKIT_EXPR_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <holkit/scalar.hpp>

namespace holkit
{

// Monomial over named symbols: symbol -> positive exponent.
using sym_monomial = std::map<std::string, unsigned>;

// Polynomial with Gaussian-rational coefficients in named symbols, kept in
// canonical expanded form (no zero coefficients).
class sym_poly
{
public:
    sym_poly() = default;
    explicit sym_poly(gaussian constant);
    static sym_poly symbol(const std::string &name);

    const std::map<sym_monomial, gaussian> &terms() const noexcept
    {
        return m_terms;
    }
    bool is_zero() const noexcept
    {
        return m_terms.empty();
    }
    bool is_constant() const;
    // Constant value; only meaningful when is_constant().
    gaussian constant_value() const;

    void add_term(const sym_monomial &m, const gaussian &c);

    sym_poly operator-() const;
    friend sym_poly operator+(const sym_poly &a, const sym_poly &b);
    friend sym_poly operator-(const sym_poly &a, const sym_poly &b);
    friend sym_poly operator*(const sym_poly &a, const sym_poly &b);
    friend sym_poly operator*(const sym_poly &a, const gaussian &c);
    friend bool operator==(const sym_poly &a, const sym_poly &b) = default;
    // Orders by canonical text; good enough for set/map keys.
    friend bool operator<(const sym_poly &a, const sym_poly &b);

    sym_poly pow(unsigned e) const;

    gaussian evaluate(const std::map<std::string, gaussian> &point) const;

    std::vector<std::string> symbols() const;

    std::string to_string() const;

private:
    std::map<sym_monomial, gaussian> m_terms;
};

// Parse tree node. Trees are immutable and shared.
struct expr_node {
    enum class kind { number, symbol, add, sub, mul, div, neg, pow };
    kind op = kind::number;
    gaussian value;
    std::string name;
    unsigned exponent = 0;
    std::vector<std::shared_ptr<const expr_node>> children;
};
using expr_ptr = std::shared_ptr<const expr_node>;

// Recursive-descent parser for polynomial expressions:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := number ['i'] | 'i' | identifier | '(' expr ')'
// The bare identifier "i" is the imaginary unit. Division is allowed only by
// nonzero constants. Parsing stops at the first character that cannot
// continue an expression, so the parser can be embedded in larger grammars.
class expr_parser
{
public:
    explicit expr_parser(std::string_view text, std::size_t pos = 0) : m_text(text), m_pos(pos) {}

    expr_ptr parse_expression();

    std::size_t position() const noexcept
    {
        return m_pos;
    }
    void skip_space();
    bool at_end();
    char peek();

private:
    expr_ptr parse_term();
    expr_ptr parse_unary();
    expr_ptr parse_power();
    expr_ptr parse_primary();

    std::string_view m_text;
    std::size_t m_pos;
};

// Expands a tree into canonical form. Throws syntax_error(position 0) on
// division by a non-constant or by zero.
sym_poly expand(const expr_node &node);

// Visits every node of a tree (pre-order).
void for_each_node(const expr_ptr &root, const std::function<void(const expr_ptr &)> &fn);

// Parses a complete string; trailing garbage is a syntax error.
sym_poly parse_polynomial(std::string_view text);

} // namespace holkit

#endif
