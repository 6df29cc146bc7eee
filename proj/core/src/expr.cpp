#include <holkit/error.hpp>
#include <holkit/expr.hpp>

#include <cctype>
#include <set>
#include <sstream>

namespace holkit
{

sym_poly::sym_poly(gaussian constant)
{
    add_term({}, constant);
}

sym_poly sym_poly::symbol(const std::string &name)
{
    sym_poly p;
    p.m_terms.emplace(sym_monomial{{name, 1u}}, gaussian(1));
    return p;
}

bool sym_poly::is_constant() const
{
    return m_terms.empty() || (m_terms.size() == 1 && m_terms.begin()->first.empty());
}

gaussian sym_poly::constant_value() const
{
    auto it = m_terms.find(sym_monomial{});
    return it == m_terms.end() ? gaussian{} : it->second;
}

void sym_poly::add_term(const sym_monomial &m, const gaussian &c)
{
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = m_terms.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            m_terms.erase(it);
        }
    }
}

sym_poly sym_poly::operator-() const
{
    sym_poly out;
    for (const auto &[m, c] : m_terms) {
        out.m_terms.emplace(m, -c);
    }
    return out;
}

sym_poly operator+(const sym_poly &a, const sym_poly &b)
{
    sym_poly out = a;
    for (const auto &[m, c] : b.m_terms) {
        out.add_term(m, c);
    }
    return out;
}

sym_poly operator-(const sym_poly &a, const sym_poly &b)
{
    return a + (-b);
}

sym_poly operator*(const sym_poly &a, const sym_poly &b)
{
    sym_poly out;
    for (const auto &[ma, ca] : a.m_terms) {
        for (const auto &[mb, cb] : b.m_terms) {
            sym_monomial m = ma;
            for (const auto &[s, e] : mb) {
                m[s] += e;
            }
            out.add_term(m, ca * cb);
        }
    }
    return out;
}

sym_poly operator*(const sym_poly &a, const gaussian &c)
{
    return a * sym_poly(c);
}

bool operator<(const sym_poly &a, const sym_poly &b)
{
    return a.to_string() < b.to_string();
}

sym_poly sym_poly::pow(unsigned e) const
{
    sym_poly out(gaussian(1));
    for (unsigned k = 0; k < e; ++k) {
        out = out * *this;
    }
    return out;
}

gaussian sym_poly::evaluate(const std::map<std::string, gaussian> &point) const
{
    gaussian total;
    for (const auto &[m, c] : m_terms) {
        gaussian t = c;
        for (const auto &[s, e] : m) {
            auto it = point.find(s);
            if (it == point.end()) {
                throw input_error("no value for symbol '" + s + "'");
            }
            for (unsigned k = 0; k < e; ++k) {
                t *= it->second;
            }
        }
        total += t;
    }
    return total;
}

std::vector<std::string> sym_poly::symbols() const
{
    std::set<std::string> out;
    for (const auto &[m, c] : m_terms) {
        for (const auto &[s, e] : m) {
            out.insert(s);
        }
    }
    return {out.begin(), out.end()};
}

std::string sym_poly::to_string() const
{
    if (m_terms.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &[m, c] : m_terms) {
        std::string mono;
        for (const auto &[s, e] : m) {
            if (!mono.empty()) {
                mono += "*";
            }
            mono += s;
            if (e != 1) {
                mono += "^" + std::to_string(e);
            }
        }
        gaussian coeff = c;
        bool negative = false;
        if (c.is_real() && sgn(c.re()) < 0) {
            negative = true;
            coeff = -c;
        }
        if (!first) {
            os << (negative ? " - " : " + ");
        } else if (negative) {
            os << "-";
        }
        first = false;
        const bool unit = coeff == gaussian(1);
        const std::string cs = holkit::to_string(coeff);
        const bool wrap = !coeff.is_real() && sgn(coeff.re()) != 0;
        if (mono.empty()) {
            os << (wrap ? "(" + cs + ")" : cs);
        } else if (unit) {
            os << mono;
        } else {
            os << (wrap ? "(" + cs + ")" : cs) << "*" << mono;
        }
    }
    return os.str();
}

void expr_parser::skip_space()
{
    while (m_pos < m_text.size() && std::isspace(static_cast<unsigned char>(m_text[m_pos]))) {
        ++m_pos;
    }
}

bool expr_parser::at_end()
{
    skip_space();
    return m_pos >= m_text.size();
}

char expr_parser::peek()
{
    skip_space();
    return m_pos < m_text.size() ? m_text[m_pos] : '\0';
}

namespace
{

expr_ptr make_node(expr_node::kind op, std::vector<expr_ptr> children)
{
    auto n = std::make_shared<expr_node>();
    n->op = op;
    n->children = std::move(children);
    return n;
}

bool is_ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

} // namespace

expr_ptr expr_parser::parse_expression()
{
    auto lhs = parse_term();
    for (;;) {
        const char c = peek();
        if (c != '+' && c != '-') {
            return lhs;
        }
        ++m_pos;
        auto rhs = parse_term();
        lhs = make_node(c == '+' ? expr_node::kind::add : expr_node::kind::sub, {lhs, rhs});
    }
}

expr_ptr expr_parser::parse_term()
{
    auto lhs = parse_unary();
    for (;;) {
        const char c = peek();
        if (c != '*' && c != '/') {
            return lhs;
        }
        ++m_pos;
        auto rhs = parse_unary();
        lhs = make_node(c == '*' ? expr_node::kind::mul : expr_node::kind::div, {lhs, rhs});
    }
}

expr_ptr expr_parser::parse_unary()
{
    const char c = peek();
    if (c == '-' || c == '+') {
        ++m_pos;
        auto operand = parse_unary();
        return c == '-' ? make_node(expr_node::kind::neg, {operand}) : operand;
    }
    return parse_power();
}

expr_ptr expr_parser::parse_power()
{
    auto base = parse_primary();
    if (peek() != '^') {
        return base;
    }
    ++m_pos;
    skip_space();
    const std::size_t start = m_pos;
    while (m_pos < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[m_pos]))) {
        ++m_pos;
    }
    if (start == m_pos) {
        throw syntax_error("expected a nonnegative integer exponent", start);
    }
    auto n = std::make_shared<expr_node>();
    n->op = expr_node::kind::pow;
    n->exponent = static_cast<unsigned>(std::stoul(std::string(m_text.substr(start, m_pos - start))));
    n->children = {base};
    return n;
}

expr_ptr expr_parser::parse_primary()
{
    const char c = peek();
    const std::size_t start = m_pos;
    if (c == '(') {
        ++m_pos;
        auto inner = parse_expression();
        if (peek() != ')') {
            throw syntax_error("expected ')'", m_pos);
        }
        ++m_pos;
        return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        while (m_pos < m_text.size()
               && (std::isdigit(static_cast<unsigned char>(m_text[m_pos])) || m_text[m_pos] == '.')) {
            ++m_pos;
        }
        rational q;
        try {
            q = parse_rational(m_text.substr(start, m_pos - start));
        } catch (const input_error &) {
            throw syntax_error("malformed number", start);
        }
        // "p/qi" reads as (p/q)i, matching how coefficients print
        std::size_t end = m_pos;
        if (end < m_text.size() && m_text[end] == '/') {
            std::size_t k = end + 1;
            while (k < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[k]))) {
                ++k;
            }
            if (k > end + 1 && k < m_text.size() && m_text[k] == 'i'
                && (k + 1 >= m_text.size() || !is_ident_char(m_text[k + 1]))) {
                const rational d = parse_rational(m_text.substr(end + 1, k - end - 1));
                if (sgn(d) == 0) {
                    throw syntax_error("division by zero", end);
                }
                q /= d;
                m_pos = k;
            }
        }
        auto n = std::make_shared<expr_node>();
        n->op = expr_node::kind::number;
        if (m_pos < m_text.size() && m_text[m_pos] == 'i'
            && (m_pos + 1 >= m_text.size() || !is_ident_char(m_text[m_pos + 1]))) {
            ++m_pos;
            n->value = gaussian(0, q);
        } else {
            n->value = gaussian(q);
        }
        return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (m_pos < m_text.size() && is_ident_char(m_text[m_pos])) {
            ++m_pos;
        }
        auto n = std::make_shared<expr_node>();
        const std::string name(m_text.substr(start, m_pos - start));
        if (name == "i") {
            n->op = expr_node::kind::number;
            n->value = gaussian::i();
        } else {
            n->op = expr_node::kind::symbol;
            n->name = name;
        }
        return n;
    }
    throw syntax_error(c == '\0' ? "unexpected end of input" : std::string("unexpected '") + c + "'", start);
}

sym_poly expand(const expr_node &node)
{
    using k = expr_node::kind;
    switch (node.op) {
    case k::number:
        return sym_poly(node.value);
    case k::symbol:
        return sym_poly::symbol(node.name);
    case k::add:
        return expand(*node.children[0]) + expand(*node.children[1]);
    case k::sub:
        return expand(*node.children[0]) - expand(*node.children[1]);
    case k::mul:
        return expand(*node.children[0]) * expand(*node.children[1]);
    case k::neg:
        return -expand(*node.children[0]);
    case k::pow:
        return expand(*node.children[0]).pow(node.exponent);
    case k::div: {
        const sym_poly den = expand(*node.children[1]);
        if (!den.is_constant() || den.is_zero()) {
            throw syntax_error("division only by nonzero constants", 0);
        }
        return expand(*node.children[0]) * (gaussian(1) / den.constant_value());
    }
    }
    return {};
}

void for_each_node(const expr_ptr &root, const std::function<void(const expr_ptr &)> &fn)
{
    fn(root);
    for (const auto &c : root->children) {
        for_each_node(c, fn);
    }
}

sym_poly parse_polynomial(std::string_view text)
{
    expr_parser p(text);
    auto tree = p.parse_expression();
    if (!p.at_end()) {
        throw syntax_error("unexpected trailing input", p.position());
    }
    return expand(*tree);
}

} // namespace holkit
