#include <holkit/error.hpp>
#include <holkit/locale.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace holkit
{

std::string atom::to_string() const
{
    return "|" + term.to_string() + (kind == bound_kind::le ? "|<=" : "|>=") + holkit::to_string(radius);
}

bool operator<(const atom &a, const atom &b)
{
    if (a.term < b.term) {
        return true;
    }
    if (b.term < a.term) {
        return false;
    }
    if (a.kind != b.kind) {
        return a.kind < b.kind;
    }
    return a.radius < b.radius;
}

void subset_expr::add(atom a)
{
    auto it = std::lower_bound(atoms.begin(), atoms.end(), a);
    if (it == atoms.end() || !(*it == a)) {
        subterms.insert(a.term);
        atoms.insert(it, std::move(a));
    }
}

std::string subset_expr::to_string() const
{
    std::string out;
    for (const auto &a : atoms) {
        if (!out.empty()) {
            out += " & ";
        }
        out += a.to_string();
    }
    return out;
}

namespace
{

void skip_space(std::string_view text, std::size_t &pos)
{
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
    }
}

} // namespace

subset_expr parse_subset(std::string_view text)
{
    subset_expr out;
    std::size_t pos = 0;
    for (;;) {
        skip_space(text, pos);
        if (pos >= text.size() || text[pos] != '|') {
            throw syntax_error("expected '|'", pos);
        }
        const std::size_t atom_pos = pos;
        expr_parser parser(text, pos + 1);
        const expr_ptr tree = parser.parse_expression();
        pos = parser.position();
        skip_space(text, pos);
        if (pos >= text.size() || text[pos] != '|') {
            throw syntax_error("expected closing '|'", pos);
        }
        ++pos;
        skip_space(text, pos);
        bound_kind kind;
        if (text.substr(pos, 2) == "<=") {
            kind = bound_kind::le;
        } else if (text.substr(pos, 2) == ">=") {
            kind = bound_kind::ge;
        } else {
            throw syntax_error("expected '<=' or '>='", pos);
        }
        pos += 2;
        skip_space(text, pos);
        const std::size_t radius_pos = pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/' || text[pos] == '.')) {
            ++pos;
        }
        if (pos == radius_pos || (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos])))) {
            throw syntax_error("radius must be a positive rational", radius_pos);
        }
        rational radius;
        try {
            radius = parse_rational(text.substr(radius_pos, pos - radius_pos));
        } catch (const error &) {
            throw syntax_error("radius must be a positive rational", radius_pos);
        }
        if (sgn(radius) <= 0) {
            throw syntax_error("radius must be a positive rational", radius_pos);
        }
        sym_poly term;
        try {
            term = expand(*tree);
            for_each_node(tree, [&](const expr_ptr &node) {
                out.subterms.insert(expand(*node));
                if (node->op == expr_node::kind::pow) {
                    // intermediate powers, so products can climb to the exponent
                    const sym_poly base = expand(*node->children.at(0));
                    sym_poly power = base;
                    for (unsigned e = 2; e < node->exponent; ++e) {
                        power = power * base;
                        out.subterms.insert(power);
                    }
                }
            });
        } catch (const syntax_error &) {
            throw syntax_error("term cannot be expanded to a polynomial", atom_pos + 1);
        }
        out.add({std::move(term), kind, radius});
        skip_space(text, pos);
        if (pos >= text.size()) {
            break;
        }
        if (text[pos] != '&') {
            throw syntax_error("expected '&'", pos);
        }
        ++pos;
    }
    return out;
}

std::string_view rule_name(rule_kind r)
{
    switch (r) {
    case rule_kind::hypothesis:
        return "hypothesis";
    case rule_kind::scalar_le:
        return "scalar_le";
    case rule_kind::scalar_ge:
        return "scalar_ge";
    case rule_kind::mul_le:
        return "mul_le";
    case rule_kind::mul_ge:
        return "mul_ge";
    case rule_kind::add_le:
        return "add_le";
    case rule_kind::sub_le:
        return "sub_le";
    case rule_kind::scale_le:
        return "scale_le";
    case rule_kind::scale_ge:
        return "scale_ge";
    case rule_kind::reverse_triangle:
        return "reverse_triangle";
    case rule_kind::quotient_ge:
        return "quotient_ge";
    case rule_kind::quotient_le:
        return "quotient_le";
    case rule_kind::monotone_le:
        return "monotone_le";
    case rule_kind::monotone_ge:
        return "monotone_ge";
    }
    return "unknown";
}

std::string_view verdict_name(verdict v)
{
    switch (v) {
    case verdict::proved:
        return "Proved";
    case verdict::empty:
        return "Empty";
    case verdict::unknown:
        return "Unknown";
    }
    return "Unknown";
}

std::string derivation_trace::to_string() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        os << "[" << i << "] " << rule_name(steps[i].rule) << ": " << steps[i].conclusion.to_string();
        if (!steps[i].premises.empty()) {
            os << " from";
            for (auto p : steps[i].premises) {
                os << " [" << p << "]";
            }
        }
        os << "\n";
    }
    if (contradiction) {
        os << "empty: [" << contradiction->first << "] and [" << contradiction->second << "]\n";
    }
    return os.str();
}

namespace
{

rational max_abs_part(const gaussian &c)
{
    return std::max(rational(abs(c.re())), rational(abs(c.im())));
}

// c with t = c * u, if any (u nonzero).
std::optional<gaussian> constant_ratio(const sym_poly &t, const sym_poly &u)
{
    if (u.is_zero() || t.terms().size() != u.terms().size()) {
        return std::nullopt;
    }
    const auto &[m, cu] = *u.terms().begin();
    auto it = t.terms().find(m);
    if (it == t.terms().end()) {
        return std::nullopt;
    }
    const gaussian c = it->second / cu;
    if (u * c == t) {
        return c;
    }
    return std::nullopt;
}

class engine
{
public:
    engine(const std::set<sym_poly> &universe) : m_terms(universe.begin(), universe.end())
    {
        std::map<sym_poly, std::size_t> index;
        for (std::size_t i = 0; i < m_terms.size(); ++i) {
            index.emplace(m_terms[i], i);
        }
        auto lookup = [&](const sym_poly &p) -> std::optional<std::size_t> {
            auto it = index.find(p);
            return it == index.end() ? std::nullopt : std::optional<std::size_t>(it->second);
        };
        for (std::size_t i = 0; i < m_terms.size(); ++i) {
            for (std::size_t j = 0; j < m_terms.size(); ++j) {
                if (auto h = lookup(m_terms[i] * m_terms[j])) {
                    m_products.push_back({i, j, *h});
                }
                if (i <= j) {
                    if (auto h = lookup(m_terms[i] + m_terms[j])) {
                        m_sums.push_back({i, j, *h});
                    }
                }
                if (i != j) {
                    if (auto h = lookup(m_terms[i] - m_terms[j])) {
                        m_diffs.push_back({i, j, *h});
                    }
                    if (!m_terms[i].is_constant()) {
                        if (auto c = constant_ratio(m_terms[j], m_terms[i]); c && !c->is_zero()) {
                            m_scales.push_back({i, j, *c});
                        }
                    }
                }
            }
        }
    }

    fact_base run(const std::vector<subset_expr> &hypotheses, unsigned depth)
    {
        if (depth < 1) {
            throw parameter_error("saturation depth must be at least 1");
        }
        for (const auto &h : hypotheses) {
            for (const auto &a : h.atoms) {
                add(rule_kind::hypothesis, a, {});
            }
        }
        for (const auto &t : m_terms) {
            if (t.is_constant()) {
                const gaussian c = t.is_zero() ? gaussian() : t.constant_value();
                add(rule_kind::scalar_le, {t, bound_kind::le, c.sharp_abs()}, {});
                if (sgn(max_abs_part(c)) > 0) {
                    add(rule_kind::scalar_ge, {t, bound_kind::ge, max_abs_part(c)}, {});
                }
            }
        }
        bool changed = true;
        while (changed && !m_fb.contradiction && m_fb.rounds < depth) {
            changed = round();
            ++m_fb.rounds;
        }
        m_fb.depth_capped = changed && !m_fb.contradiction;
        return std::move(m_fb);
    }

private:
    struct triple {
        std::size_t a, b, h;
    };
    struct scale {
        std::size_t u, t;
        gaussian c;
    };

    using bound = std::optional<std::pair<rational, std::size_t>>;

    // Rules read the facts as they stood at the start of the round.
    const bound &le(std::size_t i)
    {
        return m_snapshot[m_terms[i]].le;
    }
    const bound &ge(std::size_t i)
    {
        return m_snapshot[m_terms[i]].ge;
    }

    bool add(rule_kind rule, atom a, std::vector<std::size_t> premises)
    {
        auto &b = m_fb.facts[a.term];
        auto &slot = a.kind == bound_kind::le ? b.le : b.ge;
        if (slot && (a.kind == bound_kind::le ? slot->first <= a.radius : slot->first >= a.radius)) {
            return false;
        }
        slot = std::make_pair(a.radius, m_fb.steps.size());
        m_fb.steps.push_back({rule, std::move(a), std::move(premises)});
        if (!m_fb.contradiction && b.le && b.ge && b.le->first < b.ge->first) {
            m_fb.contradiction = std::make_pair(b.le->second, b.ge->second);
        }
        return true;
    }

    bool reverse(std::size_t h, std::size_t known, std::size_t other)
    {
        // |h| <= |known| + |other|
        const auto s = ge(h);
        const auto r = le(known);
        if (s && r && r->first < s->first) {
            return add(rule_kind::reverse_triangle, {m_terms[other], bound_kind::ge, s->first - r->first},
                       {s->second, r->second});
        }
        return false;
    }

    bool round()
    {
        m_snapshot = m_fb.facts;
        bool changed = false;
        for (const auto &[f, g, h] : m_products) {
            if (const auto a = le(f), b = le(g); a && b) {
                changed |= add(rule_kind::mul_le, {m_terms[h], bound_kind::le, a->first * b->first},
                               {a->second, b->second});
            }
            if (const auto a = ge(f), b = ge(g); a && b) {
                changed |= add(rule_kind::mul_ge, {m_terms[h], bound_kind::ge, a->first * b->first},
                               {a->second, b->second});
            }
            if (const auto s = ge(h), r = le(f); s && r && sgn(r->first) > 0) {
                changed |= add(rule_kind::quotient_ge, {m_terms[g], bound_kind::ge, s->first / r->first},
                               {s->second, r->second});
            }
            if (const auto s = le(h), r = ge(f); s && r) {
                changed |= add(rule_kind::quotient_le, {m_terms[g], bound_kind::le, s->first / r->first},
                               {s->second, r->second});
            }
        }
        for (const auto &[a, b, h] : m_sums) {
            if (const auto r = le(a), s = le(b); r && s) {
                changed |= add(rule_kind::add_le, {m_terms[h], bound_kind::le, r->first + s->first},
                               {r->second, s->second});
            }
            changed |= reverse(h, a, b);
            changed |= reverse(h, b, a);
        }
        for (const auto &[a, b, h] : m_diffs) {
            if (const auto r = le(a), s = le(b); r && s) {
                changed |= add(rule_kind::sub_le, {m_terms[h], bound_kind::le, r->first + s->first},
                               {r->second, s->second});
            }
            changed |= reverse(h, a, b);
            changed |= reverse(h, b, a);
        }
        for (const auto &[u, t, c] : m_scales) {
            if (const auto r = le(u)) {
                changed |= add(rule_kind::scale_le, {m_terms[t], bound_kind::le, c.sharp_abs() * r->first},
                               {r->second});
            }
            if (const auto r = ge(u)) {
                changed |= add(rule_kind::scale_ge, {m_terms[t], bound_kind::ge, max_abs_part(c) * r->first},
                               {r->second});
            }
        }
        return changed;
    }

    std::vector<sym_poly> m_terms;
    std::vector<triple> m_products, m_sums, m_diffs;
    std::vector<scale> m_scales;
    fact_base m_fb;
    std::map<sym_poly, fact_base::bounds> m_snapshot;
};

// Keeps the steps reachable from the roots and renumbers them.
derivation_trace prune(const std::vector<derivation_step> &steps, const std::vector<std::size_t> &goals,
                       const std::optional<std::pair<std::size_t, std::size_t>> &contradiction)
{
    std::vector<bool> keep(steps.size(), false);
    std::vector<std::size_t> stack = goals;
    if (contradiction) {
        stack.push_back(contradiction->first);
        stack.push_back(contradiction->second);
    }
    while (!stack.empty()) {
        const std::size_t s = stack.back();
        stack.pop_back();
        if (keep[s]) {
            continue;
        }
        keep[s] = true;
        for (auto p : steps[s].premises) {
            stack.push_back(p);
        }
    }
    std::vector<std::size_t> renumber(steps.size());
    derivation_trace out;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (keep[i]) {
            renumber[i] = out.steps.size();
            derivation_step step = steps[i];
            for (auto &p : step.premises) {
                p = renumber[p];
            }
            out.steps.push_back(std::move(step));
        }
    }
    for (auto g : goals) {
        out.goals.push_back(renumber[g]);
    }
    if (contradiction) {
        out.contradiction = std::make_pair(renumber[contradiction->first], renumber[contradiction->second]);
    }
    return out;
}

} // namespace

fact_base saturate(const std::vector<subset_expr> &hypotheses, const std::set<sym_poly> &universe, unsigned depth)
{
    std::set<sym_poly> all = universe;
    for (const auto &h : hypotheses) {
        all.insert(h.subterms.begin(), h.subterms.end());
    }
    return engine(all).run(hypotheses, depth);
}

decision decide_containment(const subset_expr &lhs, const subset_expr &rhs, unsigned depth)
{
    std::set<sym_poly> universe = lhs.subterms;
    universe.insert(rhs.subterms.begin(), rhs.subterms.end());
    fact_base fb = saturate({lhs}, universe, depth);
    if (fb.contradiction) {
        return {verdict::proved, prune(fb.steps, {}, fb.contradiction), fb.rounds, fb.depth_capped};
    }
    std::vector<std::size_t> goals;
    for (const auto &a : rhs.atoms) {
        const auto &b = fb.facts[a.term];
        const auto &slot = a.kind == bound_kind::le ? b.le : b.ge;
        if (!slot || (a.kind == bound_kind::le ? slot->first > a.radius : slot->first < a.radius)) {
            return {verdict::unknown, {}, fb.rounds, fb.depth_capped};
        }
        if (slot->first == a.radius) {
            goals.push_back(slot->second);
        } else {
            goals.push_back(fb.steps.size());
            fb.steps.push_back({a.kind == bound_kind::le ? rule_kind::monotone_le : rule_kind::monotone_ge, a,
                                {slot->second}});
        }
    }
    return {verdict::proved, prune(fb.steps, goals, std::nullopt), fb.rounds, fb.depth_capped};
}

decision decide_empty(const subset_expr &e, unsigned depth)
{
    fact_base fb = saturate({e}, e.subterms, depth);
    if (fb.contradiction) {
        return {verdict::empty, prune(fb.steps, {}, fb.contradiction), fb.rounds, fb.depth_capped};
    }
    return {verdict::unknown, {}, fb.rounds, fb.depth_capped};
}

namespace
{

// Checks one step against its schema using only sym_poly arithmetic.
std::optional<std::string> check_step(const subset_expr &lhs, const std::vector<derivation_step> &steps,
                                      std::size_t index)
{
    const auto &step = steps[index];
    const atom &c = step.conclusion;
    for (auto p : step.premises) {
        if (p >= index) {
            return "premise refers forward";
        }
    }
    auto premise = [&](std::size_t k) -> const atom & { return steps[step.premises[k]].conclusion; };
    auto need = [&](std::size_t count) { return step.premises.size() == count; };
    auto is = [](const atom &a, bound_kind k) { return a.kind == k; };
    const bool le = c.kind == bound_kind::le;
    const bool ge = !le;
    if (sgn(c.radius) < 0 || (ge && sgn(c.radius) == 0)) {
        return "bad radius";
    }
    switch (step.rule) {
    case rule_kind::hypothesis:
        if (need(0) && std::find(lhs.atoms.begin(), lhs.atoms.end(), c) != lhs.atoms.end()) {
            return std::nullopt;
        }
        return "not a hypothesis";
    case rule_kind::scalar_le:
        if (need(0) && le && c.term.is_constant()) {
            const gaussian v = c.term.is_zero() ? gaussian() : c.term.constant_value();
            if (v.sharp_abs() <= c.radius) {
                return std::nullopt;
            }
        }
        return "scalar bound fails";
    case rule_kind::scalar_ge:
        if (need(0) && ge && c.term.is_constant() && !c.term.is_zero()) {
            const gaussian v = c.term.constant_value();
            if (max_abs_part(v) >= c.radius) {
                return std::nullopt;
            }
        }
        return "scalar bound fails";
    case rule_kind::mul_le:
    case rule_kind::mul_ge: {
        const bound_kind k = step.rule == rule_kind::mul_le ? bound_kind::le : bound_kind::ge;
        if (need(2) && c.kind == k && is(premise(0), k) && is(premise(1), k) &&
            c.term == premise(0).term * premise(1).term && c.radius == premise(0).radius * premise(1).radius) {
            return std::nullopt;
        }
        return "product rule mismatch";
    }
    case rule_kind::add_le:
    case rule_kind::sub_le: {
        if (!need(2) || !le || !is(premise(0), bound_kind::le) || !is(premise(1), bound_kind::le)) {
            return "sum rule mismatch";
        }
        const sym_poly t = step.rule == rule_kind::add_le ? premise(0).term + premise(1).term
                                                          : premise(0).term - premise(1).term;
        if (c.term == t && c.radius == premise(0).radius + premise(1).radius) {
            return std::nullopt;
        }
        return "sum rule mismatch";
    }
    case rule_kind::scale_le:
    case rule_kind::scale_ge: {
        const bound_kind k = step.rule == rule_kind::scale_le ? bound_kind::le : bound_kind::ge;
        if (!need(1) || c.kind != k || !is(premise(0), k)) {
            return "scale rule mismatch";
        }
        const auto ratio = constant_ratio(c.term, premise(0).term);
        if (!ratio || ratio->is_zero()) {
            return "not a constant multiple";
        }
        const rational factor = k == bound_kind::le ? ratio->sharp_abs() : max_abs_part(*ratio);
        if (c.radius == factor * premise(0).radius) {
            return std::nullopt;
        }
        return "scale rule mismatch";
    }
    case rule_kind::reverse_triangle: {
        if (!need(2) || !ge || !is(premise(0), bound_kind::ge) || !is(premise(1), bound_kind::le)) {
            return "reverse triangle mismatch";
        }
        const sym_poly &h = premise(0).term;
        const sym_poly &a = premise(1).term;
        const sym_poly &b = c.term;
        const bool shape = h == a + b || h == a - b || h == b - a || h == -a - b;
        if (shape && premise(1).radius < premise(0).radius && c.radius == premise(0).radius - premise(1).radius) {
            return std::nullopt;
        }
        return "reverse triangle mismatch";
    }
    case rule_kind::quotient_ge:
    case rule_kind::quotient_le: {
        const bool qge = step.rule == rule_kind::quotient_ge;
        const bound_kind k = qge ? bound_kind::ge : bound_kind::le;
        const bound_kind other = qge ? bound_kind::le : bound_kind::ge;
        if (!need(2) || c.kind != k || !is(premise(0), k) || !is(premise(1), other) ||
            sgn(premise(1).radius) <= 0) {
            return "quotient rule mismatch";
        }
        if (premise(0).term == premise(1).term * c.term && c.radius == premise(0).radius / premise(1).radius) {
            return std::nullopt;
        }
        return "quotient rule mismatch";
    }
    case rule_kind::monotone_le:
    case rule_kind::monotone_ge: {
        const bound_kind k = step.rule == rule_kind::monotone_le ? bound_kind::le : bound_kind::ge;
        if (!need(1) || c.kind != k || !is(premise(0), k) || !(premise(0).term == c.term)) {
            return "monotonicity mismatch";
        }
        if (k == bound_kind::le ? premise(0).radius <= c.radius : premise(0).radius >= c.radius) {
            return std::nullopt;
        }
        return "monotonicity mismatch";
    }
    }
    return "unknown rule";
}

std::optional<std::string> check_steps(const subset_expr &lhs, const derivation_trace &trace)
{
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        if (auto err = check_step(lhs, trace.steps, i)) {
            return "step " + std::to_string(i) + ": " + *err;
        }
    }
    return std::nullopt;
}

bool valid_contradiction(const derivation_trace &trace)
{
    if (!trace.contradiction) {
        return false;
    }
    const auto [l, g] = *trace.contradiction;
    if (l >= trace.steps.size() || g >= trace.steps.size()) {
        return false;
    }
    const atom &a = trace.steps[l].conclusion;
    const atom &b = trace.steps[g].conclusion;
    return a.kind == bound_kind::le && b.kind == bound_kind::ge && a.term == b.term && a.radius < b.radius;
}

} // namespace

replay_result replay_containment(const subset_expr &lhs, const subset_expr &rhs, const derivation_trace &trace)
{
    if (auto err = check_steps(lhs, trace)) {
        return {false, *err};
    }
    if (trace.contradiction) {
        return valid_contradiction(trace) ? replay_result{true, "lhs is empty"}
                                          : replay_result{false, "invalid contradiction"};
    }
    for (const auto &a : rhs.atoms) {
        const bool found = std::any_of(trace.goals.begin(), trace.goals.end(), [&](std::size_t g) {
            return g < trace.steps.size() && trace.steps[g].conclusion == a;
        });
        if (!found) {
            return {false, "goal " + a.to_string() + " not derived"};
        }
    }
    return {true, "all goals derived"};
}

replay_result replay_empty(const subset_expr &e, const derivation_trace &trace)
{
    if (auto err = check_steps(e, trace)) {
        return {false, *err};
    }
    return valid_contradiction(trace) ? replay_result{true, "contradiction derived"}
                                      : replay_result{false, "no valid contradiction"};
}

} // namespace holkit
