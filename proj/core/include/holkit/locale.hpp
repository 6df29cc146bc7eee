#ifndef HOLKIT_LOCALE_HPP
#define HOLKIT_LOCALE_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <holkit/expr.hpp>
#include <holkit/scalar.hpp>

namespace holkit
{

enum class bound_kind { le, ge };

// {|term| <= radius} or {|term| >= radius}. Parsed atoms have positive
// radius; derived Le facts may carry radius 0 on the zero term.
struct atom {
    sym_poly term;
    bound_kind kind = bound_kind::le;
    rational radius;

    std::string to_string() const;
    friend bool operator==(const atom &a, const atom &b) = default;
    friend bool operator<(const atom &a, const atom &b);
};

// Intersection of atoms; no atoms means the whole space. `subterms` holds
// the canonical form of every node of the parsed terms, which is the
// universe the prover instantiates rules on.
struct subset_expr {
    std::vector<atom> atoms;
    std::set<sym_poly> subterms;

    void add(atom a);
    std::string to_string() const;
};

//   expr := atom ('&' atom)*
//   atom := '|' poly '|' ('<=' | '>=') rational
// Throws syntax_error with the offending position.
subset_expr parse_subset(std::string_view text);

enum class rule_kind {
    hypothesis,
    scalar_le,       // |alpha| <= r when |a| + |b| <= r
    scalar_ge,       // |alpha| >= r when max(|a|, |b|) >= r
    mul_le,          // Le(f,r), Le(g,s) => Le(fg, rs)
    mul_ge,          // Ge(f,r), Ge(g,s) => Ge(fg, rs)
    add_le,          // Le(f,r), Le(g,s) => Le(f+g, r+s)
    sub_le,          // Le(f,r), Le(g,s) => Le(f-g, r+s)
    scale_le,        // Le(u,r) => Le(cu, |c|_# r)
    scale_ge,        // Ge(u,r) => Ge(cu, max(|Re c|, |Im c|) r)
    reverse_triangle, // Ge(+-a +-b, s), Le(a, r), r < s => Ge(b, s-r)
    quotient_ge,     // Ge(fg, s), Le(f, r) => Ge(g, s/r)
    quotient_le,     // Le(fg, s), Ge(f, r) => Le(g, s/r)
    monotone_le,     // Le(t, r) => Le(t, s) for s >= r
    monotone_ge,     // Ge(t, s) => Ge(t, r) for r <= s
};

std::string_view rule_name(rule_kind r);

struct derivation_step {
    rule_kind rule;
    atom conclusion;
    std::vector<std::size_t> premises;
};

// Steps refer to earlier steps only. A contradiction is a pair
// (Le(t, r), Ge(t, s)) of step indices with r < s.
struct derivation_trace {
    std::vector<derivation_step> steps;
    std::optional<std::pair<std::size_t, std::size_t>> contradiction;
    // For containment: the step concluding each rhs atom, in rhs order.
    std::vector<std::size_t> goals;

    std::string to_string() const;
};

struct fact_base {
    // Best bounds per term and the steps that produced them.
    struct bounds {
        std::optional<std::pair<rational, std::size_t>> le;
        std::optional<std::pair<rational, std::size_t>> ge;
    };
    std::map<sym_poly, bounds> facts;
    std::vector<derivation_step> steps;
    unsigned rounds = 0;
    // True when the depth cap stopped saturation before a fixpoint.
    bool depth_capped = false;
    std::optional<std::pair<std::size_t, std::size_t>> contradiction;
};

constexpr unsigned default_locale_depth = 3;

// Forward chaining from the hypotheses over the union of the subterms.
fact_base saturate(const std::vector<subset_expr> &hypotheses, const std::set<sym_poly> &universe,
                   unsigned depth = default_locale_depth);

enum class verdict { proved, empty, unknown };

std::string_view verdict_name(verdict v);

struct decision {
    verdict result;
    // Pruned to the steps the verdict depends on.
    derivation_trace trace;
    unsigned rounds;
    bool depth_capped;
};

// proved when every rhs atom is derived (or lhs is shown empty).
decision decide_containment(const subset_expr &lhs, const subset_expr &rhs, unsigned depth = default_locale_depth);
decision decide_empty(const subset_expr &e, unsigned depth = default_locale_depth);

struct replay_result {
    bool valid;
    std::string message;
};

// Independent check that every step instantiates its rule schema and that the
// trace establishes the verdict.
replay_result replay_containment(const subset_expr &lhs, const subset_expr &rhs, const derivation_trace &trace);
replay_result replay_empty(const subset_expr &e, const derivation_trace &trace);

} // namespace holkit

#endif
