#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <gmp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <holkit/error.hpp>
#include <holkit/exact_matrix.hpp>
#include <holkit/hochschild.hpp>
#include <holkit/locale.hpp>
#include <holkit/operators.hpp>
#include <holkit/series.hpp>
#include <holkit/series_io.hpp>
#include <holkit/weierstrass.hpp>

#ifndef HOLKIT_VERSION
#define HOLKIT_VERSION "unknown"
#endif

namespace holkit::cli
{

namespace
{

using json = nlohmann::ordered_json;

constexpr unsigned fallback_trunc = 8;

struct outcome {
    int code = exit_ok;
    json inputs = json::object();
    json outputs = json::object();
    std::string mode = "exact";
};

json rational_json(const rational &q)
{
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) {
        return q.get_num().get_si();
    }
    return to_string(q);
}

json series_json(const multi_series &s)
{
    return json::parse(series_to_json(s));
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw input_error("cannot read '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json read_json(const std::string &path)
{
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error &e) {
        throw input_error(path + ": " + e.what());
    }
}

unsigned env_trunc()
{
    const char *text = std::getenv("HOLKIT_TRUNC");
    if (text == nullptr || *text == '\0') {
        return fallback_trunc;
    }
    char *end = nullptr;
    const unsigned long v = std::strtoul(text, &end, 10);
    if (*end != '\0' || v == 0 || v > 4096) {
        throw input_error(std::string("HOLKIT_TRUNC must be a positive integer, got '") + text + "'");
    }
    return static_cast<unsigned>(v);
}

// The file's own "trunc" wins unless --trunc was given.
multi_series load_series(const std::string &path, std::optional<unsigned> trunc)
{
    json j = read_json(path);
    if (!j.is_object()) {
        throw input_error(path + ": expected a JSON object");
    }
    if (trunc) {
        j["trunc"] = *trunc;
    } else if (!j.contains("trunc")) {
        j["trunc"] = env_trunc();
    }
    return series_from_json(j.dump());
}

unsigned x1_degree(const multi_series &g)
{
    unsigned k = 0;
    for (const auto &[e, c] : g.terms()) {
        k = std::max(k, e[0]);
    }
    return k;
}

exponent x1_power(unsigned n, unsigned k)
{
    exponent e(n, 0);
    e[0] = k;
    return e;
}

// Monic of X1-degree k, every lower coefficient vanishing at the origin.
bool is_distinguished(const multi_series &g, unsigned k)
{
    if (g.coeff(x1_power(g.nvars(), k)) != gaussian(1)) {
        return false;
    }
    for (const auto &[e, c] : g.terms()) {
        if (e[0] > k || (e[0] == k && ideal_degree(e) > 0) || (e[0] < k && ideal_degree(e) == 0)) {
            return false;
        }
    }
    return true;
}

json matrix_json(const int_matrix &a)
{
    json rows = json::array();
    for (const auto &row : a) {
        rows.push_back(row);
    }
    return rows;
}

rational exact_value(const json &v)
{
    if (v.is_string()) {
        return parse_rational(v.get<std::string>());
    }
    if (v.is_number_integer() || v.is_number_float()) {
        return parse_rational(v.dump());
    }
    throw input_error("expected a number or a rational string, got " + v.dump());
}

double float_value(const json &v)
{
    if (v.is_number()) {
        return v.get<double>();
    }
    if (v.is_string()) {
        return to_double(parse_rational(v.get<std::string>()));
    }
    throw input_error("expected a number, got " + v.dump());
}

matrix read_matrix(const json &j)
{
    const json &rows = j.is_object() ? j.at("matrix") : j;
    if (!rows.is_array() || rows.empty() || !rows[0].is_array()) {
        throw input_error("expected a nonempty array of rows");
    }
    const auto r = rows.size();
    const auto c = rows[0].size();
    matrix a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    for (std::size_t i = 0; i < r; ++i) {
        if (!rows[i].is_array() || rows[i].size() != c) {
            throw input_error("matrix rows must all have length " + std::to_string(c));
        }
        for (std::size_t j2 = 0; j2 < c; ++j2) {
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j2)) = float_value(rows[i][j2]);
        }
    }
    return a;
}

std::size_t float_rank(const matrix &a, double tol)
{
    const auto sv = singular_values(a);
    return static_cast<std::size_t>(std::count_if(sv.sigma.begin(), sv.sigma.end(), [&](double s) { return s > tol; }));
}

// ---------------------------------------------------------------- charclasses

outcome cmd_hrr(const std::string &space_text, const std::string &bundle_text)
{
    outcome o;
    o.inputs["space"] = space_text;
    o.inputs["bundle"] = bundle_text;
    const auto x = parse_space(space_text);
    const auto v = parse_bundle(*x, bundle_text);
    const rational chi = hrr(*x, v);
    o.outputs["space"] = x->name;
    o.outputs["dim"] = x->dim;
    o.outputs["rank"] = v.rank();
    o.outputs["chi"] = rational_json(chi);
    const bool integral = chi.get_den() == 1;
    o.outputs["integral"] = integral;
    if (!integral) {
        o.code = exit_mismatch;
    }
    // line bundles on P^n also get the monomial-count oracle
    if (x->shape == space::kind::proj_space && v.plus_roots.size() == 1 && v.minus_roots.empty()) {
        const rational k = v.plus_roots[0].coeff(exponent{1});
        if (k.get_den() == 1 && k.get_num().fits_slong_p()) {
            const long long expected = oracle_chi_proj(x->dim, k.get_num().get_si());
            const bool match = chi == rational(static_cast<long>(expected));
            o.outputs["oracle"] = expected;
            o.outputs["match"] = match;
            if (!match) {
                o.code = exit_mismatch;
            }
        }
    }
    return o;
}

outcome cmd_chi_table(unsigned n, long kmin, long kmax)
{
    if (n < 1 || n > 16) {
        throw input_error("--n must lie in 1..16");
    }
    if (kmin > kmax) {
        throw input_error("--kmin exceeds --kmax");
    }
    outcome o;
    o.inputs["n"] = n;
    o.inputs["kmin"] = kmin;
    o.inputs["kmax"] = kmax;
    const auto pn = proj_space(n);
    json rows = json::array();
    bool all = true;
    for (long k = kmin; k <= kmax; ++k) {
        const rational chi = hrr(*pn, parse_bundle(*pn, "O(" + std::to_string(k) + ")"));
        const long long expected = oracle_chi_proj(n, k);
        const bool match = chi == rational(static_cast<long>(expected));
        all = all && match;
        json row;
        row["n"] = n;
        row["k"] = k;
        row["hrr"] = rational_json(chi);
        row["oracle"] = expected;
        row["match"] = match;
        rows.push_back(row);
    }
    o.outputs["rows"] = rows;
    o.outputs["all_match"] = all;
    o.code = all ? exit_ok : exit_mismatch;
    return o;
}

outcome cmd_grr(const std::string &map_text, const std::string &bundle_template, std::optional<long> a,
                std::optional<long> b, const std::string &pushed_text)
{
    outcome o;
    o.inputs["map"] = map_text;
    o.inputs["bundle"] = bundle_template;
    if (a) {
        o.inputs["a"] = *a;
    }
    if (b) {
        o.inputs["b"] = *b;
    }
    std::string bundle_text = bundle_template;
    if (a || b) {
        bundle_text = instantiate_template(bundle_template, a.value_or(0), b.value_or(0));
    }
    const auto f = parse_map(map_text);
    const auto v = parse_bundle(*f.source, bundle_text);
    bundle_spec pushed;
    if (pushed_text.empty()) {
        pushed = catalog_pushforward(f, v);
    } else {
        o.inputs["pushed"] = pushed_text;
        pushed = parse_bundle(*f.target, pushed_text);
    }
    const auto r = grr_check(f, v, pushed);
    o.outputs["source"] = f.source->name;
    o.outputs["target"] = f.target->name;
    o.outputs["bundle"] = bundle_text;
    o.outputs["pushed_rank"] = pushed.rank();
    o.outputs["lhs"] = r.lhs.to_string();
    o.outputs["rhs"] = r.rhs.to_string();
    o.outputs["equal"] = r.equal;
    o.code = r.equal ? exit_ok : exit_mismatch;
    return o;
}

// ----------------------------------------------------------------- weierstrass

outcome cmd_weierstrass(const std::string &input, unsigned order, std::optional<unsigned> trunc,
                        std::uint64_t seed)
{
    outcome o;
    o.inputs["input"] = input;
    o.inputs["order"] = order;
    const multi_series f = load_series(input, trunc);
    o.inputs["f"] = f.to_string();
    o.inputs["trunc"] = f.trunc();

    multi_series target = f;
    try {
        x1_vanishing_order(f);
    } catch (const regularity_error &) {
        const auto change = generic_coordinate_change(f, seed);
        target = change.transformed;
        json c;
        c["matrix"] = matrix_json(change.matrix);
        c["attempts"] = change.attempts;
        c["seed"] = change.seed;
        c["transformed"] = target.to_string();
        o.outputs["change"] = c;
    }
    const auto pf = prepare(target, order);
    const bool distinguished = is_distinguished(pf.g, pf.k);
    const bool reconstructs = reduce_mod_ideal(pf.g * pf.u, order) == reduce_mod_ideal(target, order);
    const bool unit = !pf.u.constant_term().is_zero();
    o.outputs["k"] = pf.k;
    o.outputs["g"] = pf.g.to_string();
    o.outputs["u"] = pf.u.to_string();
    o.outputs["g_terms"] = series_json(pf.g);
    o.outputs["u_terms"] = series_json(pf.u);
    o.outputs["checks"] = {{"distinguished", distinguished}, {"unit", unit}, {"reconstructs", reconstructs}};
    o.code = distinguished && unit && reconstructs ? exit_ok : exit_mismatch;
    return o;
}

outcome cmd_divide(const std::string &input, const std::string &divisor, unsigned order,
                   std::optional<unsigned> trunc)
{
    outcome o;
    o.inputs["input"] = input;
    o.inputs["divisor"] = divisor;
    o.inputs["order"] = order;
    const multi_series f = load_series(input, trunc);
    const multi_series g = load_series(divisor, trunc);
    o.inputs["f"] = f.to_string();
    o.inputs["g"] = g.to_string();
    const auto res = divide(f, g, order);
    const unsigned k = x1_degree(g);
    const bool low_degree = res.r.is_zero() || x1_degree(res.r) < k;
    const bool reconstructs = reduce_mod_ideal(res.q * g + res.r, order) == reduce_mod_ideal(f, order);
    o.outputs["k"] = k;
    o.outputs["q"] = res.q.to_string();
    o.outputs["r"] = res.r.to_string();
    o.outputs["q_terms"] = series_json(res.q);
    o.outputs["r_terms"] = series_json(res.r);
    o.outputs["checks"] = {{"remainder_degree", low_degree}, {"reconstructs", reconstructs}};
    o.code = low_degree && reconstructs ? exit_ok : exit_mismatch;
    return o;
}

// ------------------------------------------------------------------- operators

outcome cmd_fredholm(const std::string &input, const std::string &mode, double tol)
{
    outcome o;
    o.mode = mode;
    o.inputs["input"] = input;
    o.inputs["tol"] = tol;
    const json j = read_json(input);
    if (!j.is_object() || !j.contains("dim") || !j.contains("rows") || !j.at("rows").is_array()) {
        throw input_error(input + ": expected {\"dim\": M, \"rows\": [{\"lambda\": .., \"v\": [..]}, ..]}");
    }
    try {
        const auto dim = j.at("dim").get<std::size_t>();
        o.inputs["dim"] = dim;
        o.inputs["rows"] = j.at("rows").size();
        if (mode == "exact") {
            exact_trace_class_decomposition t;
            t.dim = dim;
            if (j.contains("p")) {
                t.p = exact_value(j.at("p"));
            }
            for (const auto &row : j.at("rows")) {
                exact_trace_row r;
                r.lambda = exact_value(row.at("lambda"));
                for (const auto &x : row.at("v")) {
                    r.v.push_back(exact_value(x));
                }
                t.rows.push_back(std::move(r));
            }
            const auto red = fredholm_reduce(t);
            const std::size_t dense_kernel = dim - rank(qmatrix::identity(dim) - to_matrix(t));
            o.outputs["split"] = red.split;
            o.outputs["tail_sum"] = rational_json(red.tail_sum);
            o.outputs["kernel_dim"] = red.kernel_dim;
            o.outputs["cokernel_dim"] = red.cokernel_dim;
            o.outputs["index"] = static_cast<long>(red.kernel_dim) - static_cast<long>(red.cokernel_dim);
            o.outputs["dense_kernel_dim"] = dense_kernel;
            o.outputs["match"] = dense_kernel == red.kernel_dim;
            o.code = dense_kernel == red.kernel_dim ? exit_ok : exit_mismatch;
        } else {
            trace_class_decomposition t;
            t.dim = dim;
            if (j.contains("p")) {
                t.p = float_value(j.at("p"));
            }
            for (const auto &row : j.at("rows")) {
                trace_row r;
                r.lambda = float_value(row.at("lambda"));
                for (const auto &x : row.at("v")) {
                    r.v.push_back(float_value(x));
                }
                t.rows.push_back(std::move(r));
            }
            const auto red = fredholm_reduce(t, tol);
            const matrix full = matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim))
                                - to_matrix(t);
            const std::size_t dense_kernel = dim - float_rank(full, tol);
            o.outputs["split"] = red.split;
            o.outputs["tail_sum"] = red.tail_sum;
            o.outputs["neumann_depth"] = red.neumann_depth;
            o.outputs["neumann_error"] = red.neumann_error;
            o.outputs["kernel_dim"] = red.kernel_dim;
            o.outputs["cokernel_dim"] = red.cokernel_dim;
            o.outputs["index"] = static_cast<long>(red.kernel_dim) - static_cast<long>(red.cokernel_dim);
            o.outputs["dense_kernel_dim"] = dense_kernel;
            o.outputs["match"] = dense_kernel == red.kernel_dim;
            o.code = dense_kernel == red.kernel_dim ? exit_ok : exit_mismatch;
        }
    } catch (const json::exception &e) {
        throw input_error(input + ": " + e.what());
    }
    return o;
}

outcome cmd_schatten(const std::string &input, double p)
{
    outcome o;
    o.mode = "float";
    o.inputs["input"] = input;
    o.inputs["p"] = p;
    matrix a;
    try {
        a = read_matrix(read_json(input));
    } catch (const json::exception &e) {
        throw input_error(input + ": " + e.what());
    }
    if (!(p > 0)) {
        throw input_error("--p must be positive");
    }
    const auto sv = singular_values(a);
    o.outputs["sigma"] = sv.sigma;
    o.outputs["schatten_sum"] = sv.schatten(p);
    o.outputs["orthogonality_residual"] = sv.orthogonality_residual;
    o.outputs["sweeps"] = sv.sweeps;
    return o;
}

outcome cmd_spectrum(const std::string &input, bool residual)
{
    outcome o;
    o.mode = "float";
    o.inputs["input"] = input;
    matrix a;
    try {
        a = read_matrix(read_json(input));
    } catch (const json::exception &e) {
        throw input_error(input + ": " + e.what());
    }
    const auto sp = spectrum_finite(a, residual);
    json ev = json::array();
    for (const auto &z : sp.eigenvalues) {
        ev.push_back({z.real(), z.imag()});
    }
    o.outputs["eigenvalues"] = ev;
    if (residual) {
        o.outputs["residual"] = sp.residual;
    }
    return o;
}

// ------------------------------------------------------------------ hochschild

outcome cmd_hh(unsigned n, unsigned deg, bool check)
{
    if (n < 1 || deg < 1) {
        throw input_error("--vars and --deg must be positive");
    }
    outcome o;
    o.inputs["vars"] = n;
    o.inputs["deg"] = deg;
    o.inputs["check"] = check;
    if (check) {
        const auto acyc = resolution_acyclicity_check(n, deg);
        const auto r = hkr_check(n, deg);
        o.outputs["dims"] = r.table.dims;
        o.outputs["d_squared_zero"] = r.table.d_squared_zero;
        o.outputs["euler_consistent"] = r.table.euler_consistent;
        json mism = json::array();
        for (const auto &m : r.mismatches) {
            mism.push_back({{"i", m.i}, {"m", m.m}, {"computed", m.computed}, {"expected", m.expected}});
        }
        o.outputs["acyclicity"] = {{"d_squared_zero", acyc.d_squared_zero},
                                   {"acyclic", acyc.acyclic},
                                   {"h0_matches", acyc.h0_matches},
                                   {"euler_consistent", acyc.euler_consistent},
                                   {"passed", acyc.passed()}};
        o.outputs["hkr"] = {{"passed", r.passed}, {"mismatches", mism}};
        o.code = r.passed && acyc.passed() ? exit_ok : exit_mismatch;
    } else {
        const auto t = hochschild_homology(n, deg);
        o.outputs["dims"] = t.dims;
        o.outputs["d_squared_zero"] = t.d_squared_zero;
        o.outputs["euler_consistent"] = t.euler_consistent;
        o.code = t.d_squared_zero ? exit_ok : exit_mismatch;
    }
    return o;
}

// ---------------------------------------------------------------------- locale

json trace_json(const derivation_trace &t)
{
    json lines = json::array();
    std::istringstream in(t.to_string());
    for (std::string line; std::getline(in, line);) {
        if (!line.empty()) {
            lines.push_back(line);
        }
    }
    return lines;
}

outcome cmd_locale_prove(const std::string &lhs_text, const std::string &rhs_text, unsigned depth)
{
    outcome o;
    o.inputs["lhs"] = lhs_text;
    o.inputs["rhs"] = rhs_text;
    o.inputs["depth"] = depth;
    const auto lhs = parse_subset(lhs_text);
    const auto rhs = parse_subset(rhs_text);
    const auto d = decide_containment(lhs, rhs, depth);
    o.outputs["verdict"] = verdict_name(d.result);
    o.outputs["rounds"] = d.rounds;
    o.outputs["depth_capped"] = d.depth_capped;
    o.outputs["trace"] = trace_json(d.trace);
    if (d.result == verdict::unknown) {
        o.code = exit_mismatch;
        return o;
    }
    const auto replay = replay_containment(lhs, rhs, d.trace);
    o.outputs["replay"] = {{"valid", replay.valid}, {"message", replay.message}};
    o.code = replay.valid ? exit_ok : exit_mismatch;
    return o;
}

outcome cmd_locale_empty(const std::string &text, unsigned depth)
{
    outcome o;
    o.inputs["expr"] = text;
    o.inputs["depth"] = depth;
    const auto e = parse_subset(text);
    const auto d = decide_empty(e, depth);
    o.outputs["verdict"] = verdict_name(d.result);
    o.outputs["rounds"] = d.rounds;
    o.outputs["depth_capped"] = d.depth_capped;
    o.outputs["trace"] = trace_json(d.trace);
    if (d.result == verdict::unknown) {
        o.code = exit_mismatch;
        return o;
    }
    const auto replay = replay_empty(e, d.trace);
    o.outputs["replay"] = {{"valid", replay.valid}, {"message", replay.message}};
    o.code = replay.valid ? exit_ok : exit_mismatch;
    return o;
}

coh_class slice(const coh_class &c, const ring_ptr &ring, std::size_t offset)
{
    std::map<exponent, rational> out;
    const std::size_t n = ring->ngens();
    for (const auto &[e, q] : c.coeffs()) {
        bool inside = true;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] != 0 && (i < offset || i >= offset + n)) {
                inside = false;
            }
        }
        if (inside) {
            out[exponent(e.begin() + static_cast<std::ptrdiff_t>(offset),
                         e.begin() + static_cast<std::ptrdiff_t>(offset + n))] += q;
        }
    }
    return coh_class(ring, out);
}

long integer_of(const rational &q, const char *what)
{
    if (q.get_den() != 1 || !q.get_num().fits_slong_p()) {
        throw input_error(std::string(what) + " is not an integer: " + to_string(q));
    }
    return q.get_num().get_si();
}

bundle_spec push_line(const supported_map &f, const coh_class &root)
{
    if (!root.is_homogeneous(1)) {
        throw input_error("Chern roots must have degree 1");
    }
    const auto &target = f.target->ring;
    switch (f.shape) {
    case supported_map::kind::identity:
        return line_bundle(root);
    case supported_map::kind::first_projection:
    case supported_map::kind::second_projection: {
        const bool first = f.shape == supported_map::kind::first_projection;
        const auto &x = f.source->parts[0];
        const auto &other = f.source->parts[first ? 1 : 0];
        const std::size_t target_offset = first ? 0 : x->ring->ngens();
        const std::size_t other_offset = first ? x->ring->ngens() : 0;
        const auto alpha = slice(root, target, target_offset);
        const auto beta = slice(root, other->ring, other_offset);
        const long chi = integer_of(hrr(*other, line_bundle(beta)), "fibre Euler characteristic");
        bundle_spec out = trivial_bundle(target, 0);
        const auto piece = line_bundle(alpha);
        for (long i = 0; i < std::labs(chi); ++i) {
            out = chi > 0 ? direct_sum(out, piece) : difference(out, piece);
        }
        return out;
    }
    case supported_map::kind::bundle_projection: {
        const std::size_t nb = target->ngens();
        exponent xi(nb + 1, 0);
        xi[nb] = 1;
        const long m = integer_of(root.coeff(xi), "fibre degree");
        const auto beta = slice(root, target, 0);
        const auto &v = f.source->base_bundle.at(0);
        if (m >= 0) {
            return tensor(sym_power(dual(v), static_cast<unsigned>(m)), line_bundle(beta));
        }
        if (m > -v.rank()) {
            return trivial_bundle(target, 0);
        }
        throw input_error("no catalog pushforward for O(" + std::to_string(m) + "); pass --pushed");
    }
    }
    throw input_error("unsupported map");
}

} // namespace

bundle_spec catalog_pushforward(const supported_map &f, const bundle_spec &v)
{
    if (v.ring != f.source->ring) {
        throw input_error("the bundle does not live on " + f.source->name);
    }
    bundle_spec out = trivial_bundle(f.target->ring, 0);
    for (const auto &r : v.plus_roots) {
        out = direct_sum(out, push_line(f, r));
    }
    for (const auto &r : v.minus_roots) {
        out = difference(out, push_line(f, r));
    }
    return out;
}

std::string instantiate_template(const std::string &text, long a, long b)
{
    std::string out;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        const bool alone = (i == 0 || !std::isalnum(static_cast<unsigned char>(text[i - 1])))
                           && (i + 1 == text.size() || !std::isalnum(static_cast<unsigned char>(text[i + 1])));
        if (alone && c == 'a') {
            out += std::to_string(a);
        } else if (alone && c == 'b') {
            out += std::to_string(b);
        } else {
            out += c;
        }
    }
    return out;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"holkit: verifiers for truncated series, operators, characteristic classes, Hochschild "
                 "homology and the closed-subset calculus",
                 "holkit"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::string output;
    auto common = [&](CLI::App *sub) {
        sub->add_option("--seed", seed, "Random seed, recorded in the report");
        sub->add_option("-o,--output", output, "Write the JSON report here instead of stdout");
    };

    std::string space_text, bundle_text;
    auto *hrr_cmd = app.add_subcommand("hrr", "chi(X, V) by Hirzebruch-Riemann-Roch");
    hrr_cmd->add_option("--space", space_text, "e.g. P2, P1xP1, P(O+O(1))/P1")->required();
    hrr_cmd->add_option("--bundle", bundle_text, "e.g. O(3), T, 2*O(1)-O")->required();
    common(hrr_cmd);

    std::string map_text, pushed_text;
    std::optional<long> ga, gb;
    auto *grr_cmd = app.add_subcommand("grr", "Grothendieck-Riemann-Roch on a catalog map");
    grr_cmd->add_option("--map", map_text, "e.g. P1xP1->P1")->required();
    grr_cmd->add_option("--bundle", bundle_text, "bundle on the source; a and b are template letters")->required();
    grr_cmd->add_option("-a", ga, "value substituted for a");
    grr_cmd->add_option("-b", gb, "value substituted for b");
    grr_cmd->add_option("--pushed", pushed_text, "f_* V on the target (default: catalog pushforward)");
    common(grr_cmd);

    unsigned table_n = 1;
    long kmin = -6, kmax = 6;
    auto *chi_cmd = app.add_subcommand("chi-table", "hrr(P^n, O(k)) against the monomial-count oracle");
    chi_cmd->add_option("--n", table_n, "projective dimension")->required();
    chi_cmd->add_option("--kmin", kmin, "smallest twist")->capture_default_str();
    chi_cmd->add_option("--kmax", kmax, "largest twist")->capture_default_str();
    common(chi_cmd);

    std::string input, divisor;
    unsigned order = 0;
    std::optional<unsigned> trunc;
    auto *w_cmd = app.add_subcommand("weierstrass", "Weierstrass preparation f = g u");
    w_cmd->add_option("--input", input, "series JSON")->required();
    w_cmd->add_option("--order", order, "working order M in (X2..Xn)")->required()->check(CLI::PositiveNumber);
    w_cmd->add_option("--trunc", trunc, "total-degree truncation (default: file, then HOLKIT_TRUNC, then 8)");
    common(w_cmd);

    auto *d_cmd = app.add_subcommand("divide", "Weierstrass division f = q g + r");
    d_cmd->add_option("--input", input, "series JSON for f")->required();
    d_cmd->add_option("--divisor", divisor, "series JSON for the monic divisor g")->required();
    d_cmd->add_option("--order", order, "working order M in (X2..Xn)")->required()->check(CLI::PositiveNumber);
    d_cmd->add_option("--trunc", trunc, "total-degree truncation (default: file, then HOLKIT_TRUNC, then 8)");
    common(d_cmd);

    std::string mode = "float";
    double tol = 1e-8;
    auto *f_cmd = app.add_subcommand("fredholm", "Fredholm reduction of 1 - f to a finite Schur complement");
    f_cmd->add_option("--input", input, "trace-class decomposition JSON")->required();
    f_cmd->add_option("--mode", mode, "exact or float")
        ->check(CLI::IsMember({"exact", "float"}))
        ->capture_default_str();
    f_cmd->add_option("--tol", tol, "rank threshold in float mode")->capture_default_str();
    common(f_cmd);

    double p = 1;
    auto *s_cmd = app.add_subcommand("schatten", "singular values and the Schatten p-sum");
    s_cmd->add_option("--input", input, "matrix JSON")->required();
    s_cmd->add_option("--p", p, "exponent")->capture_default_str();
    common(s_cmd);

    bool residual = false;
    auto *sp_cmd = app.add_subcommand("spectrum", "eigenvalues of a finite matrix");
    sp_cmd->add_option("--input", input, "matrix JSON")->required();
    sp_cmd->add_flag("--residual", residual, "also report max |A v - lambda v|");
    common(sp_cmd);

    unsigned vars = 1, deg = 1;
    bool check = false;
    auto *hh_cmd = app.add_subcommand("hh", "Hochschild homology of Q[x1..xn] via the Koszul resolution");
    hh_cmd->add_option("--vars", vars, "number of variables")->required();
    hh_cmd->add_option("--deg", deg, "largest internal degree")->required();
    hh_cmd->add_flag("--check", check, "compare with Omega and check acyclicity");
    common(hh_cmd);

    std::string lhs, rhs, expr;
    unsigned depth = default_locale_depth;
    auto *loc_cmd = app.add_subcommand("locale", "closed-subset calculus");
    loc_cmd->require_subcommand(1);
    auto *prove_cmd = loc_cmd->add_subcommand("prove", "decide lhs <= rhs");
    prove_cmd->add_option("--lhs", lhs, "e.g. \"|f|<=1 & |g|<=1\"")->required();
    prove_cmd->add_option("--rhs", rhs, "e.g. \"|f*g|<=1\"")->required();
    prove_cmd->add_option("--depth", depth, "saturation rounds")->capture_default_str();
    common(prove_cmd);
    auto *empty_cmd = loc_cmd->add_subcommand("empty", "decide whether a subset is empty");
    empty_cmd->add_option("--expr", expr, "e.g. \"|f|<=1/2 & |f|>=1\"")->required();
    empty_cmd->add_option("--depth", depth, "saturation rounds")->capture_default_str();
    common(empty_cmd);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().back()->help());
        return exit_ok;
    } catch (const CLI::ParseError &e) {
        err << "holkit: " << e.what() << "\n";
        err << app.help();
        return exit_input;
    }

    outcome o;
    std::string command;
    try {
        if (hrr_cmd->parsed()) {
            command = "hrr";
            o = cmd_hrr(space_text, bundle_text);
        } else if (grr_cmd->parsed()) {
            command = "grr";
            o = cmd_grr(map_text, bundle_text, ga, gb, pushed_text);
        } else if (chi_cmd->parsed()) {
            command = "chi-table";
            o = cmd_chi_table(table_n, kmin, kmax);
        } else if (w_cmd->parsed()) {
            command = "weierstrass";
            o = cmd_weierstrass(input, order, trunc, seed);
        } else if (d_cmd->parsed()) {
            command = "divide";
            o = cmd_divide(input, divisor, order, trunc);
        } else if (f_cmd->parsed()) {
            command = "fredholm";
            o = cmd_fredholm(input, mode, tol);
        } else if (s_cmd->parsed()) {
            command = "schatten";
            o = cmd_schatten(input, p);
        } else if (sp_cmd->parsed()) {
            command = "spectrum";
            o = cmd_spectrum(input, residual);
        } else if (hh_cmd->parsed()) {
            command = "hh";
            o = cmd_hh(vars, deg, check);
        } else if (prove_cmd->parsed()) {
            command = "locale prove";
            if (depth < 1) {
                throw input_error("--depth must be at least 1");
            }
            o = cmd_locale_prove(lhs, rhs, depth);
        } else if (empty_cmd->parsed()) {
            command = "locale empty";
            if (depth < 1) {
                throw input_error("--depth must be at least 1");
            }
            o = cmd_locale_empty(expr, depth);
        }
    } catch (const syntax_error &e) {
        err << "holkit: syntax error at position " << e.position() << ": " << e.what() << "\n";
        return exit_input;
    } catch (const retry_cap_error &e) {
        err << "holkit: " << e.what() << " (last seed " << e.last_seed() << ")\n";
        return exit_input;
    } catch (const error &e) {
        err << "holkit: " << e.what() << "\n";
        return exit_input;
    } catch (const nlohmann::json::exception &e) {
        err << "holkit: " << e.what() << "\n";
        return exit_input;
    }

    json report;
    report["schema_version"] = schema_version;
    report["command"] = command;
    report["inputs"] = o.inputs;
    report["outputs"] = o.outputs;
    report["provenance"] = {
        {"seed", seed},
        {"mode", o.mode},
        {"versions",
         {{"holkit", HOLKIT_VERSION},
          {"gmp", gmp_version},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "."
                        + std::to_string(EIGEN_MINOR_VERSION)}}}};
    report["exit_code"] = o.code;

    const std::string text = report.dump(2) + "\n";
    if (output.empty()) {
        out << text;
    } else {
        std::ofstream file(output, std::ios::binary);
        if (!file) {
            err << "holkit: cannot write '" << output << "'\n";
            return exit_input;
        }
        file << text;
    }
    return o.code;
}

} // namespace holkit::cli
