#include <holkit/error.hpp>
#include <holkit/expr.hpp>
#include <holkit/series_io.hpp>

#include <cctype>

#include "json.hpp"

namespace holkit
{

namespace
{

// "x12" -> 12, anything else -> 0.
unsigned variable_index(const std::string &name)
{
    if (name.size() < 2 || (name[0] != 'x' && name[0] != 'X')) {
        return 0;
    }
    unsigned idx = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) {
            return 0;
        }
        idx = idx * 10 + static_cast<unsigned>(name[i] - '0');
        if (idx > 4096) {
            return 0;
        }
    }
    return idx;
}

rational rational_field(const nlohmann::json &j, const char *key)
{
    if (!j.contains(key)) {
        return 0;
    }
    const auto &v = j.at(key);
    if (v.is_string()) {
        return parse_rational(v.get<std::string>());
    }
    if (v.is_number_integer()) {
        return rational(mpz_class(std::to_string(v.get<long long>())));
    }
    throw input_error(std::string("field '") + key + "' must be a rational string or integer");
}

} // namespace

multi_series parse_series(std::string_view text, unsigned trunc, std::optional<unsigned> nvars)
{
    const sym_poly p = parse_polynomial(text);
    unsigned max_index = 1;
    for (const auto &name : p.symbols()) {
        const unsigned idx = variable_index(name);
        if (idx == 0) {
            throw syntax_error("unknown variable '" + name + "' (expected x1, x2, ...)", 0);
        }
        max_index = std::max(max_index, idx);
    }
    const unsigned n = nvars.value_or(max_index);
    if (max_index > n) {
        throw dimension_error("variable x" + std::to_string(max_index) + " exceeds nvars");
    }
    multi_series out(n, trunc);
    for (const auto &[m, c] : p.terms()) {
        exponent e(n, 0u);
        for (const auto &[name, k] : m) {
            e[variable_index(name) - 1] += k;
        }
        out.add_term(e, c);
    }
    return out;
}

std::string series_to_json(const multi_series &s)
{
    nlohmann::ordered_json j;
    j["nvars"] = s.nvars();
    j["trunc"] = s.trunc();
    auto terms = nlohmann::ordered_json::array();
    for (const auto &[e, c] : s.terms()) {
        nlohmann::ordered_json t;
        t["exp"] = e;
        t["re"] = to_string(c.re());
        t["im"] = to_string(c.im());
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j.dump();
}

multi_series series_from_json(std::string_view json_text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception &e) {
        throw input_error(std::string("malformed series JSON: ") + e.what());
    }
    try {
        if (!j.is_object() || !j.contains("trunc")) {
            throw input_error("series JSON needs an object with 'trunc'");
        }
        const auto trunc = j.at("trunc").get<unsigned>();
        if (j.contains("expr")) {
            std::optional<unsigned> nvars;
            if (j.contains("nvars")) {
                nvars = j.at("nvars").get<unsigned>();
            }
            return parse_series(j.at("expr").get<std::string>(), trunc, nvars);
        }
        if (!j.contains("nvars") || !j.contains("terms") || !j.at("terms").is_array()) {
            throw input_error("series JSON needs 'nvars' and a 'terms' array");
        }
        const auto nvars = j.at("nvars").get<unsigned>();
        multi_series out(nvars, trunc);
        for (const auto &t : j.at("terms")) {
            auto e = t.at("exp").get<exponent>();
            if (e.size() != nvars) {
                throw input_error("exponent length does not match nvars");
            }
            out.add_term(e, gaussian(rational_field(t, "re"), rational_field(t, "im")));
        }
        return out;
    } catch (const nlohmann::json::exception &e) {
        throw input_error(std::string("malformed series JSON: ") + e.what());
    }
}

} // namespace holkit
