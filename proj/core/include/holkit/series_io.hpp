#ifndef HOLKIT_SERIES_IO_HPP
#define HOLKIT_SERIES_IO_HPP

#include <optional>
#include <string>
#include <string_view>

#include <holkit/series.hpp>

namespace holkit
{

// Human syntax over the variables x1..xn, e.g. "1 - 2/3*x1^2*x2 + (1+1i)*x2^3".
// When nvars is omitted it is the largest variable index that occurs (at
// least 1).
multi_series parse_series(std::string_view text, unsigned trunc, std::optional<unsigned> nvars = std::nullopt);

// {"nvars":n,"trunc":N,"terms":[{"exp":[..],"re":"p/q","im":"p/q"},..]},
// terms ordered by exponent. Rationals are strings, integers written "p".
std::string series_to_json(const multi_series &s);

// Accepts the sparse form above, or {"nvars":n,"trunc":N,"expr":"..."}.
// "nvars" may be omitted in the expr form. Throws input_error / syntax_error.
multi_series series_from_json(std::string_view json_text);

} // namespace holkit

#endif
