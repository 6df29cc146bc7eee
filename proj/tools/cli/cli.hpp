#ifndef HOLKIT_TOOLS_CLI_HPP
#define HOLKIT_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <holkit/charclasses.hpp>

namespace holkit::cli
{

inline constexpr int exit_ok = 0;
inline constexpr int exit_mismatch = 1;
inline constexpr int exit_input = 2;

inline constexpr int schema_version = 1;

// args excludes the program name. The JSON report goes to out (or to the
// --output file), diagnostics and usage text to err.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

// K-theory pushforward for the catalog maps: identity, product projections
// of sums of line bundles (the other factor contributes chi copies), and
// P(V) -> X on O(m) (x) pi^*L, which pushes to Sym^m(V^dual) (x) L for m >= 0
// and to zero for -rank(V) < m < 0. Anything else is an input_error.
bundle_spec catalog_pushforward(const supported_map &f, const bundle_spec &v);

// Replaces the standalone letters a and b in a bundle template.
std::string instantiate_template(const std::string &text, long a, long b);

} // namespace holkit::cli

#endif
