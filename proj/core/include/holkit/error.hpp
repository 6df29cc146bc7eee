#ifndef HOLKIT_ERROR_HPP
#define HOLKIT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace holkit
{

// Every failure raised by the library derives from holkit::error so callers
// (the CLI in particular) can separate input problems from programming bugs.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

#define HOLKIT_DEFINE_ERROR(name)                                                                                      \
    class name : public error                                                                                          \
    {                                                                                                                  \
    public:                                                                                                            \
        using error::error;                                                                                            \
    }

HOLKIT_DEFINE_ERROR(dimension_error);
HOLKIT_DEFINE_ERROR(non_unit_error);
HOLKIT_DEFINE_ERROR(divergence_error);
HOLKIT_DEFINE_ERROR(parameter_error);
HOLKIT_DEFINE_ERROR(regularity_error);
HOLKIT_DEFINE_ERROR(divisor_error);
HOLKIT_DEFINE_ERROR(contraction_error);
HOLKIT_DEFINE_ERROR(reduction_error);
HOLKIT_DEFINE_ERROR(numeric_error);
HOLKIT_DEFINE_ERROR(domain_error);
HOLKIT_DEFINE_ERROR(ring_mismatch_error);
HOLKIT_DEFINE_ERROR(catalog_error);
HOLKIT_DEFINE_ERROR(input_error);

#undef HOLKIT_DEFINE_ERROR

// Raised when a random coordinate change never produced an X1-regular series.
class retry_cap_error : public error
{
public:
    retry_cap_error(const std::string &what, unsigned long long last_seed)
        : error(what), m_last_seed(last_seed)
    {
    }
    unsigned long long last_seed() const noexcept
    {
        return m_last_seed;
    }

private:
    unsigned long long m_last_seed;
};

class syntax_error : public error
{
public:
    syntax_error(const std::string &what, std::size_t position)
        : error(what + " at position " + std::to_string(position)), m_position(position)
    {
    }
    std::size_t position() const noexcept
    {
        return m_position;
    }

private:
    std::size_t m_position;
};

} // namespace holkit

#endif
