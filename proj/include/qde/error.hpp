#ifndef QDE_ERROR_HPP
#define QDE_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qde {

// Base of every error thrown by the library. The CLI maps these to exit 1.
class error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Malformed input text; carries the 0-based column of the offending token.
class parse_error : public error
{
    std::size_t pos_;

  public:
    parse_error(std::string const & what, std::size_t pos)
        : error(what + " at position " + std::to_string(pos)), pos_(pos)
    {
    }

    std::size_t position() const noexcept { return pos_; }
};

// Input that is well-formed but outside the mathematical domain
// (rational value, mismatched fields, dependent generators, ...).
class domain_error : public error
{
  public:
    using error::error;
};

// A discriminant above the configured desk-scale limit.
class bound_error : public error
{
  public:
    using error::error;
};

// An internal consistency check failed. Always a bug in this library.
class invariant_violation : public error
{
  public:
    using error::error;
};

} // namespace qde

#endif // QDE_ERROR_HPP
