#ifndef MANGASEG_ERROR_HPP_
#define MANGASEG_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace mangaseg
{

/// Raised for malformed inputs: out-of-domain values, mismatched dimensions,
/// undecodable mask colors.
class InputError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Unparseable or unsupported font file.
class FontError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Unusable run configuration (e.g. no font can draw any pool codepoint).
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Invalid command usage (empty report set, empty glob).
class UsageError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

namespace detail
{

template <typename A, typename B>
void require_same_size(const A& a, const B& b, const char* what)
{
  if (a.width() != b.width() || a.height() != b.height()) {
    throw InputError(std::string(what) + ": dimension mismatch (" +
                     std::to_string(a.width()) + "x" + std::to_string(a.height()) + " vs " +
                     std::to_string(b.width()) + "x" + std::to_string(b.height()) + ")");
  }
}

} // namespace detail
} // namespace mangaseg

#endif
