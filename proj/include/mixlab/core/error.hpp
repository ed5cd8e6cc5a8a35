#pragma once

#include <stdexcept>
#include <string>

namespace mixlab {

// All library failures derive from Error and carry the name of the module
// that raised them, so the CLI can print "module: message".
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& what)
      : std::runtime_error(module + ": " + what), module_(std::move(module)) {}
  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

// Precondition or parameter-range violation.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Parameter sits exactly on a regime boundary where no exponent is assigned.
class BoundaryError : public Error {
 public:
  using Error::Error;
};

// Localization scale below the admissible range of a bound.
class ScaleError : public Error {
 public:
  using Error::Error;
};

// Iteration failed to converge, no root found, non-finite result, ...
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Malformed or schema-violating run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

namespace detail {
inline void require(bool ok, const char* module, const std::string& msg) {
  if (!ok) throw InvalidArgument(module, msg);
}
}  // namespace detail

}  // namespace mixlab
