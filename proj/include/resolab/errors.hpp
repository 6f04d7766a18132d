#ifndef RESOLAB_ERRORS_HPP
#define RESOLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace resolab {

// Base for every recoverable error the library raises. Internal invariant
// violations are reported as std::logic_error instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A label, point or id that does not belong to the object it was used with.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An exact or exhaustive routine was asked for an instance beyond its guard.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Index split / m_max too small for the requested construction.
class SizingError : public Error {
 public:
  using Error::Error;
};

// A structure handed in (mosaic, certificate) violates its own invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed family or config JSON; the message starts with a JSON pointer.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace resolab

#endif  // RESOLAB_ERRORS_HPP
