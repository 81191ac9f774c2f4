#pragma once

#include <stdexcept>
#include <string>

namespace treecs {

/// A precondition of an operation was violated (pred of the root, rank query
/// on the full tree, node outside its tree, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed textual or JSON input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace treecs
