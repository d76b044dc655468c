#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace permres {

// Bad user input: malformed text, out-of-range parameters, violated preconditions.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax error at a known character offset (0-based) or line (1-based).
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " at position " + std::to_string(position + 1)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A configured cap (degree, index, node count, wall time) was hit.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace permres
