#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace subprod {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-contract input (bad dimensions, inadmissible
// parameters, unparsable text). The CLI maps this to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

// A computation could not be carried out (non-finite values, an
// eigenvalue below tolerance where a PSD matrix was required). Exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : InputError(msg + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace subprod
