#ifndef TLFE_ERROR_HPP
#define TLFE_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tlfe {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: formula text, map text, DFA JSON, CLI arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  /// `position` is a byte offset into the source, or npos for end of input.
  ParseError(const std::string& message, std::size_t position);

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A configured safety bound was exceeded (automaton size, rejection
/// sampling attempts, episode steps).
class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace tlfe

#endif  // TLFE_ERROR_HPP
