#pragma once

#include <stdexcept>
#include <string>

namespace tmhc {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: unreadable or malformed files, invalid arguments,
/// unresolved references. The CLI maps this to exit status 2.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace tmhc
