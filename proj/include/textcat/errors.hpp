#pragma once

#include <stdexcept>
#include <string>

namespace textcat {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text (bad line/row carries its 1-based number in the message).
struct ParseError : Error {
  using Error::Error;
};

// File system trouble; message names the offending path.
struct IoError : Error {
  using Error::Error;
};

// Value outside the operation's domain (bad label, zero df, empty corpus, ...).
struct DomainError : Error {
  using Error::Error;
};

// Mismatched sizes between things that must line up (rows vs labels, dims).
struct ArityError : Error {
  using Error::Error;
};

}  // namespace textcat
