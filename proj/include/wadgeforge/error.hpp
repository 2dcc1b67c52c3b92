#pragma once

#include <stdexcept>
#include <string>

namespace wadgeforge {

/// Base class of every domain error raised by the library. The CLI maps
/// these to exit status 2.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

class BaseMismatch : public Error {
public:
  BaseMismatch() : Error("ordinal base mismatch") {}
};

class PreconditionError : public Error {
public:
  using Error::Error;
};

class UnknownDegree : public Error {
public:
  using Error::Error;
};

/// Raised by the Omega constructor when an exponent is a limit of countable
/// cofinality that is not an epsilon atom.
class CaseHError : public Error {
public:
  using Error::Error;
};

class AlphabetError : public Error {
public:
  using Error::Error;
};

class AutomatonError : public Error {
public:
  using Error::Error;
};

} // namespace wadgeforge
