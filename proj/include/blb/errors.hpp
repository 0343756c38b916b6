#pragma once

#include <stdexcept>
#include <string>

namespace blb {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Bad argument: non-finite entries, dimension mismatch, out-of-range scalar.
class InvalidInput : public Error {
public:
  using Error::Error;
};

/// A map required to be surjective onto its codomain is not.
class NotSurjective : public Error {
public:
  using Error::Error;
};

/// The full-rank hypothesis rk_alpha(map) == codomain dimension fails.
class RankDeficient : public Error {
public:
  using Error::Error;
};

/// Exact search paths are only available up to a small ambient dimension.
class UnsupportedDimension : public Error {
public:
  using Error::Error;
};

/// Input file could not be parsed or failed schema validation.
class ParseError : public Error {
public:
  using Error::Error;
};

}  // namespace blb
