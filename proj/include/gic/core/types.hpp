#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace gic {

using Vertex = std::uint32_t;

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Every failure the library reports is one of these. The CLI maps each
// category onto an exit code (see cli.hpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (ragged rows, non-numeric tokens, bad simplex lines).
class FormatError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// A simplex above the complex's dimension cap, or a point cloud in the wrong
// ambient dimension for the requested operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A vertex map sends some domain simplex outside the codomain complex.
class SimplicialityError : public Error {
 public:
  using Error::Error;
};

class ContractError : public Error {
 public:
  using Error::Error;
};

class DegeneracyError : public Error {
 public:
  using Error::Error;
};

}  // namespace gic
