#ifndef BNQN_ERROR_HPP
#define BNQN_ERROR_HPP

#include <stdexcept>
#include <string>

namespace bnqn {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input to a public constructor or operation (bad config, NaN, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// |p'(z)| fell below the pole tolerance: z is an exceptional point of a Newton map.
class DerivativeVanishes : public Error {
 public:
  using Error::Error;
};

/// Evaluation hit a pole of a rational map.
class PoleHit : public Error {
 public:
  using Error::Error;
};

/// Iterative procedure exhausted its iteration cap.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// Every candidate delta was rejected. Only reachable with non-distinct deltas.
class NoAdmissibleDelta : public Error {
 public:
  using Error::Error;
};

/// Backtracking shrank the step below 1e-300: the direction was not a descent direction.
class LineSearchUnderflow : public Error {
 public:
  using Error::Error;
};

}  // namespace bnqn

#endif  // BNQN_ERROR_HPP
