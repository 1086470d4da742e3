#ifndef QLAB_ERRORS_HPP
#define QLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qlab {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A Fock-truncated quantity was requested beyond its reliable range.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// A contraction that must be real came out with a large imaginary part.
class HermiticityError : public Error {
 public:
  using Error::Error;
};

/// A state failed its normalization contract at construction.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// Witness parameters produce the zero polynomial (A = B = 0).
class DegenerateWitness : public Error {
 public:
  using Error::Error;
};

/// The null space of the zero-set evaluation matrix is trivial.
class EmptyFamily : public Error {
 public:
  using Error::Error;
};

/// sos decomposition requested for a polynomial of odd degree.
class OddDegree : public Error {
 public:
  using Error::Error;
};

/// No detecting witness exists at the requested order.
class NotDetected : public Error {
 public:
  using Error::Error;
};

/// Hierarchy-state construction exhausted its retry budget.
class ConstructionFailed : public Error {
 public:
  using Error::Error;
};

/// Sampled curve points lie on a lower-order variety (rank check failed).
class RankDeficient : public Error {
 public:
  using Error::Error;
};

}  // namespace qlab

#endif
