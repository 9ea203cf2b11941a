#pragma once

#include <stdexcept>
#include <string>

namespace invspec {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of an operation (|x| > 1, p outside [0,1], ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Family parameter outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// g = 1/gbar evaluated where gbar vanishes.
class SingularityError : public Error {
 public:
  using Error::Error;
};

// An improper integral or supremum that does not converge.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// |gbar'| > 2 somewhere: no surface of revolution realizes the metric.
class EmbeddabilityError : public Error {
 public:
  using Error::Error;
};

// Profile curve does not enclose area 4*pi.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

class ParityError : public Error {
 public:
  using Error::Error;
};

class MeshError : public Error {
 public:
  using Error::Error;
};

// Iterative solver failed; the message carries iteration diagnostics.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Merged spectrum could be polluted by modes above m_max.
class TailSafetyError : public Error {
 public:
  using Error::Error;
};

// Malformed input file or command-line argument.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace invspec
