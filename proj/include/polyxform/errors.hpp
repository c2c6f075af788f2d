#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace polyxform {

// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition was violated by the caller (bad argument, mismatched moduli).
class UsageError : public Error {
 public:
  using Error::Error;
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

// Raised by elimination when the matrix has no inverse. The determinant is
// always zero, but it is carried so callers can report it.
class Singular : public Error {
 public:
  explicit Singular(std::uint64_t determinant = 0)
      : Error("matrix is singular (determinant " + std::to_string(determinant) + ")"),
        determinant_(determinant) {}
  std::uint64_t determinant() const noexcept { return determinant_; }

 private:
  std::uint64_t determinant_;
};

class NoSuchRoot : public Error {
 public:
  using Error::Error;
};

// Cubing is a bijection modulo p when p is not 1 mod 3.
class NoncubeImpossible : public Error {
 public:
  using Error::Error;
};

class PrimeSupplyExhausted : public Error {
 public:
  PrimeSupplyExhausted(std::string reached, std::string target)
      : Error("prime supply exhausted: modulus product " + reached + " does not exceed " + target),
        reached_(std::move(reached)),
        target_(std::move(target)) {}
  const std::string& reached() const noexcept { return reached_; }
  const std::string& target() const noexcept { return target_; }

 private:
  std::string reached_;
  std::string target_;
};

// A value bound could not be certified; stage names the pipeline step.
class PlanNotCertified : public Error {
 public:
  PlanNotCertified(std::string stage, const std::string& detail)
      : Error("plan not certified at stage '" + stage + "': " + detail), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

class OverflowRisk : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent serialized document.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace polyxform
