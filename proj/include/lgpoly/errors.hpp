#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace lgpoly {

// Malformed textual/JSON input.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A mathematical precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The two polynomials share a root mod p, so no rootless combination exists.
class CommonRootError : public PreconditionError {
 public:
  CommonRootError(uint64_t prime, uint64_t root)
      : PreconditionError("common root " + std::to_string(root) + " mod " +
                          std::to_string(prime)),
        prime_(prime),
        root_(root) {}
  uint64_t prime() const { return prime_; }
  uint64_t root() const { return root_; }

 private:
  uint64_t prime_;
  uint64_t root_;
};

// The rootless-combination construction degenerates at this prime.
class BadPrimeError : public std::runtime_error {
 public:
  BadPrimeError(uint64_t prime, const std::string& step)
      : std::runtime_error("construction fails at p=" + std::to_string(prime) +
                           ": " + step),
        prime_(prime),
        step_(step) {}
  uint64_t prime() const { return prime_; }
  const std::string& step() const { return step_; }

 private:
  uint64_t prime_;
  std::string step_;
};

// A rational is not supported by the declared prime set.
class NotSmoothError : public std::runtime_error {
 public:
  explicit NotSmoothError(mpz_class offending)
      : std::runtime_error("prime factor " + offending.get_str() +
                           " lies outside the support"),
        offending_(std::move(offending)) {}
  const mpz_class& offending_prime() const { return offending_; }

 private:
  mpz_class offending_;
};

// A configured bound (trial-division budget, enumeration threshold, search
// cap) was exhausted before the operation could complete.
class BoundExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lgpoly
