#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace lgpoly {

inline uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m);

// Inverse of a modulo m; requires gcd(a, m) = 1.
uint64_t inv_mod(uint64_t a, uint64_t m);

// Deterministic Miller-Rabin, valid for the full 64-bit range.
bool is_prime_u64(uint64_t n);
bool is_prime(const mpz_class& n);

std::vector<uint64_t> primes_up_to(uint64_t bound);

struct PrimePower {
  uint64_t prime;
  unsigned exponent;
};

struct TrialFactorization {
  std::vector<PrimePower> factors;
  uint64_t cofactor;  // 1 when the factorization is complete
};

// Trial division by all primes <= bound; whatever remains is the cofactor.
TrialFactorization trial_factor(uint64_t n, uint64_t bound);

// Complete factorization: trial division, then Pollard-Brent rho.
std::vector<PrimePower> factor_u64(uint64_t n);

struct MpzPrimePower {
  mpz_class prime;
  unsigned exponent;
};

// Complete factorization of |n|, n != 0. Throws BoundExceededError if the
// rho stage gives up (does not happen at desk scale).
std::vector<MpzPrimePower> factor(const mpz_class& n);

// Smallest prime factor of |n|, n with |n| >= 2.
mpz_class smallest_prime_factor(const mpz_class& n);

}  // namespace lgpoly
