#include <doctest.h>

#include <random>

#include "lgpoly/arith.hpp"
#include "lgpoly/errors.hpp"

using namespace lgpoly;

TEST_CASE("is_prime_u64 agrees with trial division below 20000") {
  auto trial = [](uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  };
  for (uint64_t n = 0; n < 20000; ++n) CHECK(is_prime_u64(n) == trial(n));
}

TEST_CASE("primes_up_to matches is_prime_u64") {
  auto ps = primes_up_to(10000);
  CHECK(ps.size() == 1229);
  CHECK(ps.front() == 2);
  CHECK(ps.back() == 9973);
  for (uint64_t p : ps) CHECK(is_prime_u64(p));
}

TEST_CASE("pow_mod and inv_mod basics") {
  CHECK(pow_mod(2, 10, 1000) == 24);
  CHECK(pow_mod(7, 0, 13) == 1);
  for (uint64_t a = 1; a < 11; ++a) CHECK(mul_mod(inv_mod(a, 11), a, 11) == 1);
  CHECK_THROWS_AS(inv_mod(6, 9), PreconditionError);
}

TEST_CASE("factor_u64 reassembles the input") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 200; ++i) {
    uint64_t n = rng() % 1000000000ull + 2;
    uint64_t prod = 1;
    for (const auto& [p, e] : factor_u64(n)) {
      CHECK(is_prime_u64(p));
      for (unsigned j = 0; j < e; ++j) prod *= p;
    }
    CHECK(prod == n);
  }
  // semiprime beyond the trial-division range
  uint64_t a = 1000003, b = 1000033;
  auto fs = factor_u64(a * b);
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].prime == a);
  CHECK(fs[1].prime == b);
}

TEST_CASE("trial_factor reports composite cofactors") {
  auto tf = trial_factor(2 * 3 * 1000003ull * 1000033ull, 100);
  CHECK(tf.cofactor == 1000003ull * 1000033ull);
  auto complete = trial_factor(5040, 100);
  CHECK(complete.cofactor == 1);
}

TEST_CASE("mpz factorization handles big values") {
  mpz_class big("123456789012345678901234567890");
  mpz_class prod = 1;
  for (const auto& [p, e] : factor(big)) {
    CHECK(is_prime(p));
    for (unsigned j = 0; j < e; ++j) prod *= p;
  }
  CHECK(prod == big);
  CHECK(smallest_prime_factor(mpz_class(10)) == 2);
  CHECK(smallest_prime_factor(mpz_class(-35)) == 5);
}
