#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "lgpoly/arith.hpp"
#include "lgpoly/errors.hpp"

namespace lgpoly {

// The finite prime set S. Entries are validated: prime, strictly increasing,
// nonempty.
class Support {
 public:
  explicit Support(std::vector<uint64_t> primes);
  const std::vector<uint64_t>& primes() const { return primes_; }
  size_t size() const { return primes_.size(); }
  bool contains(uint64_t p) const;
  // index of p within the support; throws if absent
  size_t index_of(uint64_t p) const;
  bool operator==(const Support& rhs) const { return primes_ == rhs.primes_; }

 private:
  std::vector<uint64_t> primes_;
};

// An S-unit of Q in additive notation: value = sign * prod q^e_q over the
// support. The torsion subgroup is {+1, -1}, so t = 2.
class SUnit {
 public:
  SUnit(Support support, bool negative, std::vector<mpz_class> exponents);

  static SUnit identity(Support support);
  static SUnit minus_one(Support support);
  // the point [q] for a support prime q
  static SUnit generator(Support support, uint64_t q);

  const Support& support() const { return support_; }
  bool negative() const { return negative_; }
  const std::vector<mpz_class>& exponents() const { return exps_; }

  bool is_torsion() const;
  bool is_identity() const;

  // exact rational value; exponents must be modest
  mpq_class to_rational() const;
  std::string to_string() const;  // factored form, e.g. "-2^3*3^-1"

  bool operator==(const SUnit& rhs) const;

 private:
  Support support_;
  bool negative_;
  std::vector<mpz_class> exps_;
};

// Factors the reduced fraction num/den over the support. Throws NotSmoothError
// naming the smallest offending prime; zero is not a unit.
SUnit from_rational(const mpz_class& num, const mpz_class& den,
                    const Support& support);
SUnit from_rational(const std::string& text, const Support& support);

SUnit add(const SUnit& x, const SUnit& y);
SUnit neg(const SUnit& x);
SUnit scalar_mul(const mpz_class& k, const SUnit& x);

// A place v of good reduction: a prime p outside the support, p > 2, with
// the factorization of p - 1 attached (trial division; a prime cofactor is
// accepted, a composite one raises BoundExceededError).
struct ReductionContext {
  ReductionContext(uint64_t p, const Support& support,
                   uint64_t trial_division_bound = 1000000);
  uint64_t p;
  Support support;
  std::vector<PrimePower> group_order_factors;  // factorization of p - 1
};

// r_v: the value of x in F_p^*.
uint64_t reduce_mod(const SUnit& x, const ReductionContext& ctx);

// multiplicative order of reduce_mod(x) in F_p^*
uint64_t order_mod(const SUnit& x, const ReductionContext& ctx);

// linear independence of the exponent vectors over Q (equivalently over Z);
// any torsion element makes the family dependent
bool independent(std::span<const SUnit> points);

// A2 at this place: the torsion pair {1, -1} stays distinct in F_p^*.
bool torsion_injects(const ReductionContext& ctx);

struct DensityReport {
  uint64_t prime_bound = 0;
  uint64_t l = 0;
  std::vector<unsigned> ks;
  uint64_t scanned = 0;   // valid places p <= prime_bound
  uint64_t matching = 0;  // places satisfying every exact-divisibility demand
  mpq_class frequency;
  std::vector<std::string> points;        // echo of the inputs, factored form
  std::vector<std::string> point_values;  // and as rational values
};

// Empirical check of axiom A1: counts places where, for every i,
// l^ks[i] exactly divides ord_v(points[i]) (or l does not divide it when
// ks[i] = 0). Requires independent(points) and |ks| = |points|.
DensityReport a1_density_experiment(std::span<const SUnit> points, uint64_t l,
                                    std::span<const unsigned> ks,
                                    uint64_t prime_bound, unsigned workers = 1);

}  // namespace lgpoly
