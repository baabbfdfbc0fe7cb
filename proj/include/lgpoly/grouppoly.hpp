#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "lgpoly/hasse.hpp"
#include "lgpoly/polyring.hpp"
#include "lgpoly/sunits.hpp"

namespace lgpoly {

// F(n) = P_0 + n P_1 + ... + n^d P_d with S-unit coefficients over a common
// support. Trailing identity coefficients are trimmed; the zero polynomial
// has degree -1.
class GroupPoly {
 public:
  GroupPoly(Support support, std::vector<SUnit> coeffs);
  const Support& support() const { return support_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<SUnit>& coeffs() const { return coeffs_; }
  SUnit coeff(size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : SUnit::identity(support_);
  }

 private:
  Support support_;
  std::vector<SUnit> coeffs_;
};

SUnit eval_group(const GroupPoly& F, const mpz_class& n);

// exponent polynomial of the j-th support prime: sum_i e_{i,j} n^i
IntPoly exponent_poly(const GroupPoly& F, size_t j);
// sign polynomial over Z (coefficients 0/1); relevant mod 2
IntPoly sign_poly(const GroupPoly& F);

// The greatest common divisor of F: with t = |B_tors| = 2 and the support
// primes as independent generators, t*F(n) = sum_j f_j(n) [q_j] with
// f_j = 2 * exponent_poly(F, j); returns gcd of the nonzero f_j, or the zero
// polynomial when t*F = 0 (all coefficients torsion).
IntPoly gcd_of(const GroupPoly& F);

struct LocalWitness {
  uint64_t n = 0;
  int torsion = 1;  // +1 or -1
};

// Smallest n in [0, p-1) with F(n) = T mod p for some torsion T. F(n) mod p
// depends only on n mod (p-1), so the search range is complete.
std::optional<LocalWitness> local_solvable(const GroupPoly& F,
                                           const ReductionContext& ctx);

// As local_solvable but for one fixed torsion value T in {+1, -1}.
std::optional<uint64_t> local_solvable_fixed_T(const GroupPoly& F, int T,
                                               const ReductionContext& ctx);

struct GlobalWitness {
  mpz_class n;
  int torsion = 1;
};

// Exact global decision through the gcd characterization: C2 holds iff
// gcd_of(F) = 0 (then (0, F(0))) or gcd_of(F) has an integer root.
std::optional<GlobalWitness> global_solve(const GroupPoly& F);

enum class LocalStatus { witness, none, none_at_cap };

struct PrimeLocalOutcome {
  uint64_t prime = 0;
  LocalStatus status = LocalStatus::none;
  uint64_t witness_n = 0;
  int torsion = 1;
};

struct GroupOptions {
  uint64_t exceptional_allowance = 0;
  unsigned workers = 1;
  uint64_t enumeration_threshold = kDefaultEnumerationThreshold;
  uint64_t dynamical_cap_multiplier = 10;  // search cap = multiplier * (p-1)
};

struct GroupHasseReport {
  IntPoly gcd_poly;
  bool gcd_is_zero = false;
  uint64_t prime_bound = 0;
  std::vector<PrimeLocalOutcome> local;  // ascending prime order
  uint64_t local_failures = 0;
  bool c1_observed = false;
  std::optional<GlobalWitness> global;  // C2
  HasseVerdict classical_verdict;       // for gcd_poly
  bool theorem_consistent = false;      // (C1 <=> C2) == classical holds
};

GroupHasseReport group_hasse_verdict(const GroupPoly& F, uint64_t prime_bound,
                                     const GroupOptions& opts = {});

struct DynamicalOutcome {
  LocalStatus status = LocalStatus::none;
  uint64_t n = 0;
  int torsion = 1;
};

// Searches natural n for phi^n * F(n) = T mod p, T torsion. The state
// (n mod p-1, phi^n mod p-1) is eventually periodic, so the search over one
// preperiod plus period is exact; it is truncated at
// cap_multiplier * (p-1), reported as none_at_cap. Requires p not dividing
// phi.
DynamicalOutcome dynamical_local(const GroupPoly& F, const mpz_class& phi,
                                 const ReductionContext& ctx,
                                 uint64_t cap_multiplier = 10);

// As group_hasse_verdict with the dynamical local condition; the classical
// comparison for gcd_of(F) excludes primes dividing phi. phi = 1 reproduces
// group_hasse_verdict exactly.
GroupHasseReport dynamical_verdict(const GroupPoly& F, const mpz_class& phi,
                                   uint64_t prime_bound,
                                   const GroupOptions& opts = {});

// The fixed-torsion counterexample family: over S = {2}, with P = [2] and
// T = -1 (ord T = 2), F(n) = n^(d-1) * ((3n - 1) P + T). Requires d >= 2.
GroupPoly counterexample_fixed_torsion(unsigned degree);

// P in <gens> mod p: the subgroup generated in the cyclic group F_p^* is the
// kernel of x -> x^m with m = lcm of the generators' orders.
bool membership_local(const SUnit& point, std::span<const SUnit> gens,
                      const ReductionContext& ctx);

// Exact lattice decision: the exponent vector must lie in the integer span
// of the generators' vectors (Hermite-style column reduction) and the sign
// equation must be achievable on the solution coset.
bool membership_global(const SUnit& point, std::span<const SUnit> gens);

struct MembershipReport {
  bool global = false;
  uint64_t prime_bound = 0;
  uint64_t scanned = 0;
  std::vector<uint64_t> local_failures;
  mpq_class failure_density;
  // global true  -> no local failures expected (homomorphism direction)
  // global false -> failures expected at positive density
  bool observation_consistent = false;
};

MembershipReport membership_verdict(const SUnit& point,
                                    std::span<const SUnit> gens,
                                    uint64_t prime_bound, unsigned workers = 1);

}  // namespace lgpoly
