#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "lgpoly/polyring.hpp"

namespace lgpoly {

struct ScanOptions {
  unsigned workers = 1;
  uint64_t enumeration_threshold = kDefaultEnumerationThreshold;
  // primes skipped entirely (listed in the report); used by the dynamical
  // verdict to omit primes dividing phi
  std::vector<uint64_t> excluded_primes;
};

// Outcome of scanning f mod every prime p <= prime_bound. Primes dividing the
// leading coefficient are structural exceptions and are listed separately;
// the with/without counts partition the remaining primes.
struct LocalScanReport {
  uint64_t prime_bound = 0;
  uint64_t primes_with_root = 0;
  std::vector<uint64_t> primes_without_root;
  std::vector<uint64_t> exceptional_primes;
  std::vector<uint64_t> excluded_primes;
  mpq_class density_estimate;  // with-root fraction of scanned primes
};

LocalScanReport local_root_scan(const IntPoly& f, uint64_t prime_bound,
                                const ScanOptions& opts = {});

// Exact decision for "f has a root mod p^k", by level-by-level lifting.
// Requires f != 0 mod p^k; that degenerate case is the caller's business.
bool has_root_mod_prime_power(const IntPoly& f, uint64_t p, unsigned k);

enum class AllModuliKind { true_certified, false_with_witness, true_up_to_bound };

struct AllModuliVerdict {
  AllModuliKind kind = AllModuliKind::true_up_to_bound;
  std::optional<mpz_class> witness;  // smallest failing modulus
  uint64_t analysis_bound = 0;
};

// Decides whether f has a root modulo every integer, analysing each prime
// p <= analysis_bound exactly (Hensel stabilization certifies lifting to all
// powers). true_certified is only claimed when f has an integer root; with no
// failure among analysed primes the verdict stays true_up_to_bound.
AllModuliVerdict has_root_mod_all_integers(const IntPoly& f,
                                           uint64_t analysis_bound,
                                           const ScanOptions& opts = {});

enum class LocalHolds { yes_empirically, no_with_witnesses, vacuous };
enum class Principle { holds, violated, unknown_at_bound };

struct HasseOptions {
  uint64_t exceptional_allowance = 0;
  unsigned workers = 1;
  uint64_t enumeration_threshold = kDefaultEnumerationThreshold;
  std::vector<uint64_t> excluded_primes;
};

struct HasseVerdict {
  LocalHolds local_holds = LocalHolds::vacuous;
  bool global_holds = false;
  std::optional<mpz_class> integer_root;  // smallest, when global_holds
  Principle principle = Principle::unknown_at_bound;
  uint64_t prime_bound = 0;
  uint64_t exceptional_allowance = 0;
  LocalScanReport scan;
};

// Local scan vs exact integer-root decision. "Almost all" is operationalized
// as: at most exceptional_allowance scanned primes without a root.
HasseVerdict hasse_principle_verdict(const IntPoly& f, uint64_t prime_bound,
                                     const HasseOptions& opts = {});

// The criterion under which the classical principle is guaranteed:
// monic of degree <= 4.
bool guaranteed_hasse(const IntPoly& f);

}  // namespace lgpoly
