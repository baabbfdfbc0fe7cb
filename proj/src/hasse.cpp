#include "lgpoly/hasse.hpp"

#include <algorithm>

#include "lgpoly/arith.hpp"
#include "lgpoly/scan.hpp"

namespace lgpoly {

namespace {

unsigned valuation(const mpz_class& v, uint64_t p) {
  mpz_class m = v;
  unsigned e = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
    m /= static_cast<unsigned long>(p);
    ++e;
  }
  return e;
}

bool vanishes_mod(const IntPoly& f, const mpz_class& m) {
  for (const auto& c : f.coeffs())
    if (!mpz_divisible_p(c.get_mpz_t(), m.get_mpz_t())) return false;
  return true;
}

std::vector<mpz_class> level_one_roots(const IntPoly& f, uint64_t p,
                                       uint64_t threshold) {
  std::vector<mpz_class> out;
  ModPoly fb = reduce(f, p);
  if (fb.is_zero()) {
    for (uint64_t x = 0; x < p; ++x)
      out.emplace_back(static_cast<unsigned long>(x));
    return out;
  }
  for (uint64_t r : roots_mod_p(fb, threshold))
    out.emplace_back(static_cast<unsigned long>(r));
  return out;
}

// all roots of f mod p^(j+1) lying above the given roots mod p^j
std::vector<mpz_class> lift_level(const IntPoly& f, uint64_t p,
                                  const mpz_class& pj,
                                  const std::vector<mpz_class>& roots) {
  mpz_class pj1 = pj * static_cast<unsigned long>(p);
  std::vector<mpz_class> out;
  for (const auto& a : roots) {
    mpz_class b = a;
    for (uint64_t t = 0; t < p; ++t) {
      if (eval_mod(f, b, pj1) == 0) out.push_back(b);
      b += pj;
    }
  }
  return out;
}

struct LiftOutcome {
  enum Kind { certified, dies, undecided } kind;
  unsigned level;  // for dies: first level with no roots
};

// Runs the lifting tree of f at p. A root a mod p^j with j > 2*v_p(f'(a))
// lifts to every power (strong Hensel), which settles the prime; an empty
// level settles it negatively.
LiftOutcome analyze_lifting(const IntPoly& f, uint64_t p, unsigned max_level,
                            uint64_t threshold) {
  IntPoly fprime = derivative(f);
  std::vector<mpz_class> roots = level_one_roots(f, p, threshold);
  mpz_class pj(static_cast<unsigned long>(p));
  unsigned j = 1;
  while (true) {
    if (roots.empty()) return {LiftOutcome::dies, j};
    for (const auto& a : roots) {
      mpz_class d = eval(fprime, a);
      if (d != 0 && j > 2 * valuation(d, p))
        return {LiftOutcome::certified, j};
    }
    if (j >= max_level) return {LiftOutcome::undecided, j};
    roots = lift_level(f, p, pj, roots);
    pj *= static_cast<unsigned long>(p);
    ++j;
  }
}

}  // namespace

bool has_root_mod_prime_power(const IntPoly& f, uint64_t p, unsigned k) {
  if (!is_prime_u64(p))
    throw PreconditionError("has_root_mod_prime_power: p is not prime");
  if (k == 0) throw PreconditionError("has_root_mod_prime_power: k >= 1 required");
  mpz_class pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
  if (f.is_zero() || vanishes_mod(f, pk))
    throw PreconditionError(
        "has_root_mod_prime_power: f vanishes mod p^k (trivially true)");
  if (k == 1) {
    ModPoly fb = reduce(f, p);
    return has_root_mod_p(fb);
  }
  std::vector<mpz_class> roots = level_one_roots(f, p, kDefaultEnumerationThreshold);
  mpz_class pj(static_cast<unsigned long>(p));
  for (unsigned j = 1; j < k && !roots.empty(); ++j) {
    roots = lift_level(f, p, pj, roots);
    pj *= static_cast<unsigned long>(p);
  }
  return !roots.empty();
}

LocalScanReport local_root_scan(const IntPoly& f, uint64_t prime_bound,
                                const ScanOptions& opts) {
  if (f.is_zero()) throw PreconditionError("local_root_scan: zero polynomial");
  std::vector<uint64_t> primes = primes_up_to(prime_bound);
  std::vector<uint64_t> excluded = opts.excluded_primes;
  std::sort(excluded.begin(), excluded.end());

  enum class Kind : uint8_t { with_root, without_root, exceptional, excluded };
  std::function<Kind(uint64_t)> classify = [&](uint64_t p) {
    if (std::binary_search(excluded.begin(), excluded.end(), p))
      return Kind::excluded;
    if (mpz_divisible_ui_p(f.leading().get_mpz_t(), p)) return Kind::exceptional;
    ModPoly fb = reduce(f, p);
    return has_root_mod_p(fb, opts.enumeration_threshold) ? Kind::with_root
                                                          : Kind::without_root;
  };
  std::vector<Kind> kinds = map_primes<Kind>(primes, opts.workers, classify);

  LocalScanReport report;
  report.prime_bound = prime_bound;
  for (size_t i = 0; i < primes.size(); ++i) {
    switch (kinds[i]) {
      case Kind::with_root:
        ++report.primes_with_root;
        break;
      case Kind::without_root:
        report.primes_without_root.push_back(primes[i]);
        break;
      case Kind::exceptional:
        report.exceptional_primes.push_back(primes[i]);
        break;
      case Kind::excluded:
        report.excluded_primes.push_back(primes[i]);
        break;
    }
  }
  uint64_t scanned = report.primes_with_root + report.primes_without_root.size();
  report.density_estimate =
      scanned == 0 ? mpq_class(0)
                   : mpq_class(static_cast<unsigned long>(report.primes_with_root),
                               static_cast<unsigned long>(scanned));
  report.density_estimate.canonicalize();
  return report;
}

AllModuliVerdict has_root_mod_all_integers(const IntPoly& f,
                                           uint64_t analysis_bound,
                                           const ScanOptions& opts) {
  if (f.is_zero())
    throw PreconditionError("has_root_mod_all_integers: zero polynomial");
  AllModuliVerdict verdict;
  verdict.analysis_bound = analysis_bound;
  if (!integer_roots(f).empty()) {
    verdict.kind = AllModuliKind::true_certified;
    return verdict;
  }

  // Existence of a p-adic root is decided on the squarefree part, whose
  // lifting tree always resolves; witnesses are then located on f itself.
  IntPoly sqfree = f;
  if (f.degree() >= 1) {
    IntPoly g = gcd_z(f, derivative(f));
    if (g.degree() >= 1) sqfree = divide_exact(f, g);
  }
  mpz_class disc_res =
      sqfree.degree() >= 1 ? resultant(sqfree, derivative(sqfree)) : mpz_class(0);

  std::optional<mpz_class> best;
  for (uint64_t p : primes_up_to(analysis_bound)) {
    if (best && mpz_class(static_cast<unsigned long>(p)) > *best) break;
    unsigned cap_s = 64;
    if (sqfree.degree() >= 1)
      cap_s = std::max(cap_s, 2 * valuation(disc_res, p) + 4);
    else
      cap_s = valuation(sqfree.coeff(0), p) + 2;
    LiftOutcome existence =
        analyze_lifting(sqfree, p, cap_s, opts.enumeration_threshold);
    if (existence.kind == LiftOutcome::certified) continue;
    if (existence.kind == LiftOutcome::undecided) continue;  // stays bounded
    // no p-adic root: locate the first dead level of f's own tree
    LiftOutcome witness = analyze_lifting(f, p, 512, opts.enumeration_threshold);
    if (witness.kind == LiftOutcome::dies) {
      mpz_class m;
      mpz_ui_pow_ui(m.get_mpz_t(), p, witness.level);
      if (!best || m < *best) best = m;
    }
  }
  if (best) {
    verdict.kind = AllModuliKind::false_with_witness;
    verdict.witness = *best;
  } else {
    verdict.kind = AllModuliKind::true_up_to_bound;
  }
  return verdict;
}

HasseVerdict hasse_principle_verdict(const IntPoly& f, uint64_t prime_bound,
                                     const HasseOptions& opts) {
  if (f.is_zero())
    throw PreconditionError("hasse_principle_verdict: zero polynomial");
  HasseVerdict v;
  v.prime_bound = prime_bound;
  v.exceptional_allowance = opts.exceptional_allowance;
  ScanOptions so;
  so.workers = opts.workers;
  so.enumeration_threshold = opts.enumeration_threshold;
  so.excluded_primes = opts.excluded_primes;
  v.scan = local_root_scan(f, prime_bound, so);

  uint64_t scanned = v.scan.primes_with_root + v.scan.primes_without_root.size();
  if (scanned == 0)
    v.local_holds = LocalHolds::vacuous;
  else if (v.scan.primes_without_root.size() <= opts.exceptional_allowance)
    v.local_holds = LocalHolds::yes_empirically;
  else
    v.local_holds = LocalHolds::no_with_witnesses;

  std::vector<mpz_class> roots = integer_roots(f);
  v.global_holds = !roots.empty();
  if (v.global_holds) v.integer_root = roots.front();

  if (v.local_holds == LocalHolds::vacuous)
    v.principle = Principle::unknown_at_bound;
  else if ((v.local_holds == LocalHolds::yes_empirically) == v.global_holds)
    v.principle = Principle::holds;
  else
    v.principle = Principle::violated;
  return v;
}

bool guaranteed_hasse(const IntPoly& f) {
  return !f.is_zero() && f.degree() <= 4 && f.leading() == 1;
}

}  // namespace lgpoly
