#include "lgpoly/grouppoly.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "lgpoly/scan.hpp"

namespace lgpoly {

GroupPoly::GroupPoly(Support support, std::vector<SUnit> coeffs)
    : support_(std::move(support)), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_)
    if (!(c.support() == support_))
      throw PreconditionError("GroupPoly: coefficient support mismatch");
  while (!coeffs_.empty() && coeffs_.back().is_identity()) coeffs_.pop_back();
}

SUnit eval_group(const GroupPoly& F, const mpz_class& n) {
  const Support& s = F.support();
  std::vector<mpz_class> exps(s.size(), 0);
  for (size_t j = 0; j < s.size(); ++j) exps[j] = eval(exponent_poly(F, j), n);
  mpz_class sgn = eval(sign_poly(F), n);
  return SUnit(s, mpz_odd_p(sgn.get_mpz_t()) != 0, std::move(exps));
}

IntPoly exponent_poly(const GroupPoly& F, size_t j) {
  std::vector<mpz_class> c;
  c.reserve(F.coeffs().size());
  for (const auto& coeff : F.coeffs()) c.push_back(coeff.exponents()[j]);
  return IntPoly(std::move(c));
}

IntPoly sign_poly(const GroupPoly& F) {
  std::vector<mpz_class> c;
  c.reserve(F.coeffs().size());
  for (const auto& coeff : F.coeffs()) c.push_back(coeff.negative() ? 1 : 0);
  return IntPoly(std::move(c));
}

IntPoly gcd_of(const GroupPoly& F) {
  std::vector<IntPoly> fs;
  for (size_t j = 0; j < F.support().size(); ++j) {
    IntPoly f = exponent_poly(F, j) * mpz_class(2);  // t = |B_tors| = 2
    if (!f.is_zero()) fs.push_back(std::move(f));
  }
  if (fs.empty()) return IntPoly();  // t*F = 0
  return gcd_many(fs);
}

namespace {

// Per-context evaluation tables: everything needed to compute F(n) mod p for
// n in [0, p-1) with word arithmetic.
struct LocalEvaluator {
  uint64_t p;
  uint64_t pm1;
  std::vector<uint64_t> bases;              // support primes mod p
  std::vector<std::vector<uint64_t>> exps;  // exponent polys mod p-1, per j
  bool sign_even;                           // sign of F(n) for even n
  bool sign_odd;                            // and for odd n

  LocalEvaluator(const GroupPoly& F, const ReductionContext& ctx)
      : p(ctx.p), pm1(ctx.p - 1) {
    const Support& s = F.support();
    for (size_t j = 0; j < s.size(); ++j) {
      bases.push_back(s.primes()[j] % p);
      const IntPoly f = exponent_poly(F, j);
      std::vector<uint64_t> cs;
      cs.reserve(f.coeffs().size());
      for (const auto& c : f.coeffs())
        cs.push_back(mpz_fdiv_ui(c.get_mpz_t(), pm1));
      exps.push_back(std::move(cs));
    }
    // n^i mod 2 is n mod 2 for i >= 1, so the sign has period 2
    bool s0 = !F.coeffs().empty() && F.coeffs()[0].negative();
    bool sall = false;
    for (const auto& c : F.coeffs()) sall ^= c.negative();
    sign_even = s0;
    sign_odd = sall;
  }

  uint64_t value_at(uint64_t n) const {
    uint64_t r = 1;
    for (size_t j = 0; j < bases.size(); ++j) {
      uint64_t e = 0;
      const auto& cs = exps[j];
      for (size_t i = cs.size(); i-- > 0;)
        e = (mul_mod(e, n, pm1) + cs[i]) % pm1;
      r = mul_mod(r, pow_mod(bases[j], e, p), p);
    }
    bool negative = (n & 1) ? sign_odd : sign_even;
    return negative ? p - r : r;
  }
};

}  // namespace

std::optional<LocalWitness> local_solvable(const GroupPoly& F,
                                           const ReductionContext& ctx) {
  if (!(F.support() == ctx.support))
    throw PreconditionError("local_solvable: support mismatch");
  LocalEvaluator ev(F, ctx);
  for (uint64_t n = 0; n < ev.pm1; ++n) {
    uint64_t v = ev.value_at(n);
    if (v == 1) return LocalWitness{n, +1};
    if (v == ev.p - 1) return LocalWitness{n, -1};
  }
  return std::nullopt;
}

std::optional<uint64_t> local_solvable_fixed_T(const GroupPoly& F, int T,
                                               const ReductionContext& ctx) {
  if (T != 1 && T != -1)
    throw PreconditionError("local_solvable_fixed_T: T must be +1 or -1");
  if (!(F.support() == ctx.support))
    throw PreconditionError("local_solvable_fixed_T: support mismatch");
  LocalEvaluator ev(F, ctx);
  uint64_t target = T == 1 ? 1 : ctx.p - 1;
  for (uint64_t n = 0; n < ev.pm1; ++n)
    if (ev.value_at(n) == target) return n;
  return std::nullopt;
}

std::optional<GlobalWitness> global_solve(const GroupPoly& F) {
  IntPoly g = gcd_of(F);
  if (g.is_zero()) {
    // every coefficient is torsion, so F(0) = P_0 already is
    SUnit v = eval_group(F, 0);
    return GlobalWitness{0, v.negative() ? -1 : +1};
  }
  for (const mpz_class& n : integer_roots(g)) {
    SUnit v = eval_group(F, n);
    if (!v.is_torsion())
      throw std::logic_error(
          "global_solve: gcd root with nontorsion value; the gcd "
          "decomposition is broken");
    return GlobalWitness{n, v.negative() ? -1 : +1};
  }
  return std::nullopt;
}

namespace {

std::vector<uint64_t> valid_scan_primes(const Support& s, uint64_t bound,
                                        const std::vector<uint64_t>& skip) {
  std::vector<uint64_t> out;
  for (uint64_t p : primes_up_to(bound)) {
    if (p <= 2 || s.contains(p)) continue;
    if (std::find(skip.begin(), skip.end(), p) != skip.end()) continue;
    out.push_back(p);
  }
  return out;
}

HasseVerdict classical_for_gcd(const IntPoly& gcd_poly, uint64_t prime_bound,
                               const GroupOptions& opts,
                               const std::vector<uint64_t>& excluded) {
  if (!gcd_poly.is_zero()) {
    HasseOptions ho;
    ho.exceptional_allowance = opts.exceptional_allowance;
    ho.workers = opts.workers;
    ho.enumeration_threshold = opts.enumeration_threshold;
    ho.excluded_primes = excluded;
    return hasse_principle_verdict(gcd_poly, prime_bound, ho);
  }
  // zero polynomial: every integer and every residue is a root
  HasseVerdict v;
  v.prime_bound = prime_bound;
  v.exceptional_allowance = opts.exceptional_allowance;
  v.local_holds = LocalHolds::yes_empirically;
  v.global_holds = true;
  v.integer_root = 0;
  v.principle = Principle::holds;
  v.scan.prime_bound = prime_bound;
  v.scan.primes_with_root = primes_up_to(prime_bound).size();
  v.scan.density_estimate = v.scan.primes_with_root ? 1 : 0;
  return v;
}

GroupHasseReport assemble_report(
    const GroupPoly& F, uint64_t prime_bound, const GroupOptions& opts,
    const std::vector<uint64_t>& excluded,
    const std::function<PrimeLocalOutcome(uint64_t)>& local_fn) {
  GroupHasseReport report;
  report.gcd_poly = gcd_of(F);
  report.gcd_is_zero = report.gcd_poly.is_zero();
  report.prime_bound = prime_bound;

  std::vector<uint64_t> primes =
      valid_scan_primes(F.support(), prime_bound, excluded);
  report.local = map_primes<PrimeLocalOutcome>(primes, opts.workers, local_fn);
  for (const auto& o : report.local)
    if (o.status != LocalStatus::witness) ++report.local_failures;
  report.c1_observed = report.local_failures <= opts.exceptional_allowance;

  report.global = global_solve(F);
  bool c2 = report.global.has_value();

  report.classical_verdict =
      classical_for_gcd(report.gcd_poly, prime_bound, opts, excluded);

  if (report.classical_verdict.principle == Principle::unknown_at_bound) {
    report.theorem_consistent = true;  // nothing observable to contradict
  } else {
    bool lhs = report.c1_observed == c2;
    bool rhs = report.classical_verdict.principle == Principle::holds;
    report.theorem_consistent = lhs == rhs;
  }
  return report;
}

}  // namespace

GroupHasseReport group_hasse_verdict(const GroupPoly& F, uint64_t prime_bound,
                                     const GroupOptions& opts) {
  std::function<PrimeLocalOutcome(uint64_t)> fn = [&](uint64_t p) {
    ReductionContext ctx(p, F.support());
    PrimeLocalOutcome o;
    o.prime = p;
    if (auto w = local_solvable(F, ctx)) {
      o.status = LocalStatus::witness;
      o.witness_n = w->n;
      o.torsion = w->torsion;
    } else {
      o.status = LocalStatus::none;
    }
    return o;
  };
  return assemble_report(F, prime_bound, opts, {}, fn);
}

DynamicalOutcome dynamical_local(const GroupPoly& F, const mpz_class& phi,
                                 const ReductionContext& ctx,
                                 uint64_t cap_multiplier) {
  if (!(F.support() == ctx.support))
    throw PreconditionError("dynamical_local: support mismatch");
  if (mpz_fdiv_ui(phi.get_mpz_t(), ctx.p) == 0)
    throw PreconditionError("dynamical_local: phi vanishes mod p");

  const uint64_t p = ctx.p;
  const uint64_t pm1 = p - 1;
  const uint64_t phired = mpz_fdiv_ui(phi.get_mpz_t(), pm1);

  // cycle structure of phi^n mod (p-1)
  std::unordered_map<uint64_t, uint64_t> first_seen;
  uint64_t mu = 0, lambda = 1;
  {
    uint64_t m = 1 % pm1;
    for (uint64_t i = 0;; ++i) {
      auto it = first_seen.find(m);
      if (it != first_seen.end()) {
        mu = it->second;
        lambda = i - it->second;
        break;
      }
      first_seen.emplace(m, i);
      m = mul_mod(m, phired, pm1);
    }
  }
  const uint64_t cap = cap_multiplier * pm1;
  unsigned __int128 exact =
      static_cast<unsigned __int128>(pm1) / std::gcd(pm1, lambda) * lambda + mu;
  bool capped = exact > cap;
  uint64_t search = capped ? cap : static_cast<uint64_t>(exact);

  LocalEvaluator ev(F, ctx);
  uint64_t m = 1 % pm1;
  for (uint64_t n = 0; n < search; ++n) {
    uint64_t u = ev.value_at(n % pm1);
    uint64_t s = pow_mod(u, m, p);
    if (s == 1) return {LocalStatus::witness, n, +1};
    if (s == p - 1) return {LocalStatus::witness, n, -1};
    m = mul_mod(m, phired, pm1);
  }
  return {capped ? LocalStatus::none_at_cap : LocalStatus::none, 0, 1};
}

GroupHasseReport dynamical_verdict(const GroupPoly& F, const mpz_class& phi,
                                   uint64_t prime_bound,
                                   const GroupOptions& opts) {
  if (phi == 0) throw PreconditionError("dynamical_verdict: phi must be nonzero");
  std::vector<uint64_t> excluded;
  if (phi != 1 && phi != -1) {
    for (const auto& [prime, e] : factor(phi))
      if (prime.fits_ulong_p() && prime.get_ui() <= prime_bound)
        excluded.push_back(prime.get_ui());
  }
  std::function<PrimeLocalOutcome(uint64_t)> fn = [&](uint64_t p) {
    ReductionContext ctx(p, F.support());
    DynamicalOutcome d = dynamical_local(F, phi, ctx, opts.dynamical_cap_multiplier);
    PrimeLocalOutcome o;
    o.prime = p;
    o.status = d.status;
    o.witness_n = d.n;
    o.torsion = d.torsion;
    return o;
  };
  return assemble_report(F, prime_bound, opts, excluded, fn);
}

GroupPoly counterexample_fixed_torsion(unsigned degree) {
  if (degree < 2)
    throw PreconditionError("counterexample_fixed_torsion: degree >= 2 required");
  Support s({2});
  std::vector<SUnit> coeffs(degree + 1, SUnit::identity(s));
  // F(n) = n^(d-1) * ((3n - 1) [2] + [-1])
  coeffs[degree] = SUnit(s, false, {3});
  coeffs[degree - 1] = SUnit(s, true, {-1});
  return GroupPoly(s, std::move(coeffs));
}

bool membership_local(const SUnit& point, std::span<const SUnit> gens,
                      const ReductionContext& ctx) {
  if (!(point.support() == ctx.support))
    throw PreconditionError("membership_local: support mismatch");
  uint64_t m = 1;
  for (const auto& g : gens) m = std::lcm(m, order_mod(g, ctx));
  return pow_mod(reduce_mod(point, ctx), m, ctx.p) == 1;
}

namespace {

// Column-style integer echelon form with transformation tracking. Returns
// false from solve() when the system has no integer solution.
class ExponentLattice {
 public:
  ExponentLattice(std::span<const SUnit> gens, const Support& support)
      : rows_(support.size()), cols_(gens.size()) {
    v_.assign(rows_, std::vector<mpz_class>(cols_, 0));
    u_.assign(cols_, std::vector<mpz_class>(cols_, 0));
    for (size_t c = 0; c < cols_; ++c) {
      u_[c][c] = 1;
      for (size_t r = 0; r < rows_; ++r) v_[r][c] = gens[c].exponents()[r];
    }
    reduce();
  }

  // particular solution x with V x = target, or nullopt
  std::optional<std::vector<mpz_class>> solve(
      const std::vector<mpz_class>& target) const {
    std::vector<mpz_class> y(cols_, 0);
    size_t next_pivot = 0;
    for (size_t r = 0; r < rows_; ++r) {
      mpz_class acc = 0;
      for (size_t j = 0; j < cols_; ++j) acc += v_[r][j] * y[j];
      mpz_class rem = target[r] - acc;
      if (next_pivot < pivots_.size() && pivots_[next_pivot].first == r) {
        size_t c = pivots_[next_pivot].second;
        if (!mpz_divisible_p(rem.get_mpz_t(), v_[r][c].get_mpz_t()))
          return std::nullopt;
        mpz_divexact(y[c].get_mpz_t(), rem.get_mpz_t(), v_[r][c].get_mpz_t());
        ++next_pivot;
      } else if (rem != 0) {
        return std::nullopt;
      }
    }
    // x = U y
    std::vector<mpz_class> x(cols_, 0);
    for (size_t i = 0; i < cols_; ++i)
      for (size_t j = 0; j < cols_; ++j) x[i] += u_[i][j] * y[j];
    return x;
  }

  // kernel basis vectors of V (columns of U past the last pivot)
  std::vector<std::vector<mpz_class>> kernel() const {
    std::vector<std::vector<mpz_class>> out;
    for (size_t c = pivots_.size(); c < cols_; ++c) {
      std::vector<mpz_class> k(cols_);
      for (size_t i = 0; i < cols_; ++i) k[i] = u_[i][c];
      out.push_back(std::move(k));
    }
    return out;
  }

 private:
  void add_col(size_t dst, size_t src, const mpz_class& q) {
    for (size_t r = 0; r < rows_; ++r) v_[r][dst] -= q * v_[r][src];
    for (size_t i = 0; i < cols_; ++i) u_[i][dst] -= q * u_[i][src];
  }
  void swap_col(size_t a, size_t b) {
    if (a == b) return;
    for (size_t r = 0; r < rows_; ++r) std::swap(v_[r][a], v_[r][b]);
    for (size_t i = 0; i < cols_; ++i) std::swap(u_[i][a], u_[i][b]);
  }
  void negate_col(size_t c) {
    for (size_t r = 0; r < rows_; ++r) v_[r][c] = -v_[r][c];
    for (size_t i = 0; i < cols_; ++i) u_[i][c] = -u_[i][c];
  }

  void reduce() {
    size_t pc = 0;
    for (size_t r = 0; r < rows_ && pc < cols_; ++r) {
      // gcd-reduce the entries of row r across columns >= pc
      while (true) {
        size_t best = cols_;
        for (size_t j = pc; j < cols_; ++j) {
          if (v_[r][j] == 0) continue;
          if (best == cols_ || abs(v_[r][j]) < abs(v_[r][best])) best = j;
        }
        if (best == cols_) break;  // row has no pivot
        swap_col(pc, best);
        bool clean = true;
        for (size_t j = pc + 1; j < cols_; ++j) {
          if (v_[r][j] == 0) continue;
          mpz_class q;
          mpz_tdiv_q(q.get_mpz_t(), v_[r][j].get_mpz_t(), v_[r][pc].get_mpz_t());
          add_col(j, pc, q);
          if (v_[r][j] != 0) clean = false;
        }
        if (clean) {
          if (v_[r][pc] < 0) negate_col(pc);
          pivots_.emplace_back(r, pc);
          ++pc;
          break;
        }
      }
    }
  }

  size_t rows_, cols_;
  std::vector<std::vector<mpz_class>> v_;
  std::vector<std::vector<mpz_class>> u_;
  std::vector<std::pair<size_t, size_t>> pivots_;
};

bool sign_parity(const std::vector<mpz_class>& x,
                 std::span<const SUnit> gens) {
  bool s = false;
  for (size_t i = 0; i < x.size(); ++i)
    if (gens[i].negative() && mpz_odd_p(x[i].get_mpz_t())) s = !s;
  return s;
}

}  // namespace

bool membership_global(const SUnit& point, std::span<const SUnit> gens) {
  const Support& s = point.support();
  for (const auto& g : gens)
    if (!(g.support() == s))
      throw PreconditionError("membership_global: support mismatch");

  ExponentLattice lattice(gens, s);
  auto x0 = lattice.solve(point.exponents());
  if (!x0) return false;
  bool base = sign_parity(*x0, gens);
  if (base == point.negative()) return true;
  for (const auto& k : lattice.kernel())
    if (sign_parity(k, gens)) return true;  // the coset reaches both signs
  return false;
}

MembershipReport membership_verdict(const SUnit& point,
                                    std::span<const SUnit> gens,
                                    uint64_t prime_bound, unsigned workers) {
  MembershipReport report;
  report.prime_bound = prime_bound;
  report.global = membership_global(point, gens);

  std::vector<uint64_t> primes =
      valid_scan_primes(point.support(), prime_bound, {});
  std::vector<SUnit> gens_copy(gens.begin(), gens.end());
  std::function<uint8_t(uint64_t)> local = [&](uint64_t p) -> uint8_t {
    ReductionContext ctx(p, point.support());
    return membership_local(point, gens_copy, ctx) ? 1 : 0;
  };
  std::vector<uint8_t> ok = map_primes<uint8_t>(primes, workers, local);

  report.scanned = primes.size();
  for (size_t i = 0; i < primes.size(); ++i)
    if (!ok[i]) report.local_failures.push_back(primes[i]);
  report.failure_density =
      report.scanned == 0
          ? mpq_class(0)
          : mpq_class(static_cast<unsigned long>(report.local_failures.size()),
                      static_cast<unsigned long>(report.scanned));
  report.failure_density.canonicalize();
  report.observation_consistent = report.global
                                      ? report.local_failures.empty()
                                      : !report.local_failures.empty();
  return report;
}

}  // namespace lgpoly
