// Acceptance suite: runs every criterion at its stated bound and tolerance,
// printing one PASS/FAIL line per criterion. Exits nonzero on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lgpoly/grouppoly.hpp"
#include "lgpoly/hasse.hpp"
#include "lgpoly/poly_text.hpp"
#include "lgpoly/polyring.hpp"
#include "lgpoly/reports.hpp"
#include "lgpoly/sunits.hpp"

using namespace lgpoly;

namespace {

struct Check {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
  void expect(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

// exhaustive root existence over Z/m, coefficients reduced into word range
bool exhaustive_root_mod(const IntPoly& f, uint64_t m) {
  std::vector<uint64_t> c;
  for (const auto& v : f.coeffs()) c.push_back(mpz_fdiv_ui(v.get_mpz_t(), m));
  for (uint64_t x = 0; x < m; ++x) {
    uint64_t acc = 0;
    for (size_t i = c.size(); i-- > 0;) acc = (mul_mod(acc, x, m) + c[i]) % m;
    if (acc == 0) return true;
  }
  return false;
}

std::vector<uint64_t> exhaustive_roots_mod_p(const IntPoly& f, uint64_t p) {
  std::vector<uint64_t> out;
  std::vector<uint64_t> c;
  for (const auto& v : f.coeffs()) c.push_back(mpz_fdiv_ui(v.get_mpz_t(), p));
  for (uint64_t x = 0; x < p; ++x) {
    uint64_t acc = 0;
    for (size_t i = c.size(); i-- > 0;) acc = (mul_mod(acc, x, p) + c[i]) % p;
    if (acc == 0) out.push_back(x);
  }
  return out;
}

GroupPoly remark22_group_poly() {
  Support s({2});
  IntPoly f = parse_poly("(n^3-19)(n^2+n+1)");
  std::vector<SUnit> coeffs;
  for (const auto& c : f.coeffs())
    coeffs.emplace_back(s, false, std::vector<mpz_class>{c});
  return GroupPoly(s, std::move(coeffs));
}

GroupPoly holds_group_poly() {
  Support s({2, 3});
  std::vector<SUnit> coeffs{SUnit(s, false, {-5, -5}), SUnit(s, false, {1, -4}),
                            SUnit(s, false, {0, 1})};
  return GroupPoly(s, std::move(coeffs));
}

// --- criteria ----------------------------------------------------------------

Check criterion1() {
  Check c;
  std::vector<IntPoly> family{parse_poly("(x^3-19)(x^2+x+1)"),
                              parse_poly("(x^2-13)(x^2-17)(x^2-221)")};
  for (unsigned d = 2; d <= 5; ++d)
    family.push_back(parse_poly("(3x-2)(2x-3)^" + std::to_string(d - 1)));

  for (const IntPoly& f : family) {
    if (!integer_roots(f).empty()) {
      c.fail("unexpected integer root of " + to_display(f));
      continue;
    }
    for (uint64_t p : primes_up_to(10000)) {
      for (unsigned k = 1;; ++k) {
        uint64_t pk = 1;
        bool over = false;
        for (unsigned i = 0; i < k; ++i) {
          pk *= p;
          if (pk > 10000) over = true;
        }
        if (over) break;
        if (!has_root_mod_prime_power(f, p, k)) {
          c.fail(to_display(f) + " has no root mod " + std::to_string(p) + "^" +
                 std::to_string(k));
          break;
        }
      }
      if (!c.ok) break;
    }
    if (!c.ok) break;
  }
  return c;
}

Check criterion2() {
  Check c;
  auto report = local_root_scan(parse_poly("x^2+1"), 10000);
  // independent quadratic-residue scan: -1 is a QR mod odd p iff p = 1 mod 4,
  // certified by Euler's criterion rather than the table
  std::vector<uint64_t> expected;
  for (uint64_t p : primes_up_to(10000)) {
    if (p == 2) continue;
    if (pow_mod(p - 1, (p - 1) / 2, p) != 1) expected.push_back(p);
  }
  for (uint64_t p : expected)
    if (p % 4 != 3) c.fail("Euler scan disagrees with p = 3 mod 4 at " +
                           std::to_string(p));
  c.expect(report.primes_without_root == expected,
           "scan failures differ from the quadratic-residue oracle");
  c.note("failures: " + std::to_string(report.primes_without_root.size()) +
         " primes");
  return c;
}

Check criterion3() {
  Check c;
  std::mt19937_64 rng(20250810);
  std::uniform_int_distribution<int> deg(0, 5);
  std::uniform_int_distribution<long> coeff(-20, 20);
  std::uniform_int_distribution<int> count(2, 4);
  auto primes = primes_up_to(500);

  int tuples = 0;
  while (tuples < 200 && c.ok) {
    size_t k = count(rng);
    std::vector<IntPoly> fs;
    for (size_t i = 0; i < k; ++i) {
      std::vector<mpz_class> cs(deg(rng) + 1);
      for (auto& v : cs) v = coeff(rng);
      fs.emplace_back(std::move(cs));
    }
    bool any_zero = false;
    for (const auto& f : fs) any_zero |= f.is_zero();
    if (any_zero) continue;
    IntPoly g = gcd_many(fs);
    if (!(g.degree() == 0 && g.coeff(0) == 1)) continue;
    ++tuples;

    std::set<mpz_class> bad;
    for (const auto& b : bad_primes(fs)) bad.insert(b);
    for (uint64_t p : primes) {
      if (bad.count(mpz_class(static_cast<unsigned long>(p)))) continue;
      std::vector<mpz_class> cs;
      try {
        cs = rootless_combination(fs, p);
      } catch (const BadPrimeError& e) {
        c.fail("BadPrime outside bad_primes at p=" + std::to_string(p) + ": " +
               e.what());
        break;
      }
      IntPoly combo;
      for (size_t i = 0; i < fs.size(); ++i) combo = combo + fs[i] * cs[i];
      if (exhaustive_root_mod(combo, p)) {
        c.fail("combination has a root mod " + std::to_string(p));
        break;
      }
    }
  }
  c.note("200 tuples, primes to 500");
  return c;
}

Check criterion4() {
  Check c;
  GroupPoly F = remark22_group_poly();
  auto r = group_hasse_verdict(F, 2000);
  c.expect(r.local_failures == 0, "a valid prime <= 2000 is not locally solvable");
  c.expect(!r.global.has_value(), "global witness should be absent");
  c.expect(r.classical_verdict.principle == Principle::violated,
           "classical verdict for the gcd should be violated");
  c.expect(r.theorem_consistent, "theorem consistency flag is false");
  return c;
}

Check criterion5() {
  Check c;
  GroupPoly F = holds_group_poly();
  auto r = group_hasse_verdict(F, 2000);
  c.expect(r.gcd_poly == parse_poly("2(n-5)"), "gcd is not 2(n-5)");
  c.expect(r.global.has_value() && r.global->n == 5 && r.global->torsion == 1,
           "global witness is not (5, +1)");
  c.expect(r.local_failures == 0, "a valid prime <= 2000 is not locally solvable");
  c.expect(r.theorem_consistent, "theorem consistency flag is false");
  return c;
}

Check criterion6() {
  Check c;
  for (unsigned d = 2; d <= 4 && c.ok; ++d) {
    GroupPoly F = counterexample_fixed_torsion(d);
    const Support& s = F.support();
    for (uint64_t p : primes_up_to(2000)) {
      if (p == 2) continue;
      ReductionContext ctx(p, s);
      if (!local_solvable_fixed_T(F, -1, ctx).has_value()) {
        c.fail("no local witness for T=-1 at p=" + std::to_string(p) +
               ", d=" + std::to_string(d));
        break;
      }
    }
    // globally F(n) = -1 has no solution: the exponent n^(d-1)(3n-1) vanishes
    // only at n = 0 (3n-1 has no integer root), where the sign is even
    for (long n = -10000; n <= 10000; ++n) {
      SUnit v = eval_group(F, n);
      if (v == SUnit::minus_one(s)) {
        c.fail("F(" + std::to_string(n) + ") = -1 at d=" + std::to_string(d));
        break;
      }
    }
    auto g = global_solve(F);
    c.expect(g.has_value() && g->n == 0 && g->torsion == 1,
             "global_solve should return (0, identity)");
  }
  return c;
}

Check criterion7() {
  Check c;
  Support s({2});
  SUnit minus_one = SUnit::minus_one(s);
  std::vector<SUnit> four{from_rational(4, 1, s)};
  auto r = membership_verdict(minus_one, four, 10000);
  c.expect(!r.global, "-1 must not lie in <4> globally");

  uint64_t family = 0;
  std::set<uint64_t> failures(r.local_failures.begin(), r.local_failures.end());
  for (uint64_t p : primes_up_to(10000)) {
    if (p % 4 != 3) continue;
    ++family;
    if (!failures.count(p)) {
      c.fail("membership_local true at p=" + std::to_string(p) +
             " (3 mod 4)");
      break;
    }
  }
  // the p = 3 mod 4 witness family is the proof's positive-density mechanism
  double family_density = double(family) / double(r.scanned);
  c.expect(family_density > 0.45 && family_density < 0.55,
           "witness-family density out of range");
  {
    std::ostringstream os;
    os.precision(3);
    os << std::fixed << "family density " << family_density
       << ", total failure density "
       << double(r.local_failures.size()) / double(r.scanned);
    c.note(os.str());
  }

  std::vector<SUnit> two{SUnit::generator(s, 2)};
  auto r8 = membership_verdict(from_rational(8, 1, s), two, 10000);
  c.expect(r8.global, "8 must lie in <2> globally");
  c.expect(r8.local_failures.empty(), "8 in <2> must hold at every place");
  return c;
}

Check criterion8() {
  Check c;
  Support s({2});
  std::vector<SUnit> pts{SUnit::generator(s, 2)};
  auto exactly_once = a1_density_experiment(pts, 2, std::vector<unsigned>{1}, 100000);
  auto odd_order = a1_density_experiment(pts, 2, std::vector<unsigned>{0}, 100000);
  double f1 = exactly_once.frequency.get_d();
  double f0 = odd_order.frequency.get_d();
  c.expect(f1 > 0.05, "frequency of 2 || ord_p(2) is not > 0.05");
  c.expect(f0 > 0.05, "frequency of odd ord_p(2) is not > 0.05");
  std::ostringstream os;
  os.precision(4);
  os << std::fixed << "freq(2||ord)=" << f1 << ", freq(2 odd ord)=" << f0;
  c.note(os.str());
  return c;
}

Check criterion9() {
  Check c;
  for (const GroupPoly& F : {remark22_group_poly(), holds_group_poly()}) {
    std::string plain = to_json(group_hasse_verdict(F, 2000)).dump(2);
    std::string dynamical = to_json(dynamical_verdict(F, 1, 2000)).dump(2);
    c.expect(plain == dynamical, "phi=1 report differs from the plain report");
  }

  GroupPoly F = counterexample_fixed_torsion(2);
  auto r = dynamical_verdict(F, 3, 2000);
  c.expect(r.local_failures == 0,
           "dynamical local side fails at some prime <= 2000");
  c.expect(r.theorem_consistent, "dynamical consistency flag is false");
  // S_n = 3^n F(n) never equals -1 exactly: 3^n is odd and nonzero, so this
  // needs n^(d-1)(3n-1) = 0 with odd sign exponent, which cannot happen
  const uint64_t cap = 20000;  // covers every per-prime search cap 10(p-1)
  IntPoly expo = exponent_poly(F, 0);
  for (uint64_t n = 0; n <= cap; ++n) {
    bool exp_zero = eval(expo, n) == 0;
    bool sign_odd = (n % 2) == 1;  // sign poly is n^(d-1), d = 2
    if (exp_zero && sign_odd) {
      c.fail("S_n = -1 exactly at n=" + std::to_string(n));
      break;
    }
  }
  return c;
}

Check criterion10() {
  Check c;
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<int> deg(0, 8);
  std::uniform_int_distribution<long> coeff(-50, 50);

  // roots_mod_p vs exhaustive evaluation, both enumeration and gcd paths
  auto primes1k = primes_up_to(1000);
  for (int i = 0; i < 100 && c.ok; ++i) {
    std::vector<mpz_class> cs(deg(rng) + 1);
    for (auto& v : cs) v = coeff(rng);
    IntPoly f{std::move(cs)};
    if (f.is_zero()) {
      --i;
      continue;
    }
    for (uint64_t p : primes1k) {
      ModPoly fb = reduce(f, p);
      if (fb.is_zero()) continue;
      auto expected = exhaustive_roots_mod_p(f, p);
      if (roots_mod_p(fb) != expected) {
        c.fail("enumeration path mismatch at p=" + std::to_string(p));
        break;
      }
      if (roots_mod_p(fb, 0) != expected) {
        c.fail("gcd-split path mismatch at p=" + std::to_string(p));
        break;
      }
    }
  }

  // has_root_mod_prime_power vs exhaustive search over Z/p^k
  std::uniform_int_distribution<int> deg2(0, 4);
  std::uniform_int_distribution<long> coeff2(-15, 15);
  for (int i = 0; i < 20 && c.ok; ++i) {
    std::vector<mpz_class> cs(deg2(rng) + 1);
    for (auto& v : cs) v = coeff2(rng);
    IntPoly f{std::move(cs)};
    if (f.is_zero()) {
      --i;
      continue;
    }
    for (uint64_t p : primes_up_to(10000)) {
      for (unsigned k = 1; c.ok; ++k) {
        uint64_t pk = 1;
        bool over = false;
        for (unsigned j = 0; j < k; ++j) {
          pk *= p;
          if (pk > 10000) over = true;
        }
        if (over) break;
        mpz_class pkz(static_cast<unsigned long>(pk));
        bool trivial = true;
        for (const auto& v : f.coeffs())
          if (!mpz_divisible_p(v.get_mpz_t(), pkz.get_mpz_t())) trivial = false;
        if (trivial) break;
        if (has_root_mod_prime_power(f, p, k) != exhaustive_root_mod(f, pk))
          c.fail("prime-power mismatch at " + std::to_string(p) + "^" +
                 std::to_string(k));
      }
      if (!c.ok) break;
    }
  }

  // membership_local vs subgroup enumeration
  Support s({2, 3});
  std::uniform_int_distribution<long> e(-4, 4);
  for (int i = 0; i < 30 && c.ok; ++i) {
    SUnit point(s, (rng() & 1) != 0, {e(rng), e(rng)});
    std::vector<SUnit> gens;
    size_t ngens = rng() % 3;
    for (size_t j = 0; j < ngens; ++j)
      gens.emplace_back(s, (rng() & 1) != 0,
                        std::vector<mpz_class>{e(rng), e(rng)});
    for (uint64_t p : primes_up_to(500)) {
      if (p <= 3) continue;
      ReductionContext ctx(p, s);
      std::set<uint64_t> sub{1};
      std::vector<uint64_t> frontier{1};
      std::vector<uint64_t> gr;
      for (const auto& g : gens) gr.push_back(reduce_mod(g, ctx));
      while (!frontier.empty()) {
        std::vector<uint64_t> next;
        for (uint64_t v : frontier)
          for (uint64_t g : gr) {
            uint64_t w = mul_mod(v, g, p);
            if (sub.insert(w).second) next.push_back(w);
          }
        frontier = std::move(next);
      }
      bool expected = sub.count(reduce_mod(point, ctx)) > 0;
      if (membership_local(point, gens, ctx) != expected) {
        c.fail("membership mismatch at p=" + std::to_string(p));
        break;
      }
    }
  }
  return c;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* title;
    std::function<Check()> run;
  };
  std::vector<Entry> criteria{
      {1, "Remark counterexamples: no integer root, roots mod every m <= 10^4",
       criterion1},
      {2, "x^2+1 fails locally exactly at p = 3 mod 4 below 10^4", criterion2},
      {3, "rootless combinations verified for 200 random coprime tuples",
       criterion3},
      {4, "theorem, violated-gcd branch at bound 2000", criterion4},
      {5, "theorem, holds branch at bound 2000", criterion5},
      {6, "fixed-torsion family: locally solvable, globally unattained",
       criterion6},
      {7, "membership local-global for -1 in <4> and 8 in <2>", criterion7},
      {8, "axiom A1 positive-density evidence at bound 10^5", criterion8},
      {9, "dynamical corollary: phi=1 byte-identity and phi=3 family",
       criterion9},
      {10, "oracle equivalences: roots, prime powers, membership", criterion10},
  };

  int failures = 0;
  for (const auto& entry : criteria) {
    auto start = std::chrono::steady_clock::now();
    Check result;
    try {
      result = entry.run();
    } catch (const std::exception& e) {
      result.fail(std::string("exception: ") + e.what());
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("%s criterion %2d: %s (%.2fs)%s%s\n",
                result.ok ? "PASS" : "FAIL", entry.id, entry.title, seconds,
                result.detail.empty() ? "" : " -- ",
                result.detail.c_str());
    if (!result.ok) ++failures;
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
