#include <doctest.h>

#include <random>
#include <set>

#include "lgpoly/grouppoly.hpp"
#include "lgpoly/poly_text.hpp"

using namespace lgpoly;

namespace {

// F = (n-5)[2] + (n-5)(n+1)[3] over S = {2,3}
GroupPoly holds_example() {
  Support s({2, 3});
  // coefficient of n^0: -5[2] - 5[3]; n^1: [2] - 4[3]; n^2: [3]
  std::vector<SUnit> coeffs{SUnit(s, false, {-5, -5}), SUnit(s, false, {1, -4}),
                            SUnit(s, false, {0, 1})};
  return GroupPoly(s, std::move(coeffs));
}

// F = f(n)[2] with f = (n^3-19)(n^2+n+1) over S = {2}
GroupPoly violated_example() {
  Support s({2});
  IntPoly f = parse_poly("(n^3-19)(n^2+n+1)");
  std::vector<SUnit> coeffs;
  for (const auto& c : f.coeffs())
    coeffs.emplace_back(s, false, std::vector<mpz_class>{c});
  return GroupPoly(s, std::move(coeffs));
}

bool subgroup_contains(uint64_t target, const std::vector<uint64_t>& gens,
                       uint64_t p) {
  std::set<uint64_t> sub{1};
  std::vector<uint64_t> frontier{1};
  while (!frontier.empty()) {
    std::vector<uint64_t> next;
    for (uint64_t v : frontier)
      for (uint64_t g : gens) {
        uint64_t w = mul_mod(v, g % p, p);
        if (sub.insert(w).second) next.push_back(w);
      }
    frontier = std::move(next);
  }
  return sub.count(target) > 0;
}

GroupPoly random_group_poly(std::mt19937_64& rng, const Support& s,
                            int max_degree, long exp_bound) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<long> e(-exp_bound, exp_bound);
  int d = deg(rng);
  std::vector<SUnit> coeffs;
  for (int i = 0; i <= d; ++i) {
    std::vector<mpz_class> exps(s.size());
    for (auto& v : exps) v = e(rng);
    coeffs.emplace_back(s, (rng() & 1) != 0, std::move(exps));
  }
  return GroupPoly(s, std::move(coeffs));
}

}  // namespace

TEST_CASE("eval_group examples") {
  GroupPoly F = holds_example();
  CHECK(eval_group(F, 6).to_rational() == 4374);  // 2 * 3^7
  CHECK(eval_group(F, 5).is_identity());

  Support s({2});
  GroupPoly sign_only(s, {SUnit::identity(s), SUnit::minus_one(s)});  // n[-1]
  CHECK(eval_group(sign_only, 3).to_rational() == -1);
  CHECK(eval_group(sign_only, 2).to_rational() == 1);
}

TEST_CASE("gcd_of examples") {
  GroupPoly F1 = violated_example();
  CHECK(gcd_of(F1) == parse_poly("2(n^3-19)(n^2+n+1)"));

  GroupPoly F2 = holds_example();
  CHECK(gcd_of(F2) == parse_poly("2(n-5)"));

  Support s({2});
  GroupPoly torsion_only(s, {SUnit::minus_one(s), SUnit::minus_one(s)});
  CHECK(gcd_of(torsion_only).is_zero());
}

TEST_CASE("gcd_of divides every exponent polynomial of tF at every n") {
  std::mt19937_64 rng(43);
  Support s({2, 3});
  for (int i = 0; i < 40; ++i) {
    GroupPoly F = random_group_poly(rng, s, 3, 4);
    IntPoly g = gcd_of(F);
    if (g.is_zero()) continue;
    for (long n = -10; n <= 10; ++n) {
      mpz_class gn = eval(g, n);
      if (gn == 0) continue;
      for (size_t j = 0; j < s.size(); ++j) {
        mpz_class fj = 2 * eval(exponent_poly(F, j), n);
        CHECK(mpz_divisible_p(fj.get_mpz_t(), gn.get_mpz_t()));
      }
    }
  }
}

TEST_CASE("local_solvable examples") {
  GroupPoly F1 = violated_example();
  ReductionContext c7(7, F1.support());
  auto w = local_solvable(F1, c7);
  REQUIRE(w.has_value());
  CHECK(w->n == 1);  // ord_7(2) = 3 divides f(1) = -54
  CHECK(w->torsion == 1);

  Support s({2});
  GroupPoly nx2(s, {SUnit::identity(s), SUnit::generator(s, 2)});  // n[2]
  auto w2 = local_solvable(nx2, ReductionContext(11, s));
  REQUIRE(w2.has_value());
  CHECK(w2->n == 0);
  CHECK(w2->torsion == 1);

  GroupPoly constant(s, {SUnit::generator(s, 2)});  // [2]
  CHECK_FALSE(local_solvable(constant, ReductionContext(5, s)).has_value());
}

TEST_CASE("local witnesses depend only on n mod p-1") {
  std::mt19937_64 rng(47);
  Support s({2, 3});
  for (uint64_t p : {5ull, 7ull, 13ull}) {
    ReductionContext ctx(p, s);
    for (int i = 0; i < 20; ++i) {
      GroupPoly F = random_group_poly(rng, s, 3, 4);
      for (uint64_t n = 0; n < p - 1; ++n) {
        uint64_t a = reduce_mod(eval_group(F, n), ctx);
        uint64_t b = reduce_mod(eval_group(F, n + (p - 1)), ctx);
        CHECK(a == b);
      }
    }
  }
}

TEST_CASE("global_solve examples") {
  auto w = global_solve(holds_example());
  REQUIRE(w.has_value());
  CHECK(w->n == 5);
  CHECK(w->torsion == 1);

  CHECK_FALSE(global_solve(violated_example()).has_value());

  Support s({2});
  GroupPoly torsion_only(s, {SUnit::minus_one(s)});
  auto t = global_solve(torsion_only);
  REQUIRE(t.has_value());
  CHECK(t->n == 0);
  CHECK(t->torsion == -1);  // F(0) = -1
}

TEST_CASE("global_solve matches bounded brute force on random inputs") {
  std::mt19937_64 rng(53);
  Support s({2, 3});
  for (int i = 0; i < 120; ++i) {
    GroupPoly F = random_group_poly(rng, s, 3, 3);
    auto w = global_solve(F);
    if (w) {
      SUnit v = eval_group(F, w->n);
      CHECK(v.is_torsion());
      CHECK((v.negative() ? -1 : 1) == w->torsion);
    }
    bool brute = false;
    for (long n = -1000; n <= 1000 && !brute; ++n)
      if (eval_group(F, n).is_torsion()) brute = true;
    if (brute) CHECK(w.has_value());
    if (w && abs(w->n) <= 1000) CHECK(brute);
  }
}

TEST_CASE("C2 implies C1 at every valid prime (homomorphism direction)") {
  GroupPoly F = holds_example();
  REQUIRE(global_solve(F).has_value());
  for (uint64_t p : primes_up_to(500)) {
    if (p <= 3) continue;  // 2, 3 lie in the support
    auto w = local_solvable(F, ReductionContext(p, F.support()));
    CHECK(w.has_value());
  }
}

TEST_CASE("group_hasse_verdict: violated-gcd branch") {
  GroupPoly F = violated_example();
  auto r = group_hasse_verdict(F, 500);
  CHECK(r.c1_observed);
  CHECK(r.local_failures == 0);
  CHECK_FALSE(r.global.has_value());
  CHECK(r.classical_verdict.principle == Principle::violated);
  CHECK(r.theorem_consistent);
}

TEST_CASE("group_hasse_verdict: holds branch") {
  GroupPoly F = holds_example();
  auto r = group_hasse_verdict(F, 500);
  CHECK(r.c1_observed);
  REQUIRE(r.global.has_value());
  CHECK(r.global->n == 5);
  CHECK(r.classical_verdict.principle == Principle::holds);
  CHECK(r.theorem_consistent);
  CHECK(r.gcd_poly == parse_poly("2(n-5)"));
}

TEST_CASE("group_hasse_verdict: local failure at a positive fraction") {
  Support s({2, 3});
  // F = [2] + n[3]: gcd = 2, constant, so C2 fails; C1 fails at some primes
  GroupPoly F(s, {SUnit::generator(s, 2), SUnit::generator(s, 3)});
  auto r = group_hasse_verdict(F, 500);
  CHECK(r.local_failures > 0);
  CHECK_FALSE(r.c1_observed);
  CHECK_FALSE(r.global.has_value());
  CHECK(r.classical_verdict.principle == Principle::holds);  // both sides fail
  CHECK(r.theorem_consistent);
}

TEST_CASE("group_hasse_verdict: all-torsion polynomial") {
  Support s({2});
  GroupPoly F(s, {SUnit::minus_one(s), SUnit::minus_one(s)});
  auto r = group_hasse_verdict(F, 100);
  CHECK(r.gcd_is_zero);
  CHECK(r.c1_observed);
  REQUIRE(r.global.has_value());
  CHECK(r.classical_verdict.principle == Principle::holds);
  CHECK(r.theorem_consistent);
}

TEST_CASE("local_solvable_fixed_T examples") {
  Support s({2});
  GroupPoly F = counterexample_fixed_torsion(2);
  auto w = local_solvable_fixed_T(F, -1, ReductionContext(7, s));
  CHECK(w.has_value());

  GroupPoly nx2(s, {SUnit::identity(s), SUnit::generator(s, 2)});
  auto w2 = local_solvable_fixed_T(nx2, 1, ReductionContext(11, s));
  REQUIRE(w2.has_value());
  CHECK(*w2 == 0);

  GroupPoly constant(s, {SUnit::generator(s, 2)});
  CHECK_FALSE(local_solvable_fixed_T(constant, -1, ReductionContext(5, s)).has_value());
  CHECK_THROWS_AS(local_solvable_fixed_T(constant, 2, ReductionContext(5, s)),
                  PreconditionError);
}

TEST_CASE("counterexample_fixed_torsion structure") {
  GroupPoly F2 = counterexample_fixed_torsion(2);
  CHECK(exponent_poly(F2, 0) == parse_poly("n(3n-1)"));
  CHECK(sign_poly(F2) == parse_poly("n"));

  GroupPoly F3 = counterexample_fixed_torsion(3);
  CHECK(eval_group(F3, 1).to_rational() == -4);  // 2^2 * (-1)
  CHECK(eval_group(F3, 0).is_identity());

  auto g = global_solve(F3);
  REQUIRE(g.has_value());
  CHECK(g->n == 0);
  CHECK(g->torsion == 1);

  CHECK_THROWS_AS(counterexample_fixed_torsion(1), PreconditionError);
}

TEST_CASE("counterexample never attains its torsion value globally") {
  for (unsigned d = 2; d <= 4; ++d) {
    GroupPoly F = counterexample_fixed_torsion(d);
    for (long n = -2000; n <= 2000; ++n) {
      SUnit v = eval_group(F, n);
      CHECK_FALSE(v == SUnit::minus_one(F.support()));
    }
  }
}

TEST_CASE("dynamical_local with phi = 1 equals local_solvable") {
  std::mt19937_64 rng(59);
  Support s({2, 3});
  for (uint64_t p : {5ull, 7ull, 13ull, 101ull}) {
    ReductionContext ctx(p, s);
    for (int i = 0; i < 25; ++i) {
      GroupPoly F = random_group_poly(rng, s, 3, 4);
      auto direct = local_solvable(F, ctx);
      auto dyn = dynamical_local(F, 1, ctx);
      if (direct) {
        CHECK(dyn.status == LocalStatus::witness);
        CHECK(dyn.n == direct->n);
        CHECK(dyn.torsion == direct->torsion);
      } else {
        CHECK(dyn.status == LocalStatus::none);
      }
    }
  }
}

TEST_CASE("dynamical_local examples") {
  Support s({2});
  GroupPoly constant(s, {SUnit::generator(s, 2)});  // F = [2]
  ReductionContext c5(5, s);
  // S_n = 2^(2^n) mod 5: n=0 -> 2, n=1 -> 4 = -1 (torsion hit)
  auto d = dynamical_local(constant, 2, c5);
  CHECK(d.status == LocalStatus::witness);
  CHECK(d.n == 1);
  CHECK(d.torsion == -1);
  CHECK(pow_mod(2, pow_mod(2, d.n, 4), 5) == 4);  // independent recomputation

  CHECK_THROWS_AS(dynamical_local(constant, 5, c5), PreconditionError);

  // phi = 3 on the fixed-torsion example: n = 0 gives S_0 = F(0) = identity
  GroupPoly F = counterexample_fixed_torsion(2);
  auto e = dynamical_local(F, 3, ReductionContext(7, s));
  CHECK(e.status == LocalStatus::witness);
  CHECK(e.n == 0);
  CHECK(e.torsion == 1);
}

TEST_CASE("dynamical_verdict with phi = 1 equals group_hasse_verdict") {
  for (const GroupPoly& F : {holds_example(), violated_example()}) {
    auto a = group_hasse_verdict(F, 200);
    auto b = dynamical_verdict(F, 1, 200);
    CHECK(a.local.size() == b.local.size());
    for (size_t i = 0; i < a.local.size(); ++i) {
      CHECK(a.local[i].prime == b.local[i].prime);
      CHECK(a.local[i].status == b.local[i].status);
      CHECK(a.local[i].witness_n == b.local[i].witness_n);
      CHECK(a.local[i].torsion == b.local[i].torsion);
    }
    CHECK(a.theorem_consistent == b.theorem_consistent);
    CHECK(a.c1_observed == b.c1_observed);
  }
}

TEST_CASE("dynamical_verdict excludes primes dividing phi from the classical scan") {
  GroupPoly F = violated_example();
  auto r = dynamical_verdict(F, 6, 100, {});
  CHECK(r.classical_verdict.scan.excluded_primes ==
        std::vector<uint64_t>{2, 3});
  CHECK(r.theorem_consistent);
  CHECK_THROWS_AS(dynamical_verdict(F, 0, 100, {}), PreconditionError);
}

TEST_CASE("membership_local examples") {
  Support s({2});
  SUnit minus_one = SUnit::minus_one(s);
  std::vector<SUnit> four{from_rational(4, 1, s)};
  CHECK_FALSE(membership_local(minus_one, four, ReductionContext(7, s)));
  CHECK(membership_local(minus_one, four, ReductionContext(5, s)));
  CHECK(membership_local(SUnit::identity(s), four, ReductionContext(11, s)));
  CHECK(membership_local(SUnit::identity(s), {}, ReductionContext(11, s)));
}

TEST_CASE("membership_local agrees with subgroup enumeration") {
  std::mt19937_64 rng(61);
  Support s({2, 3});
  for (int trial = 0; trial < 40; ++trial) {
    SUnit point = [&] {
      std::uniform_int_distribution<long> e(-4, 4);
      std::vector<mpz_class> exps{e(rng), e(rng)};
      return SUnit(s, (rng() & 1) != 0, std::move(exps));
    }();
    size_t ngens = rng() % 3;
    std::vector<SUnit> gens;
    for (size_t i = 0; i < ngens; ++i) {
      std::uniform_int_distribution<long> e(-4, 4);
      std::vector<mpz_class> exps{e(rng), e(rng)};
      gens.emplace_back(s, (rng() & 1) != 0, std::move(exps));
    }
    for (uint64_t p : primes_up_to(200)) {
      if (p <= 3) continue;
      ReductionContext ctx(p, s);
      std::vector<uint64_t> gr;
      for (const auto& g : gens) gr.push_back(reduce_mod(g, ctx));
      bool expected = subgroup_contains(reduce_mod(point, ctx), gr, p);
      CHECK(membership_local(point, gens, ctx) == expected);
    }
  }
}

TEST_CASE("membership_global examples") {
  Support s({2});
  SUnit minus_one = SUnit::minus_one(s);
  std::vector<SUnit> four{from_rational(4, 1, s)};
  CHECK_FALSE(membership_global(minus_one, four));

  std::vector<SUnit> two{SUnit::generator(s, 2)};
  CHECK(membership_global(from_rational(8, 1, s), two));
  CHECK_FALSE(membership_global(SUnit::generator(s, 2), four));
}

TEST_CASE("membership_global sign coset handling") {
  Support s({2});
  std::vector<SUnit> minus_two{from_rational(-2, 1, s)};
  CHECK(membership_global(from_rational(-2, 1, s), minus_two));
  CHECK(membership_global(from_rational(4, 1, s), minus_two));
  CHECK(membership_global(from_rational(-8, 1, s), minus_two));
  CHECK_FALSE(membership_global(from_rational(-4, 1, s), minus_two));
  CHECK_FALSE(membership_global(from_rational(8, 1, s), minus_two));

  std::vector<SUnit> with_torsion{SUnit::minus_one(s), SUnit::generator(s, 2)};
  CHECK(membership_global(from_rational(-4, 1, s), with_torsion));
  CHECK(membership_global(SUnit::minus_one(s), {&with_torsion[0], 1}));

  // identity belongs to every subgroup, even the trivial one
  CHECK(membership_global(SUnit::identity(s), {}));
  CHECK_FALSE(membership_global(SUnit::generator(s, 2), {}));
}

TEST_CASE("membership_global closed under the generated lattice") {
  std::mt19937_64 rng(67);
  Support s({2, 3, 5});
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<long> e(-3, 3);
    std::vector<SUnit> gens;
    size_t ngens = 1 + rng() % 3;
    for (size_t i = 0; i < ngens; ++i) {
      std::vector<mpz_class> exps{e(rng), e(rng), e(rng)};
      gens.emplace_back(s, (rng() & 1) != 0, std::move(exps));
    }
    // random combination must be a member
    SUnit combo = SUnit::identity(s);
    for (const auto& g : gens) combo = add(combo, scalar_mul(e(rng), g));
    CHECK(membership_global(combo, gens));
    for (const auto& g : gens) CHECK(membership_global(g, gens));
  }
}

TEST_CASE("membership_verdict examples") {
  Support s({2});
  SUnit minus_one = SUnit::minus_one(s);
  std::vector<SUnit> four{from_rational(4, 1, s)};
  auto r = membership_verdict(minus_one, four, 2000);
  CHECK_FALSE(r.global);
  CHECK(r.observation_consistent);
  for (uint64_t p : primes_up_to(2000))
    if (p % 4 == 3)
      CHECK(std::find(r.local_failures.begin(), r.local_failures.end(), p) !=
            r.local_failures.end());

  std::vector<SUnit> two{SUnit::generator(s, 2)};
  auto r2 = membership_verdict(from_rational(8, 1, s), two, 2000);
  CHECK(r2.global);
  CHECK(r2.local_failures.empty());
  CHECK(r2.observation_consistent);

  Support s23({2, 3});
  std::vector<SUnit> gens23{SUnit::generator(s23, 2), SUnit::generator(s23, 3)};
  auto r3 = membership_verdict(from_rational(6, 1, s23), gens23, 1000);
  CHECK(r3.global);
  CHECK(r3.local_failures.empty());
}
