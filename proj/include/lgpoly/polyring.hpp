#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "lgpoly/errors.hpp"

namespace lgpoly {

// Univariate polynomial over Z with arbitrary-precision coefficients.
// Canonical form: the highest stored coefficient is nonzero; the zero
// polynomial stores nothing and has degree() == -1.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) {
    trim();
  }
  IntPoly(std::initializer_list<mpz_class> coeffs)
      : c_(coeffs.begin(), coeffs.end()) {
    trim();
  }

  static IntPoly constant(mpz_class v) { return IntPoly({std::move(v)}); }
  static IntPoly variable() { return IntPoly({0, 1}); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  mpz_class coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
  const mpz_class& leading() const {
    if (c_.empty()) throw PreconditionError("leading: zero polynomial");
    return c_.back();
  }

  IntPoly operator-() const;
  IntPoly operator+(const IntPoly& rhs) const;
  IntPoly operator-(const IntPoly& rhs) const;
  IntPoly operator*(const IntPoly& rhs) const;
  IntPoly operator*(const mpz_class& k) const;
  IntPoly shifted(size_t k) const;  // multiply by x^k
  IntPoly pow(unsigned e) const;

  bool operator==(const IntPoly& rhs) const { return c_ == rhs.c_; }
  bool operator!=(const IntPoly& rhs) const { return c_ != rhs.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<mpz_class> c_;
};

// Polynomial over the prime field F_p, coefficients in [0, p).
class ModPoly {
 public:
  ModPoly(uint64_t p, std::vector<uint64_t> coeffs)
      : p_(p), c_(std::move(coeffs)) {
    for (auto& v : c_) v %= p_;
    trim();
  }
  explicit ModPoly(uint64_t p) : p_(p) {}

  uint64_t modulus() const { return p_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<uint64_t>& coeffs() const { return c_; }
  uint64_t coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
  uint64_t leading() const {
    if (c_.empty()) throw PreconditionError("leading: zero polynomial");
    return c_.back();
  }

  uint64_t eval(uint64_t x) const;
  ModPoly operator+(const ModPoly& rhs) const;
  ModPoly operator-(const ModPoly& rhs) const;
  ModPoly operator*(const ModPoly& rhs) const;
  ModPoly scaled(uint64_t k) const;
  ModPoly monic() const;

  bool operator==(const ModPoly& rhs) const {
    return p_ == rhs.p_ && c_ == rhs.c_;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  uint64_t p_;
  std::vector<uint64_t> c_;
};

// remainder of a by b (b nonzero); both over the same prime field
ModPoly mod_rem(const ModPoly& a, const ModPoly& b);
ModPoly mod_gcd(ModPoly a, ModPoly b);  // monic gcd
// x^e mod f, by square-and-multiply; deg f >= 1
ModPoly mod_pow_x(const mpz_class& e, const ModPoly& f);
// g^e mod f
ModPoly mod_pow(const ModPoly& g, const mpz_class& e, const ModPoly& f);

// --- Z[x] operations -------------------------------------------------------

mpz_class eval(const IntPoly& f, const mpz_class& n);
mpz_class eval_mod(const IntPoly& f, const mpz_class& n, const mpz_class& m);

// gcd of coefficients, nonnegative; content(0) = 0 by convention
mpz_class content(const IntPoly& f);
// f / content(f), normalized to a positive leading coefficient; f != 0
IntPoly primitive_part(const IntPoly& f);
IntPoly derivative(const IntPoly& f);

// Z[x] gcd = gcd(contents) * gcd(primitive parts), positive leading
// coefficient; computed by the subresultant PRS. Not both arguments zero.
IntPoly gcd_z(const IntPoly& f, const IntPoly& g);
IntPoly gcd_many(std::span<const IntPoly> fs);

// exact quotient f / w in Z[x]; throws PreconditionError if not exact
IntPoly divide_exact(const IntPoly& f, const IntPoly& w);

// Resultant via the subresultant chain. Sign convention: the determinant of
// the Sylvester matrix Syl(f, g), e.g. resultant(x, x-1) = -1. Zero input
// gives 0.
mpz_class resultant(const IntPoly& f, const IntPoly& g);

// The complete set of integer roots, ascending; f != 0.
std::vector<mpz_class> integer_roots(const IntPoly& f);

// coefficientwise reduction into [0, p); p must be prime
ModPoly reduce(const IntPoly& f, uint64_t p);

inline constexpr uint64_t kDefaultEnumerationThreshold = uint64_t(1) << 20;

// All roots of f in F_p, ascending; f != 0. Below the threshold the field is
// enumerated; above it the root locus gcd(f, x^p - x) is split into linear
// factors.
std::vector<uint64_t> roots_mod_p(
    const ModPoly& f, uint64_t enumeration_threshold = kDefaultEnumerationThreshold);

// Existence-only variant (early exit; cheaper than materializing the set).
bool has_root_mod_p(const ModPoly& f,
                    uint64_t enumeration_threshold = kDefaultEnumerationThreshold);

// --- rootless combinations (constructive) ----------------------------------

struct PairCombination {
  uint64_t a;
  uint64_t b;  // residues in [0, p); h = a*f + b*g has no root mod p
};

// Residue pair (a, b) with a*f + b*g rootless mod p. Requires that the
// reductions of f and g share no root and are not both zero mod p, and that
// p is within the enumeration threshold.
PairCombination rootless_pair_combination(
    const IntPoly& f, const IntPoly& g, uint64_t p,
    uint64_t enumeration_threshold = kDefaultEnumerationThreshold);

// Integer coefficients c_1..c_k (balanced representatives) with
// sum c_i * f_i rootless mod p. Requires k >= 2 and gcd(f_1..f_k) = 1.
// Throws BadPrimeError when the construction degenerates at p, which can
// happen only inside bad_primes(fs).
std::vector<mpz_class> rootless_combination(
    std::span<const IntPoly> fs, uint64_t p,
    uint64_t enumeration_threshold = kDefaultEnumerationThreshold);

// Certified superset of the primes at which rootless_combination may fail:
// prime divisors of every leading coefficient met in the induction and of the
// resultant of the two polynomials combined at each level.
std::vector<mpz_class> bad_primes(std::span<const IntPoly> fs);

}  // namespace lgpoly
