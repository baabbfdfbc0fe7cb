#include "lgpoly/polyring.hpp"

#include <algorithm>
#include <cassert>

#include "lgpoly/arith.hpp"

namespace lgpoly {

// --- IntPoly arithmetic -----------------------------------------------------

IntPoly IntPoly::operator-() const {
  std::vector<mpz_class> r(c_);
  for (auto& v : r) v = -v;
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator+(const IntPoly& rhs) const {
  std::vector<mpz_class> r(std::max(c_.size(), rhs.c_.size()), 0);
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < rhs.c_.size(); ++i) r[i] += rhs.c_[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& rhs) const {
  std::vector<mpz_class> r(std::max(c_.size(), rhs.c_.size()), 0);
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < rhs.c_.size(); ++i) r[i] -= rhs.c_[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const IntPoly& rhs) const {
  if (is_zero() || rhs.is_zero()) return IntPoly();
  std::vector<mpz_class> r(c_.size() + rhs.c_.size() - 1, 0);
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < rhs.c_.size(); ++j) r[i + j] += c_[i] * rhs.c_[j];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const mpz_class& k) const {
  std::vector<mpz_class> r(c_);
  for (auto& v : r) v *= k;
  return IntPoly(std::move(r));
}

IntPoly IntPoly::shifted(size_t k) const {
  if (is_zero()) return IntPoly();
  std::vector<mpz_class> r(k, 0);
  r.insert(r.end(), c_.begin(), c_.end());
  return IntPoly(std::move(r));
}

IntPoly IntPoly::pow(unsigned e) const {
  IntPoly r = IntPoly::constant(1);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

// --- ModPoly ----------------------------------------------------------------

uint64_t ModPoly::eval(uint64_t x) const {
  uint64_t acc = 0;
  for (size_t i = c_.size(); i-- > 0;) acc = (mul_mod(acc, x, p_) + c_[i]) % p_;
  return acc;
}

ModPoly ModPoly::operator+(const ModPoly& rhs) const {
  std::vector<uint64_t> r(std::max(c_.size(), rhs.c_.size()), 0);
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (size_t i = 0; i < rhs.c_.size(); ++i) r[i] = (r[i] + rhs.c_[i]) % p_;
  return ModPoly(p_, std::move(r));
}

ModPoly ModPoly::operator-(const ModPoly& rhs) const {
  std::vector<uint64_t> r(std::max(c_.size(), rhs.c_.size()), 0);
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (size_t i = 0; i < rhs.c_.size(); ++i)
    r[i] = (r[i] + p_ - rhs.c_[i]) % p_;
  return ModPoly(p_, std::move(r));
}

ModPoly ModPoly::operator*(const ModPoly& rhs) const {
  if (is_zero() || rhs.is_zero()) return ModPoly(p_);
  std::vector<uint64_t> r(c_.size() + rhs.c_.size() - 1, 0);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < rhs.c_.size(); ++j)
      r[i + j] = (r[i + j] + mul_mod(c_[i], rhs.c_[j], p_)) % p_;
  }
  return ModPoly(p_, std::move(r));
}

ModPoly ModPoly::scaled(uint64_t k) const {
  std::vector<uint64_t> r(c_);
  for (auto& v : r) v = mul_mod(v, k % p_, p_);
  return ModPoly(p_, std::move(r));
}

ModPoly ModPoly::monic() const {
  if (is_zero()) return *this;
  if (leading() == 1) return *this;
  return scaled(inv_mod(leading(), p_));
}

ModPoly mod_rem(const ModPoly& a, const ModPoly& b) {
  if (b.is_zero()) throw PreconditionError("mod_rem: division by zero");
  uint64_t p = a.modulus();
  std::vector<uint64_t> r(a.coeffs());
  int db = b.degree();
  uint64_t inv_lb = inv_mod(b.leading(), p);
  for (int i = static_cast<int>(r.size()) - 1; i >= db; --i) {
    if (r[i] == 0) continue;
    uint64_t q = mul_mod(r[i], inv_lb, p);
    for (int j = 0; j <= db; ++j) {
      uint64_t sub = mul_mod(q, b.coeff(j), p);
      r[i - db + j] = (r[i - db + j] + p - sub) % p;
    }
  }
  r.resize(std::max(db, 0));
  return ModPoly(p, std::move(r));
}

namespace {

// quotient and remainder; divisor nonzero
std::pair<ModPoly, ModPoly> mod_divmod(const ModPoly& a, const ModPoly& b) {
  uint64_t p = a.modulus();
  if (b.is_zero()) throw PreconditionError("mod_divmod: division by zero");
  if (a.degree() < b.degree()) return {ModPoly(p), a};
  std::vector<uint64_t> r(a.coeffs());
  std::vector<uint64_t> q(a.degree() - b.degree() + 1, 0);
  int db = b.degree();
  uint64_t inv_lb = inv_mod(b.leading(), p);
  for (int i = static_cast<int>(r.size()) - 1; i >= db; --i) {
    if (r[i] == 0) continue;
    uint64_t qi = mul_mod(r[i], inv_lb, p);
    q[i - db] = qi;
    for (int j = 0; j <= db; ++j) {
      uint64_t sub = mul_mod(qi, b.coeff(j), p);
      r[i - db + j] = (r[i - db + j] + p - sub) % p;
    }
  }
  r.resize(db);
  return {ModPoly(p, std::move(q)), ModPoly(p, std::move(r))};
}

}  // namespace

ModPoly mod_gcd(ModPoly a, ModPoly b) {
  while (!b.is_zero()) {
    ModPoly r = mod_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

ModPoly mod_pow(const ModPoly& g, const mpz_class& e, const ModPoly& f) {
  if (f.degree() < 1) throw PreconditionError("mod_pow: modulus degree < 1");
  ModPoly base = mod_rem(g, f);
  ModPoly acc(f.modulus(), {1});
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    acc = mod_rem(acc * acc, f);
    if (mpz_tstbit(e.get_mpz_t(), i)) acc = mod_rem(acc * base, f);
  }
  return acc;
}

ModPoly mod_pow_x(const mpz_class& e, const ModPoly& f) {
  return mod_pow(ModPoly(f.modulus(), {0, 1}), e, f);
}

// --- Z[x] basics ------------------------------------------------------------

mpz_class eval(const IntPoly& f, const mpz_class& n) {
  mpz_class acc = 0;
  const auto& c = f.coeffs();
  for (size_t i = c.size(); i-- > 0;) acc = acc * n + c[i];
  return acc;
}

mpz_class eval_mod(const IntPoly& f, const mpz_class& n, const mpz_class& m) {
  mpz_class acc = 0;
  const auto& c = f.coeffs();
  for (size_t i = c.size(); i-- > 0;) {
    acc = acc * n + c[i];
    mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
  }
  return acc;
}

mpz_class content(const IntPoly& f) {
  mpz_class g = 0;
  for (const auto& v : f.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  return g;
}

IntPoly primitive_part(const IntPoly& f) {
  if (f.is_zero()) throw PreconditionError("primitive_part: zero polynomial");
  mpz_class c = content(f);
  if (f.leading() < 0) c = -c;
  std::vector<mpz_class> r(f.coeffs());
  for (auto& v : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
  return IntPoly(std::move(r));
}

IntPoly derivative(const IntPoly& f) {
  if (f.degree() < 1) return IntPoly();
  std::vector<mpz_class> r(f.degree());
  for (int i = 1; i <= f.degree(); ++i) r[i - 1] = f.coeff(i) * i;
  return IntPoly(std::move(r));
}

namespace {

IntPoly divexact_scalar(const IntPoly& f, const mpz_class& k) {
  std::vector<mpz_class> r(f.coeffs());
  for (auto& v : r) {
    assert(mpz_divisible_p(v.get_mpz_t(), k.get_mpz_t()));
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), k.get_mpz_t());
  }
  return IntPoly(std::move(r));
}

// pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r
IntPoly prem(IntPoly a, const IntPoly& b) {
  const mpz_class lb = b.leading();
  const int db = b.degree();
  int e = a.degree() - db + 1;
  while (!a.is_zero() && a.degree() >= db) {
    IntPoly t = b.shifted(static_cast<size_t>(a.degree() - db)) * a.leading();
    a = a * lb - t;
    --e;
  }
  mpz_class scale = 1;
  for (; e > 0; --e) scale *= lb;
  return a * scale;
}

mpz_class pow_mpz(const mpz_class& b, unsigned e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

}  // namespace

IntPoly gcd_z(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() && g.is_zero())
    throw PreconditionError("gcd_z: both polynomials are zero");
  auto normalized = [](const IntPoly& h) {
    return h.leading() < 0 ? -h : h;
  };
  if (f.is_zero()) return normalized(g);
  if (g.is_zero()) return normalized(f);

  mpz_class cont;
  mpz_gcd(cont.get_mpz_t(), content(f).get_mpz_t(), content(g).get_mpz_t());

  IntPoly a = primitive_part(f);
  IntPoly b = primitive_part(g);
  if (a.degree() < b.degree()) std::swap(a, b);

  IntPoly result;
  if (b.degree() == 0) {
    result = IntPoly::constant(1);  // primitive parts are coprime
  } else {
    // subresultant PRS (Collins / Brown-Traub)
    mpz_class gg = 1, h = 1;
    while (true) {
      unsigned delta = static_cast<unsigned>(a.degree() - b.degree());
      IntPoly r = prem(a, b);
      if (r.is_zero()) {
        result = b;
        break;
      }
      if (r.degree() == 0) {
        result = IntPoly::constant(1);
        break;
      }
      a = std::move(b);
      b = divexact_scalar(r, gg * pow_mpz(h, delta));
      gg = a.leading();
      if (delta == 1)
        h = gg;
      else if (delta > 1) {
        mpz_class num = pow_mpz(gg, delta);
        mpz_class den = pow_mpz(h, delta - 1);
        mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      }
    }
    result = primitive_part(result);
  }
  return result * cont;
}

IntPoly gcd_many(std::span<const IntPoly> fs) {
  if (fs.empty()) throw PreconditionError("gcd_many: empty family");
  bool all_zero = true;
  for (const auto& f : fs)
    if (!f.is_zero()) all_zero = false;
  if (all_zero) throw PreconditionError("gcd_many: all polynomials are zero");
  if (fs.size() == 1) {
    const IntPoly& f = fs.front();
    return f.leading() < 0 ? -f : f;
  }
  IntPoly g = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) {
    if (g.is_zero() && fs[i].is_zero()) continue;
    g = gcd_z(g, fs[i]);
    if (g.degree() == 0 && g.coeff(0) == 1) break;
  }
  return g;
}

IntPoly divide_exact(const IntPoly& f, const IntPoly& w) {
  if (w.is_zero()) throw PreconditionError("divide_exact: division by zero");
  if (f.is_zero()) return IntPoly();
  if (f.degree() < w.degree())
    throw PreconditionError("divide_exact: divisor degree exceeds dividend");
  std::vector<mpz_class> rem(f.coeffs());
  std::vector<mpz_class> quot(f.degree() - w.degree() + 1, 0);
  const int dw = w.degree();
  const mpz_class& lw = w.leading();
  for (int i = static_cast<int>(rem.size()) - 1; i >= dw; --i) {
    if (rem[i] == 0) continue;
    if (!mpz_divisible_p(rem[i].get_mpz_t(), lw.get_mpz_t()))
      throw PreconditionError("divide_exact: division is not exact");
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), rem[i].get_mpz_t(), lw.get_mpz_t());
    quot[i - dw] = q;
    for (int j = 0; j <= dw; ++j) rem[i - dw + j] -= q * w.coeff(j);
  }
  for (const auto& v : rem)
    if (v != 0) throw PreconditionError("divide_exact: division is not exact");
  return IntPoly(std::move(quot));
}

mpz_class resultant(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() || g.is_zero()) return 0;
  if (f.degree() == 0) return pow_mpz(f.coeff(0), g.degree());
  if (g.degree() == 0) return pow_mpz(g.coeff(0), f.degree());

  IntPoly a = f, b = g;
  int s = 1;
  if (a.degree() < b.degree()) {
    if ((a.degree() & 1) && (b.degree() & 1)) s = -s;
    std::swap(a, b);
  }
  mpz_class ca = content(a), cb = content(b);
  a = divexact_scalar(a, ca);
  b = divexact_scalar(b, cb);
  mpz_class t = pow_mpz(ca, b.degree()) * pow_mpz(cb, a.degree());

  mpz_class gg = 1, h = 1;
  while (b.degree() > 0) {
    unsigned delta = static_cast<unsigned>(a.degree() - b.degree());
    if ((a.degree() & 1) && (b.degree() & 1)) s = -s;
    IntPoly r = prem(a, b);
    a = std::move(b);
    b = r.is_zero() ? IntPoly()
                    : divexact_scalar(r, gg * pow_mpz(h, delta));
    gg = a.leading();
    if (delta == 1)
      h = gg;
    else if (delta > 1) {
      mpz_class num = pow_mpz(gg, delta);
      mpz_class den = pow_mpz(h, delta - 1);
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    if (b.is_zero()) return 0;  // nontrivial common factor
  }
  // b is a nonzero constant now
  mpz_class num = pow_mpz(b.coeff(0), a.degree());
  mpz_class den = pow_mpz(h, a.degree() - 1);
  mpz_class res;
  mpz_divexact(res.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return s * t * res;
}

std::vector<mpz_class> integer_roots(const IntPoly& f) {
  if (f.is_zero())
    throw PreconditionError("integer_roots: zero polynomial (all integers)");
  std::vector<mpz_class> roots;
  // strip the x^k factor
  size_t k = 0;
  while (f.coeff(k) == 0) ++k;
  if (k > 0) roots.push_back(0);
  std::vector<mpz_class> rest(f.coeffs().begin() + k, f.coeffs().end());
  IntPoly g(std::move(rest));
  if (g.degree() == 0) {
    std::sort(roots.begin(), roots.end());
    return roots;
  }
  // candidates divide the (nonzero) trailing coefficient
  mpz_class trailing = abs(g.coeff(0));
  std::vector<mpz_class> divisors{1};
  for (const auto& [p, e] : factor(trailing)) {
    size_t sz = divisors.size();
    mpz_class pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (size_t j = 0; j < sz; ++j) divisors.push_back(divisors[j] * pk);
    }
  }
  for (const auto& d : divisors) {
    if (eval(g, d) == 0) roots.push_back(d);
    if (eval(g, -d) == 0) roots.push_back(-d);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

ModPoly reduce(const IntPoly& f, uint64_t p) {
  if (!is_prime_u64(p)) throw PreconditionError("reduce: modulus is not prime");
  std::vector<uint64_t> r;
  r.reserve(f.coeffs().size());
  for (const auto& v : f.coeffs())
    r.push_back(mpz_fdiv_ui(v.get_mpz_t(), p));
  return ModPoly(p, std::move(r));
}

// --- root finding over F_p --------------------------------------------------

namespace {

// peel off a root at 0, returning the polynomial divided by x^k
ModPoly strip_zero_root(const ModPoly& f, bool* had_zero_root) {
  size_t k = 0;
  while (k < f.coeffs().size() && f.coeff(k) == 0) ++k;
  *had_zero_root = k > 0;
  if (k == 0) return f;
  std::vector<uint64_t> c(f.coeffs().begin() + k, f.coeffs().end());
  return ModPoly(f.modulus(), std::move(c));
}

// split a monic squarefree product of distinct linear factors into roots
void split_linear_product(const ModPoly& h, std::vector<uint64_t>* roots) {
  uint64_t p = h.modulus();
  if (h.degree() < 1) return;
  if (h.degree() == 1) {
    roots->push_back((p - h.coeff(0)) % p);
    return;
  }
  // Cantor-Zassenhaus with a deterministic shift sweep: for shift a, the
  // roots r with (r + a) a nonzero square land in gcd(h, (x+a)^((p-1)/2) - 1).
  for (uint64_t a = 1; a <= p; ++a) {
    ModPoly base(p, {a % p, 1});
    ModPoly pw = mod_pow(base, mpz_class((p - 1) / 2), h);
    pw = pw - ModPoly(p, {1});
    ModPoly t = mod_gcd(h, pw);
    if (t.degree() > 0 && t.degree() < h.degree()) {
      auto [q, r] = mod_divmod(h, t);
      assert(r.is_zero());
      split_linear_product(t, roots);
      split_linear_product(q, roots);
      return;
    }
  }
  throw std::logic_error("split_linear_product: shift sweep failed to separate roots");
}

}  // namespace

std::vector<uint64_t> roots_mod_p(const ModPoly& f, uint64_t enumeration_threshold) {
  if (f.is_zero())
    throw PreconditionError("roots_mod_p: zero polynomial (every residue is a root)");
  uint64_t p = f.modulus();
  std::vector<uint64_t> roots;
  if (f.degree() == 0) return roots;
  if (p <= std::max<uint64_t>(enumeration_threshold, 2)) {
    for (uint64_t x = 0; x < p; ++x)
      if (f.eval(x) == 0) roots.push_back(x);
    return roots;
  }
  bool zero_root = false;
  ModPoly g = strip_zero_root(f.monic(), &zero_root);
  if (zero_root) roots.push_back(0);
  if (g.degree() >= 1) {
    ModPoly xp = mod_pow_x(mpz_class(p), g);
    ModPoly h = mod_gcd(g, xp - ModPoly(p, {0, 1}));
    split_linear_product(h, &roots);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

bool has_root_mod_p(const ModPoly& f, uint64_t enumeration_threshold) {
  if (f.is_zero())
    throw PreconditionError("has_root_mod_p: zero polynomial");
  uint64_t p = f.modulus();
  if (f.degree() == 0) return false;
  if (p <= std::max<uint64_t>(enumeration_threshold, 2)) {
    for (uint64_t x = 0; x < p; ++x)
      if (f.eval(x) == 0) return true;
    return false;
  }
  if (f.coeff(0) == 0) return true;
  ModPoly g = f.monic();
  ModPoly xp = mod_pow_x(mpz_class(p), g);
  ModPoly h = mod_gcd(g, xp - ModPoly(p, {0, 1}));
  return h.degree() >= 1;
}

// --- rootless combinations ---------------------------------------------------

PairCombination rootless_pair_combination(const IntPoly& f, const IntPoly& g,
                                          uint64_t p,
                                          uint64_t enumeration_threshold) {
  if (!is_prime_u64(p))
    throw PreconditionError("rootless_pair_combination: p is not prime");
  if (p > std::max<uint64_t>(enumeration_threshold, 2))
    throw BoundExceededError(
        "rootless_pair_combination: p exceeds the enumeration threshold");
  ModPoly fb = reduce(f, p);
  ModPoly gb = reduce(g, p);
  if (fb.is_zero() && gb.is_zero())
    throw PreconditionError(
        "rootless_pair_combination: both polynomials vanish mod p");

  bool f_has_root = false, g_has_root = false;
  std::vector<bool> ratio_hit(p, false);
  bool s_nonempty = false;
  for (uint64_t x = 0; x < p; ++x) {
    uint64_t fv = fb.is_zero() ? 0 : fb.eval(x);
    uint64_t gv = gb.is_zero() ? 0 : gb.eval(x);
    if (fv == 0 && gv == 0) throw CommonRootError(p, x);
    if (fv == 0) f_has_root = true;
    if (gv == 0) g_has_root = true;
    if (fv != 0 && gv != 0) {
      s_nonempty = true;
      ratio_hit[mul_mod(fv, inv_mod(gv, p), p)] = true;
    }
  }
  if (!f_has_root) return {1, 0};
  if (!g_has_root) return {0, 1};
  if (!s_nonempty) return {1, 1};
  for (uint64_t n = 1; n < p; ++n) {
    if (!ratio_hit[n]) return {1, p - n};  // h = f - n*g
  }
  // unreachable: |Q| <= p-2 once both polynomials have a root
  throw BadPrimeError(p, "no admissible ratio found");
}

namespace {

mpz_class balanced(uint64_t r, uint64_t p) {
  mpz_class v(static_cast<unsigned long>(r));
  if (r > p / 2) v -= mpz_class(static_cast<unsigned long>(p));
  return v;
}

std::vector<mpz_class> build_combination(std::span<const IntPoly> fs,
                                         uint64_t p, uint64_t threshold) {
  if (fs.size() == 2) {
    PairCombination pc;
    try {
      pc = rootless_pair_combination(fs[0], fs[1], p, threshold);
    } catch (const CommonRootError& e) {
      throw BadPrimeError(p, std::string("base case: ") + e.what());
    } catch (const PreconditionError& e) {
      throw BadPrimeError(p, std::string("base case: ") + e.what());
    }
    return {balanced(pc.a, p), balanced(pc.b, p)};
  }
  std::vector<IntPoly> head(fs.begin(), fs.end() - 1);
  IntPoly w = gcd_many(head);
  std::vector<IntPoly> gs;
  gs.reserve(head.size());
  for (const auto& fi : head) gs.push_back(divide_exact(fi, w));
  std::vector<mpz_class> inner = build_combination(gs, p, threshold);
  IntPoly h;
  for (size_t i = 0; i < gs.size(); ++i) h = h + gs[i] * inner[i];
  PairCombination pc;
  try {
    pc = rootless_pair_combination(w * h, fs.back(), p, threshold);
  } catch (const CommonRootError& e) {
    throw BadPrimeError(p, std::string("inductive step: ") + e.what());
  } catch (const PreconditionError& e) {
    throw BadPrimeError(p, std::string("inductive step: ") + e.what());
  }
  std::vector<mpz_class> out;
  out.reserve(fs.size());
  mpz_class s = balanced(pc.a, p);
  for (const auto& c : inner) out.push_back(c * s);
  out.push_back(balanced(pc.b, p));
  return out;
}

}  // namespace

std::vector<mpz_class> rootless_combination(std::span<const IntPoly> fs,
                                            uint64_t p,
                                            uint64_t enumeration_threshold) {
  if (fs.size() < 2)
    throw PreconditionError("rootless_combination: need at least two polynomials");
  IntPoly g = gcd_many(fs);
  if (!(g.degree() == 0 && g.coeff(0) == 1))
    throw PreconditionError("rootless_combination: gcd of the family is not 1");
  if (!is_prime_u64(p))
    throw PreconditionError("rootless_combination: p is not prime");

  std::vector<mpz_class> cs = build_combination(fs, p, enumeration_threshold);

  // re-verify before returning
  IntPoly combo;
  for (size_t i = 0; i < fs.size(); ++i) combo = combo + fs[i] * cs[i];
  ModPoly cb = reduce(combo, p);
  if (cb.is_zero()) throw BadPrimeError(p, "combination vanishes mod p");
  if (has_root_mod_p(cb, enumeration_threshold))
    throw BadPrimeError(p, "verification found a root mod p");
  return cs;
}

namespace {

void collect_prime_factors(const mpz_class& v, std::vector<mpz_class>* out) {
  mpz_class a = abs(v);
  if (a < 2) return;
  for (const auto& [prime, e] : factor(a)) out->push_back(prime);
}

void bad_primes_rec(std::span<const IntPoly> fs, std::vector<mpz_class>* out) {
  if (fs.size() == 2) {
    collect_prime_factors(resultant(fs[0], fs[1]), out);
    collect_prime_factors(fs[0].leading(), out);
    collect_prime_factors(fs[1].leading(), out);
    return;
  }
  std::vector<IntPoly> head(fs.begin(), fs.end() - 1);
  IntPoly w = gcd_many(head);
  std::vector<IntPoly> gs;
  gs.reserve(head.size());
  for (const auto& fi : head) gs.push_back(divide_exact(fi, w));
  bad_primes_rec(gs, out);
  collect_prime_factors(resultant(w, fs.back()), out);
  collect_prime_factors(w.leading(), out);
  collect_prime_factors(fs.back().leading(), out);
}

}  // namespace

std::vector<mpz_class> bad_primes(std::span<const IntPoly> fs) {
  if (fs.size() < 2)
    throw PreconditionError("bad_primes: need at least two polynomials");
  IntPoly g = gcd_many(fs);
  if (!(g.degree() == 0 && g.coeff(0) == 1))
    throw PreconditionError("bad_primes: gcd of the family is not 1");
  std::vector<mpz_class> out;
  bad_primes_rec(fs, &out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace lgpoly
