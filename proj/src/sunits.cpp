#include "lgpoly/sunits.hpp"

#include <algorithm>

#include "lgpoly/scan.hpp"

namespace lgpoly {

Support::Support(std::vector<uint64_t> primes) : primes_(std::move(primes)) {
  if (primes_.empty()) throw PreconditionError("Support: empty prime set");
  for (size_t i = 0; i < primes_.size(); ++i) {
    if (!is_prime_u64(primes_[i]))
      throw PreconditionError("Support: " + std::to_string(primes_[i]) +
                              " is not prime");
    if (i > 0 && primes_[i] <= primes_[i - 1])
      throw PreconditionError("Support: primes must be strictly increasing");
  }
}

bool Support::contains(uint64_t p) const {
  return std::binary_search(primes_.begin(), primes_.end(), p);
}

size_t Support::index_of(uint64_t p) const {
  auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
  if (it == primes_.end() || *it != p)
    throw PreconditionError("Support: prime " + std::to_string(p) +
                            " not in the support");
  return static_cast<size_t>(it - primes_.begin());
}

SUnit::SUnit(Support support, bool negative, std::vector<mpz_class> exponents)
    : support_(std::move(support)),
      negative_(negative),
      exps_(std::move(exponents)) {
  if (exps_.size() != support_.size())
    throw PreconditionError("SUnit: exponent vector length != support size");
}

SUnit SUnit::identity(Support support) {
  std::vector<mpz_class> e(support.size(), 0);
  return SUnit(std::move(support), false, std::move(e));
}

SUnit SUnit::minus_one(Support support) {
  std::vector<mpz_class> e(support.size(), 0);
  return SUnit(std::move(support), true, std::move(e));
}

SUnit SUnit::generator(Support support, uint64_t q) {
  std::vector<mpz_class> e(support.size(), 0);
  e[support.index_of(q)] = 1;
  return SUnit(std::move(support), false, std::move(e));
}

bool SUnit::is_torsion() const {
  for (const auto& e : exps_)
    if (e != 0) return false;
  return true;
}

bool SUnit::is_identity() const { return !negative_ && is_torsion(); }

mpq_class SUnit::to_rational() const {
  mpz_class num = 1, den = 1;
  for (size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] == 0) continue;
    if (!exps_[i].fits_slong_p())
      throw BoundExceededError("to_rational: exponent too large to expand");
    long e = exps_[i].get_si();
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), support_.primes()[i],
                  static_cast<unsigned long>(e < 0 ? -e : e));
    (e > 0 ? num : den) *= pw;
  }
  if (negative_) num = -num;
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

std::string SUnit::to_string() const {
  std::string out = negative_ ? "-" : "";
  bool any = false;
  for (size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] == 0) continue;
    if (any) out += "*";
    out += std::to_string(support_.primes()[i]);
    if (exps_[i] != 1) out += "^" + exps_[i].get_str();
    any = true;
  }
  if (!any) out += "1";
  return out;
}

bool SUnit::operator==(const SUnit& rhs) const {
  return support_ == rhs.support_ && negative_ == rhs.negative_ &&
         exps_ == rhs.exps_;
}

SUnit from_rational(const mpz_class& num, const mpz_class& den,
                    const Support& support) {
  if (den == 0) throw PreconditionError("from_rational: zero denominator");
  if (num == 0) throw PreconditionError("from_rational: zero is not a unit");
  mpq_class q(num, den);
  q.canonicalize();
  bool negative = q < 0;
  mpz_class n = abs(q.get_num());
  mpz_class d = q.get_den();
  std::vector<mpz_class> exps(support.size(), 0);
  for (size_t i = 0; i < support.size(); ++i) {
    uint64_t p = support.primes()[i];
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      n /= static_cast<unsigned long>(p);
      exps[i] += 1;
    }
    while (mpz_divisible_ui_p(d.get_mpz_t(), p)) {
      d /= static_cast<unsigned long>(p);
      exps[i] -= 1;
    }
  }
  if (n != 1) throw NotSmoothError(smallest_prime_factor(n));
  if (d != 1) throw NotSmoothError(smallest_prime_factor(d));
  return SUnit(support, negative, std::move(exps));
}

SUnit from_rational(const std::string& text, const Support& support) {
  mpq_class q;
  if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0 || q.get_den() == 0)
    throw ParseError("bad rational '" + text + "'");
  q.canonicalize();
  return from_rational(q.get_num(), q.get_den(), support);
}

SUnit add(const SUnit& x, const SUnit& y) {
  if (!(x.support() == y.support()))
    throw PreconditionError("add: support mismatch");
  std::vector<mpz_class> e(x.exponents());
  for (size_t i = 0; i < e.size(); ++i) e[i] += y.exponents()[i];
  return SUnit(x.support(), x.negative() != y.negative(), std::move(e));
}

SUnit neg(const SUnit& x) {
  std::vector<mpz_class> e(x.exponents());
  for (auto& v : e) v = -v;
  return SUnit(x.support(), x.negative(), std::move(e));
}

SUnit scalar_mul(const mpz_class& k, const SUnit& x) {
  std::vector<mpz_class> e(x.exponents());
  for (auto& v : e) v *= k;
  bool neg_bit = x.negative() && mpz_odd_p(k.get_mpz_t());
  return SUnit(x.support(), neg_bit, std::move(e));
}

ReductionContext::ReductionContext(uint64_t p_in, const Support& s,
                                   uint64_t trial_division_bound)
    : p(p_in), support(s) {
  if (!is_prime_u64(p))
    throw PreconditionError("ReductionContext: p is not prime");
  if (p <= 2)
    throw PreconditionError("ReductionContext: p > 2 required (A2)");
  if (support.contains(p))
    throw PreconditionError("ReductionContext: p lies in the support");
  TrialFactorization tf = trial_factor(p - 1, trial_division_bound);
  if (tf.cofactor != 1) {
    if (is_prime_u64(tf.cofactor)) {
      tf.factors.push_back({tf.cofactor, 1});
    } else {
      throw BoundExceededError(
          "ReductionContext: p-1 has a composite cofactor beyond the trial "
          "division bound");
    }
  }
  std::sort(tf.factors.begin(), tf.factors.end(),
            [](const PrimePower& a, const PrimePower& b) {
              return a.prime < b.prime;
            });
  group_order_factors = std::move(tf.factors);
}

uint64_t reduce_mod(const SUnit& x, const ReductionContext& ctx) {
  if (!(x.support() == ctx.support))
    throw PreconditionError("reduce_mod: support mismatch");
  uint64_t p = ctx.p;
  uint64_t r = 1;
  for (size_t i = 0; i < x.exponents().size(); ++i) {
    // exponents act modulo |F_p^*| = p - 1
    uint64_t e = mpz_fdiv_ui(x.exponents()[i].get_mpz_t(), p - 1);
    r = mul_mod(r, pow_mod(x.support().primes()[i] % p, e, p), p);
  }
  if (x.negative()) r = p - r;
  return r;
}

uint64_t order_mod(const SUnit& x, const ReductionContext& ctx) {
  uint64_t r = reduce_mod(x, ctx);
  uint64_t order = ctx.p - 1;
  for (const auto& [l, e] : ctx.group_order_factors) {
    for (unsigned i = 0; i < e; ++i) {
      if (order % l != 0) break;
      if (pow_mod(r, order / l, ctx.p) != 1) break;
      order /= l;
    }
  }
  return order;
}

bool independent(std::span<const SUnit> points) {
  if (points.empty()) return true;
  const Support& s = points.front().support();
  size_t cols = s.size();
  std::vector<std::vector<mpz_class>> m;
  for (const auto& pt : points) {
    if (!(pt.support() == s))
      throw PreconditionError("independent: support mismatch");
    m.push_back(pt.exponents());
  }
  if (m.size() > cols) return false;
  // rational Gaussian elimination; rank must equal the point count
  std::vector<std::vector<mpq_class>> q(m.size());
  for (size_t i = 0; i < m.size(); ++i)
    q[i].assign(m[i].begin(), m[i].end());
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < q.size(); ++col) {
    size_t pivot = rank;
    while (pivot < q.size() && q[pivot][col] == 0) ++pivot;
    if (pivot == q.size()) continue;
    std::swap(q[rank], q[pivot]);
    for (size_t i = rank + 1; i < q.size(); ++i) {
      if (q[i][col] == 0) continue;
      mpq_class factor = q[i][col] / q[rank][col];
      for (size_t j = col; j < cols; ++j) q[i][j] -= factor * q[rank][j];
    }
    ++rank;
  }
  return rank == q.size();
}

bool torsion_injects(const ReductionContext& ctx) {
  // -1 and +1 stay distinct exactly when p > 2, which the context guarantees
  return ctx.p > 2;
}

DensityReport a1_density_experiment(std::span<const SUnit> points, uint64_t l,
                                    std::span<const unsigned> ks,
                                    uint64_t prime_bound, unsigned workers) {
  if (points.empty())
    throw PreconditionError("a1_density_experiment: no points");
  if (points.size() != ks.size())
    throw PreconditionError("a1_density_experiment: |ks| != |points|");
  if (!is_prime_u64(l))
    throw PreconditionError("a1_density_experiment: l must be prime");
  if (!independent(points))
    throw PreconditionError("a1_density_experiment: points are dependent");

  const Support& s = points.front().support();
  std::vector<uint64_t> primes;
  for (uint64_t p : primes_up_to(prime_bound))
    if (p > 2 && !s.contains(p)) primes.push_back(p);

  std::function<uint8_t(uint64_t)> matches = [&](uint64_t p) -> uint8_t {
    ReductionContext ctx(p, s);
    for (size_t i = 0; i < points.size(); ++i) {
      uint64_t ord = order_mod(points[i], ctx);
      unsigned v = 0;
      while (ord % l == 0) {
        ord /= l;
        ++v;
      }
      if (v != ks[i]) return 0;  // l^k must divide ord exactly
    }
    return 1;
  };
  std::vector<uint8_t> hits = map_primes<uint8_t>(primes, workers, matches);

  DensityReport report;
  report.prime_bound = prime_bound;
  report.l = l;
  report.ks.assign(ks.begin(), ks.end());
  report.scanned = primes.size();
  for (uint8_t h : hits)
    if (h) ++report.matching;
  report.frequency =
      report.scanned == 0
          ? mpq_class(0)
          : mpq_class(static_cast<unsigned long>(report.matching),
                      static_cast<unsigned long>(report.scanned));
  report.frequency.canonicalize();
  for (const auto& pt : points) {
    report.points.push_back(pt.to_string());
    report.point_values.push_back(pt.to_rational().get_str());
  }
  return report;
}

}  // namespace lgpoly
