#include "lgpoly/arith.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "lgpoly/errors.hpp"

namespace lgpoly {

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m) {
  if (m == 1) return 0;
  uint64_t r = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

uint64_t inv_mod(uint64_t a, uint64_t m) {
  // extended Euclid on signed 128-bit accumulators
  __int128 t = 0, new_t = 1;
  uint64_t r = m, new_r = a % m;
  while (new_r != 0) {
    uint64_t q = r / new_r;
    __int128 tmp_t = t - static_cast<__int128>(q) * new_t;
    t = new_t;
    new_t = tmp_t;
    uint64_t tmp_r = r - q * new_r;
    r = new_r;
    new_r = tmp_r;
  }
  if (r != 1)
    throw PreconditionError("inv_mod: argument not invertible modulo m");
  if (t < 0) t += m;
  return static_cast<uint64_t>(t);
}

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                     23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic witness set for n < 3.3e24
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                     23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_prime(const mpz_class& n) {
  if (n <= 0) return false;
  if (n.fits_ulong_p()) return is_prime_u64(n.get_ui());
  return mpz_probab_prime_p(n.get_mpz_t(), 32) > 0;
}

std::vector<uint64_t> primes_up_to(uint64_t bound) {
  std::vector<uint64_t> primes;
  if (bound < 2) return primes;
  std::vector<bool> composite(bound + 1, false);
  for (uint64_t i = 2; i * i <= bound; ++i) {
    if (composite[i]) continue;
    for (uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  for (uint64_t i = 2; i <= bound; ++i)
    if (!composite[i]) primes.push_back(i);
  return primes;
}

TrialFactorization trial_factor(uint64_t n, uint64_t bound) {
  TrialFactorization out;
  if (n == 0) throw PreconditionError("trial_factor: n must be positive");
  auto strip = [&](uint64_t p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.factors.push_back({p, e});
  };
  strip(2);
  for (uint64_t p = 3; p <= bound && p * p <= n; p += 2) strip(p);
  if (n > 1 &&
      static_cast<unsigned __int128>(bound) * bound >= n) {
    // remaining cofactor below bound^2 is prime
    out.factors.push_back({n, 1});
    n = 1;
  }
  out.cofactor = n;
  return out;
}

namespace {

uint64_t pollard_brent(uint64_t n) {
  // Brent's cycle-finding variant; n odd composite.
  for (uint64_t c = 1;; ++c) {
    auto step = [&](uint64_t v) { return (mul_mod(v, v, n) + c) % n; };
    uint64_t y = 2, g = 1, r = 1, q = 1, x = 0, ys = 0;
    const uint64_t m = 128;
    while (g == 1) {
      x = y;
      for (uint64_t i = 0; i < r; ++i) y = step(y);
      for (uint64_t k = 0; k < r && g == 1; k += m) {
        ys = y;
        for (uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = step(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
      r *= 2;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = step(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      }
    }
    if (g != n) return g;
  }
}

void factor_rec(uint64_t n, std::vector<uint64_t>& primes) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    primes.push_back(n);
    return;
  }
  uint64_t d = pollard_brent(n);
  factor_rec(d, primes);
  factor_rec(n / d, primes);
}

}  // namespace

std::vector<PrimePower> factor_u64(uint64_t n) {
  if (n == 0) throw PreconditionError("factor_u64: n must be positive");
  std::vector<PrimePower> out;
  auto strip = [&](uint64_t p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.push_back({p, e});
  };
  strip(2);
  for (uint64_t p = 3; p < 100000 && p * p <= n; p += 2) strip(p);
  if (n > 1) {
    std::vector<uint64_t> rest;
    factor_rec(n, rest);
    std::sort(rest.begin(), rest.end());
    for (size_t i = 0; i < rest.size();) {
      size_t j = i;
      while (j < rest.size() && rest[j] == rest[i]) ++j;
      out.push_back({rest[i], static_cast<unsigned>(j - i)});
      i = j;
    }
  }
  return out;
}

namespace {

mpz_class pollard_brent_mpz(const mpz_class& n) {
  // generous but finite budget; throws if exhausted
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(20240901ul);
  for (int attempt = 0; attempt < 64; ++attempt) {
    mpz_class y = rng.get_z_range(n - 1) + 1;
    mpz_class c = rng.get_z_range(n - 1) + 1;
    mpz_class m = 128, g = 1, r = 1, q = 1, x, ys;
    long iterations = 0;
    while (g == 1) {
      x = y;
      for (mpz_class i = 0; i < r; ++i) y = (y * y + c) % n;
      mpz_class k = 0;
      while (k < r && g == 1) {
        ys = y;
        mpz_class lim = std::min(m, mpz_class(r - k));
        for (mpz_class i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          q = q * abs(x - y) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
      if (++iterations > 1 << 20)
        throw BoundExceededError("factor: rho iteration budget exhausted");
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = (ys * ys + c) % n;
        mpz_class diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      }
    }
    if (g != n) return g;
  }
  throw BoundExceededError("factor: could not split composite cofactor");
}

void factor_rec_mpz(const mpz_class& n, std::vector<mpz_class>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  mpz_class d = pollard_brent_mpz(n);
  factor_rec_mpz(d, primes);
  factor_rec_mpz(n / d, primes);
}

}  // namespace

std::vector<MpzPrimePower> factor(const mpz_class& n) {
  mpz_class m = abs(n);
  if (m == 0) throw PreconditionError("factor: n must be nonzero");
  if (m.fits_ulong_p()) {
    std::vector<MpzPrimePower> out;
    for (const auto& [p, e] : factor_u64(m.get_ui()))
      out.push_back({mpz_class(static_cast<unsigned long>(p)), e});
    return out;
  }
  std::vector<MpzPrimePower> out;
  for (uint64_t p : {2ull, 3ull, 5ull}) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      m /= static_cast<unsigned long>(p);
      ++e;
    }
    if (e > 0) out.push_back({mpz_class(static_cast<unsigned long>(p)), e});
  }
  for (uint64_t p = 7; p < 100000; p += 2) {
    if (m == 1) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      m /= static_cast<unsigned long>(p);
      ++e;
    }
    if (e > 0) out.push_back({mpz_class(static_cast<unsigned long>(p)), e});
  }
  if (m > 1) {
    std::vector<mpz_class> rest;
    factor_rec_mpz(m, rest);
    std::sort(rest.begin(), rest.end());
    for (size_t i = 0; i < rest.size();) {
      size_t j = i;
      while (j < rest.size() && rest[j] == rest[i]) ++j;
      out.push_back({rest[i], static_cast<unsigned>(j - i)});
      i = j;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.prime < b.prime; });
  return out;
}

mpz_class smallest_prime_factor(const mpz_class& n) {
  mpz_class m = abs(n);
  if (m < 2) throw PreconditionError("smallest_prime_factor: |n| >= 2 required");
  auto fs = factor(m);
  return fs.front().prime;
}

}  // namespace lgpoly
