#include "coxvar/modular.hpp"

#include <omp.h>

#include <utility>

#include "coxvar/error.hpp"

namespace coxvar {

u64 mod_pow(u64 base, u64 exp, u64 p) {
  u64 result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1) result = mod_mul(result, base, p);
    base = mod_mul(base, base, p);
    exp >>= 1;
  }
  return result;
}

u64 mod_inv(u64 a, u64 p) {
  if (a % p == 0) throw Error(ErrorKind::DivisionByZero, "modular inverse of zero");
  return mod_pow(a, p - 2, p);
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mod_mul(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<u64> primes_below(u64 bound, std::size_t count) {
  std::vector<u64> out;
  for (u64 c = bound - 1; out.size() < count && c >= 2; --c) {
    if (is_prime_u64(c)) out.push_back(c);
  }
  return out;
}

u64 default_prime() {
  static const u64 p = primes_below(u64{1} << 62, 1).front();
  return p;
}

ModScalar ModScalar::inverse() const { return {mod_inv(value_, p_), p_}; }

Montgomery::Montgomery(u64 p) : p_(p) {
  if ((p & 1) == 0 || p >= (u64{1} << 62))
    throw Error(ErrorKind::Internal, "Montgomery modulus must be odd and below 2^62");
  u64 inv = p;  // Newton iteration: inv = p^-1 mod 2^64
  for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
  neg_inv_ = ~inv + 1;
  const u64 r = static_cast<u64>((static_cast<u128>(1) << 64) % p);
  r2_ = mod_mul(r, r, p);
}

namespace {

// Shared elimination skeleton. `update_rows` performs the Schur-complement
// step for one pivot; only it differs between serial and parallel variants.
template <typename UpdateRows>
u64 eliminate(ModMatrix& m, UpdateRows update_rows) {
  const std::size_t n = m.size();
  const u64 p = m.modulus();
  if (n == 0) return 1 % p;
  if (p < 3 || p >= (u64{1} << 62)) {
    // Plain arithmetic fallback for moduli Montgomery cannot handle.
    u64 det = 1;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t piv = k;
      while (piv < n && m.at(piv, k) % p == 0) ++piv;
      if (piv == n) return 0;
      if (piv != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
        det = mod_sub(0, det, p);
      }
      const u64 pv = m.at(k, k) % p;
      det = mod_mul(det, pv, p);
      const u64 inv = mod_inv(pv, p);
      for (std::size_t i = k + 1; i < n; ++i) {
        const u64 f = mod_mul(m.at(i, k) % p, inv, p);
        if (f == 0) continue;
        for (std::size_t j = k; j < n; ++j) m.at(i, j) = mod_sub(m.at(i, j) % p, mod_mul(f, m.at(k, j), p), p);
      }
    }
    return det;
  }
  const Montgomery mont(p);
  for (u64& x : m.data()) x = mont.to_mont(x);
  u64 det = mont.to_mont(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m.at(piv, k) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
      det = mod_sub(0, det, p);
    }
    det = mont.mul(det, m.at(k, k));
    // pivot a*R  ->  a^-1 * R
    const u64 inv = mont.to_mont(mod_inv(mont.from_mont(m.at(k, k)), p));
    update_rows(m, mont, k, inv);
  }
  return mont.from_mont(det);
}

inline void update_one_row(ModMatrix& m, const Montgomery& mont, std::size_t k, std::size_t i, u64 inv) {
  const std::size_t n = m.size();
  const u64 p = m.modulus();
  const u64 f = mont.mul(m.at(i, k), inv);
  if (f == 0) return;
  const u64* pivot_row = m.data().data() + k * n;
  u64* target = m.data().data() + i * n;
  for (std::size_t j = k; j < n; ++j) target[j] = mod_sub(target[j], mont.mul(f, pivot_row[j]), p);
}

}  // namespace

u64 det_mod_p_serial(ModMatrix m) {
  return eliminate(m, [](ModMatrix& a, const Montgomery& mont, std::size_t k, u64 inv) {
    for (std::size_t i = k + 1; i < a.size(); ++i) update_one_row(a, mont, k, i, inv);
  });
}

u64 det_mod_p(ModMatrix m) {
  return eliminate(m, [](ModMatrix& a, const Montgomery& mont, std::size_t k, u64 inv) {
    const auto n = static_cast<std::int64_t>(a.size());
#pragma omp parallel for schedule(static) if (n - static_cast<std::int64_t>(k) > 64)
    for (std::int64_t i = static_cast<std::int64_t>(k) + 1; i < n; ++i)
      update_one_row(a, mont, k, static_cast<std::size_t>(i), inv);
  });
}

namespace {

u64 cofactor_rec(const ModMatrix& m, std::vector<std::size_t>& cols, std::size_t row) {
  const u64 p = m.modulus();
  if (cols.empty()) return 1 % p;
  u64 acc = 0;
  for (std::size_t idx = 0; idx < cols.size(); ++idx) {
    const std::size_t c = cols[idx];
    const u64 entry = m.at(row, c) % p;
    if (entry == 0) continue;
    std::vector<std::size_t> rest;
    rest.reserve(cols.size() - 1);
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (j != idx) rest.push_back(cols[j]);
    const u64 minor = cofactor_rec(m, rest, row + 1);
    const u64 term = mod_mul(entry, minor, p);
    acc = (idx % 2 == 0) ? mod_add(acc, term, p) : mod_sub(acc, term, p);
  }
  return acc;
}

}  // namespace

u64 det_mod_p_cofactor(const ModMatrix& m) {
  std::vector<std::size_t> cols(m.size());
  for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = i;
  return cofactor_rec(m, cols, 0);
}

}  // namespace coxvar
