#pragma once

// Arithmetic in the prime field Z/p for word-size primes p < 2^63, and the
// dense determinant kernel used as the brute-force Varchenko oracle.

#include <cstdint>
#include <span>
#include <vector>

namespace coxvar {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mod_add(u64 a, u64 b, u64 p) {
  const u64 s = a + b;
  return s >= p ? s - p : s;
}
inline u64 mod_sub(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
inline u64 mod_mul(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }
u64 mod_pow(u64 base, u64 exp, u64 p);
u64 mod_inv(u64 a, u64 p);  // p prime, a != 0

// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime_u64(u64 n);

// The `count` largest primes strictly below `bound`, in decreasing order.
std::vector<u64> primes_below(u64 bound, std::size_t count);

// Default modulus: the largest prime below 2^62.
u64 default_prime();

class ModScalar {
 public:
  ModScalar(u64 value, u64 p) : value_(value % p), p_(p) {}

  u64 value() const { return value_; }
  u64 modulus() const { return p_; }

  ModScalar operator+(ModScalar o) const { return {mod_add(value_, o.value_, p_), p_}; }
  ModScalar operator-(ModScalar o) const { return {mod_sub(value_, o.value_, p_), p_}; }
  ModScalar operator*(ModScalar o) const { return {mod_mul(value_, o.value_, p_), p_}; }
  ModScalar operator-() const { return {value_ == 0 ? 0 : p_ - value_, p_}; }
  ModScalar inverse() const;
  ModScalar operator/(ModScalar o) const { return *this * o.inverse(); }
  bool operator==(const ModScalar&) const = default;

 private:
  u64 value_;
  u64 p_;
};

// Montgomery multiplication for odd p < 2^62.
class Montgomery {
 public:
  explicit Montgomery(u64 p);

  u64 modulus() const { return p_; }
  u64 to_mont(u64 a) const { return mul(a % p_, r2_); }
  u64 from_mont(u64 a) const { return reduce(static_cast<u128>(a)); }
  u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }

 private:
  u64 reduce(u128 t) const {
    const u64 m = static_cast<u64>(t) * neg_inv_;
    const u64 u = static_cast<u64>((t + static_cast<u128>(m) * p_) >> 64);
    return u >= p_ ? u - p_ : u;
  }
  u64 p_;
  u64 neg_inv_;  // -p^-1 mod 2^64
  u64 r2_;       // 2^128 mod p
};

// Dense square matrix over Z/p, row-major.
class ModMatrix {
 public:
  ModMatrix(std::size_t n, u64 p) : n_(n), p_(p), a_(n * n, 0) {}

  std::size_t size() const { return n_; }
  u64 modulus() const { return p_; }
  u64& at(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
  u64 at(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }
  std::span<u64> row(std::size_t r) { return {a_.data() + r * n_, n_}; }
  std::span<const u64> data() const { return a_; }
  std::span<u64> data() { return a_; }

 private:
  std::size_t n_;
  u64 p_;
  std::vector<u64> a_;
};

// Gaussian elimination with first-nonzero row pivoting. The serial routine is
// the reference; the parallel one distributes row updates over OpenMP threads
// and returns a bit-identical result for any thread count.
u64 det_mod_p_serial(ModMatrix m);
u64 det_mod_p(ModMatrix m);

// Cofactor (Laplace) expansion; test oracle for small matrices.
u64 det_mod_p_cofactor(const ModMatrix& m);

}  // namespace coxvar
