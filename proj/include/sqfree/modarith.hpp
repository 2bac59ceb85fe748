#pragma once

#include <optional>
#include <vector>

#include "sqfree/types.hpp"

namespace sqfree {

class QuarticPoly;

/// A modulus m >= 2 that fits a machine word.
class Modulus {
 public:
  explicit Modulus(u64 value) : value_(value) {
    if (value < 2) throw InvalidArgument("modulus must be at least 2");
  }
  u64 value() const { return value_; }
  operator u64() const { return value_; }

 private:
  u64 value_;
};

/// Representation p = a^2 + D*b^2 of a prime by a positive definite form.
struct QfRep {
  u64 a = 0;
  u64 b = 0;
  u64 D = 0;
  friend bool operator==(const QfRep&, const QfRep&) = default;
};

struct PrimePower {
  u128 p = 0;
  unsigned e = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

inline u64 mul_mod(u64 a, u64 b, Modulus m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m.value());
}

inline u64 add_mod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  return (s < a || s >= m) ? s - m : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

/// Reduces a signed value into [0, m).
u64 reduce(i64 a, u64 m);
u64 reduce(i128 a, u64 m);

u64 pow_mod(u64 a, u64 e, Modulus m);

/// Inverse of a modulo m, or nothing when gcd(a, m) != 1. m may be 1.
std::optional<u64> inv_mod(u64 a, u64 m);

u64 gcd(u64 a, u64 b);
u128 gcd(u128 a, u128 b);

/// Jacobi symbol (a|n) for odd n >= 1.
int jacobi(i64 a, u64 n);
int jacobi_u(u64 a, u64 n);

/// Square root modulo an odd prime (p = 2 is also accepted). Returns the
/// root r with r <= p - r, or nothing when a is a non-residue.
std::optional<u64> sqrt_mod(u64 a, u64 p);

/// True iff a^((p-1)/4) == 1 mod p. Requires p prime, p = 1 mod 4, p !| a.
bool quartic_residue(u64 a, u64 p);

/// Lifts a simple root r of f mod p to the unique root mod p^k congruent to r.
u64 hensel_lift(const QuarticPoly& f, u64 r, u64 p, unsigned k);

/// x mod m1*m2 with x = r1 (m1), x = r2 (m2). Moduli must be coprime; 1 is
/// allowed.
u64 crt_combine(u64 r1, u64 m1, u64 r2, u64 m2);

/// Exact below 2^64; above, 64 Miller-Rabin rounds plus a strong Lucas test.
bool is_prime(WideInt n);

/// Prime factorization in ascending order of primes. factorize(1) is empty.
std::vector<PrimePower> factorize(WideInt n);

/// mu^2(n) for n >= 1.
bool is_squarefree(WideInt n);

/// a^2 + D*b^2 = p, or nothing. For D = 1 the representation is normalized
/// with a odd and b even.
std::optional<QfRep> cornacchia(u64 p, u64 D);

/// Primes p <= limit with p = a mod q.
std::vector<u64> primes_in_ap(u64 q, u64 a, u64 limit);

u128 int_sqrt(u128 n);
u64 int_sqrt(u64 n);
u128 int_cbrt(u128 n);
bool is_perfect_square(u128 n);

/// p^k, or RangeError if it does not fit 64 bits.
u64 checked_pow(u64 p, unsigned k);

namespace detail {
// Unchecked variants for hot loops; p must already be known prime.
std::optional<u64> sqrt_mod_prime(u64 a, u64 p);
}  // namespace detail

}  // namespace sqfree
