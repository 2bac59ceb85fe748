#pragma once

#include "sqfree/types.hpp"

namespace sqfree {

// Montgomery arithmetic modulo an odd n, R = 2^64.
class Mont64 {
 public:
  using word = u64;

  explicit Mont64(u64 n);

  u64 modulus() const { return n_; }
  u64 one() const { return one_; }
  u64 to(u64 a) const { return mul(a % n_, r2_); }
  u64 from(u64 a) const { return redc(a); }

  u64 mul(u64 a, u64 b) const { return redc(static_cast<u128>(a) * b); }
  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return (s < a || s >= n_) ? s - n_ : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + (n_ - b); }

 private:
  u64 redc(u128 t) const {
    u64 m = static_cast<u64>(t) * ninv_;
    u128 mn = static_cast<u128>(m) * n_;
    u64 hi = static_cast<u64>(t >> 64);
    u64 mhi = static_cast<u64>(mn >> 64);
    // low halves cancel; the carry is set unless t's low half is zero
    u64 carry = static_cast<u64>(t) != 0 ? 1 : 0;
    u64 res = hi + mhi;
    bool over = res < hi;
    u64 r2 = res + carry;
    over = over || r2 < res;
    if (over || r2 >= n_) r2 -= n_;
    return r2;
  }

  u64 n_;
  u64 ninv_;  // -n^{-1} mod 2^64
  u64 one_;
  u64 r2_;
};

// Montgomery arithmetic modulo an odd n, R = 2^128.
class Mont128 {
 public:
  using word = u128;

  explicit Mont128(u128 n);

  u128 modulus() const { return n_; }
  u128 one() const { return one_; }
  u128 to(u128 a) const { return mul(a % n_, r2_); }
  u128 from(u128 a) const { return redc(a, 0); }

  u128 mul(u128 a, u128 b) const {
    u128 lo, hi;
    mul_wide(a, b, lo, hi);
    return redc(lo, hi);
  }
  u128 add(u128 a, u128 b) const {
    u128 s = a + b;
    return (s < a || s >= n_) ? s - n_ : s;
  }
  u128 sub(u128 a, u128 b) const { return a >= b ? a - b : a + (n_ - b); }

  static void mul_wide(u128 a, u128 b, u128& lo, u128& hi);

 private:
  u128 redc(u128 lo, u128 hi) const;

  u128 n_;
  u128 ninv_;
  u128 one_;
  u128 r2_;
};

}  // namespace sqfree
