#include "sqfree/montgomery.hpp"

namespace sqfree {

namespace {

template <typename U>
U neg_inverse(U n) {
  U inv = n;  // correct to 3 bits for odd n
  for (int i = 0; i < 7; ++i) inv *= U(2) - n * inv;
  return U(0) - inv;
}

template <typename U>
U double_mod(U x, U n) {
  return x >= n - x ? x - (n - x) : x + x;
}

}  // namespace

Mont64::Mont64(u64 n) : n_(n), ninv_(neg_inverse(n)) {
  if (n % 2 == 0 || n < 3) throw InvalidArgument("Montgomery modulus must be odd and >= 3");
  one_ = static_cast<u64>((static_cast<u128>(1) << 64) % n);
  r2_ = static_cast<u64>(static_cast<u128>(one_) * one_ % n);
}

void Mont128::mul_wide(u128 a, u128 b, u128& lo, u128& hi) {
  u64 a0 = static_cast<u64>(a), a1 = static_cast<u64>(a >> 64);
  u64 b0 = static_cast<u64>(b), b1 = static_cast<u64>(b >> 64);
  u128 p00 = static_cast<u128>(a0) * b0;
  u128 p01 = static_cast<u128>(a0) * b1;
  u128 p10 = static_cast<u128>(a1) * b0;
  u128 p11 = static_cast<u128>(a1) * b1;
  u128 mid = (p00 >> 64) + static_cast<u64>(p01) + static_cast<u64>(p10);
  lo = (mid << 64) | static_cast<u64>(p00);
  hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
}

u128 Mont128::redc(u128 lo, u128 hi) const {
  u128 m = lo * ninv_;
  u128 mlo, mhi;
  mul_wide(m, n_, mlo, mhi);
  u128 carry = lo != 0 ? 1 : 0;
  u128 res = hi + mhi;
  bool over = res < hi;
  u128 r = res + carry;
  over = over || r < res;
  if (over || r >= n_) r -= n_;
  return r;
}

Mont128::Mont128(u128 n) : n_(n), ninv_(neg_inverse(n)) {
  if (n % 2 == 0 || n < 3) throw InvalidArgument("Montgomery modulus must be odd and >= 3");
  one_ = (u128(0) - n) % n;  // 2^128 mod n
  u128 r2 = one_;
  for (int i = 0; i < 128; ++i) r2 = double_mod(r2, n);
  r2_ = r2;
}

}  // namespace sqfree
