#include "sqfree/poly.hpp"

#include <sstream>

#include "sqfree/modarith.hpp"

namespace sqfree {

namespace {

i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw RangeError("integer overflow in polynomial arithmetic");
  return r;
}

i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw RangeError("integer overflow in polynomial arithmetic");
  return r;
}

i128 checked_sub(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw RangeError("integer overflow in polynomial arithmetic");
  return r;
}

// Fraction-free Gaussian elimination (Bareiss); every division is exact.
i128 bareiss_determinant(std::vector<std::vector<i128>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  int sign = 1;
  i128 prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        i128 t = checked_sub(checked_mul(a[i][j], a[k][k]), checked_mul(a[i][k], a[k][j]));
        a[i][j] = t / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace

QuarticPoly::QuarticPoly(std::array<i64, 5> high_to_low) {
  for (int i = 0; i < 5; ++i) c_[static_cast<std::size_t>(i)] = high_to_low[static_cast<std::size_t>(4 - i)];
  degree_ = -1;
  for (int i = 4; i >= 0; --i) {
    if (c_[static_cast<std::size_t>(i)] != 0) {
      degree_ = i;
      break;
    }
  }
  if (degree_ < 0) throw InvalidArgument("polynomial is identically zero");
}

QuarticPoly QuarticPoly::cyc8() { return QuarticPoly({1, 0, 0, 0, 1}); }
QuarticPoly QuarticPoly::ferm2() { return QuarticPoly({1, 0, 0, 0, 2}); }
QuarticPoly QuarticPoly::dihed() { return QuarticPoly({1, 0, -2, 0, 2}); }
QuarticPoly QuarticPoly::phi5() { return QuarticPoly({1, 1, 1, 1, 1}); }
QuarticPoly QuarticPoly::phi12() { return QuarticPoly({1, 0, -1, 0, 1}); }

i128 QuarticPoly::eval(i128 n) const {
  i128 acc = 0;
  for (int i = degree_; i >= 0; --i) acc = checked_add(checked_mul(acc, n), c_[static_cast<std::size_t>(i)]);
  return acc;
}

u64 QuarticPoly::eval_mod(u64 n, u64 m) const { return ModPoly(*this, m).eval(n); }

QuarticPoly QuarticPoly::derivative() const {
  if (degree_ == 0) throw InvalidArgument("derivative of a constant is zero");
  return QuarticPoly({0, c_[4] * 4, c_[3] * 3, c_[2] * 2, c_[1]});
}

i128 QuarticPoly::discriminant() const {
  const int n = degree_;
  if (n == 0) return 0;
  if (n == 1) return 1;
  // Sylvester matrix of f (degree n) and f' (degree n - 1).
  const int size = 2 * n - 1;
  std::vector<std::vector<i128>> s(static_cast<std::size_t>(size), std::vector<i128>(static_cast<std::size_t>(size), 0));
  for (int row = 0; row < n - 1; ++row)
    for (int i = 0; i <= n; ++i) s[static_cast<std::size_t>(row)][static_cast<std::size_t>(row + i)] = c_[static_cast<std::size_t>(n - i)];
  for (int row = 0; row < n; ++row)
    for (int i = 0; i < n; ++i)
      s[static_cast<std::size_t>(n - 1 + row)][static_cast<std::size_t>(row + i)] =
          checked_mul(c_[static_cast<std::size_t>(n - i)], n - i);
  i128 res = bareiss_determinant(std::move(s));
  i128 lead = c_[static_cast<std::size_t>(n)];
  if (res % lead != 0) throw Inconsistency("resultant not divisible by the leading coefficient");
  i128 d = res / lead;
  return (n * (n - 1) / 2) % 2 == 1 ? -d : d;
}

std::string QuarticPoly::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (int i = degree_; i >= 0; --i) {
    i64 a = c_[static_cast<std::size_t>(i)];
    if (a == 0) continue;
    if (first) {
      if (a < 0) out << "-";
    } else {
      out << (a < 0 ? " - " : " + ");
    }
    u64 mag = a < 0 ? static_cast<u64>(-(a + 1)) + 1 : static_cast<u64>(a);
    if (mag != 1 || i == 0) out << mag;
    if (i >= 1) out << "T";
    if (i >= 2) out << "^" << i;
    first = false;
  }
  return out.str();
}

ModPoly::ModPoly(const QuarticPoly& f, u64 m) : m_(m) {
  if (m == 0) throw InvalidArgument("modulus must be positive");
  for (int i = 0; i < 5; ++i) c_[static_cast<std::size_t>(i)] = reduce(f.coeff(i), m);
}

u64 ModPoly::eval(u64 n) const {
  n %= m_;
  u128 acc = c_[4];
  for (int i = 3; i >= 0; --i) acc = (acc * n + c_[static_cast<std::size_t>(i)]) % m_;
  return static_cast<u64>(acc);
}

bool ModPoly::is_zero() const {
  for (u64 c : c_)
    if (c != 0) return false;
  return true;
}

std::string poly_to_string(const IntPoly& p) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = p.size(); k-- > 0;) {
    i64 a = p[k];
    if (a == 0) continue;
    if (first) {
      if (a < 0) out << "-";
    } else {
      out << (a < 0 ? " - " : " + ");
    }
    u64 mag = a < 0 ? static_cast<u64>(-a) : static_cast<u64>(a);
    if (mag != 1 || k == 0) out << mag;
    if (k >= 1) out << "T";
    if (k >= 2) out << "^" << k;
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

}  // namespace sqfree
