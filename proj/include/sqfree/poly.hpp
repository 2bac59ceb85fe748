#pragma once

#include <array>
#include <string>
#include <vector>

#include "sqfree/types.hpp"

namespace sqfree {

/// Integer polynomial of degree <= 4, a4 T^4 + a3 T^3 + a2 T^2 + a1 T + a0.
class QuarticPoly {
 public:
  /// Coefficients from the leading term down: {a4, a3, a2, a1, a0}.
  explicit QuarticPoly(std::array<i64, 5> high_to_low);

  static QuarticPoly cyc8();   // T^4 + 1
  static QuarticPoly ferm2();  // T^4 + 2
  static QuarticPoly dihed();  // T^4 - 2T^2 + 2
  static QuarticPoly phi5();   // T^4 + T^3 + T^2 + T + 1
  static QuarticPoly phi12();  // T^4 - T^2 + 1

  /// a_i for 0 <= i <= 4.
  i64 coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }
  int degree() const { return degree_; }
  bool is_biquadratic() const { return c_[3] == 0 && c_[1] == 0; }

  /// Exact value; RangeError when it leaves the signed 128-bit range.
  i128 eval(i128 n) const;
  /// f(n) mod m, using 128-bit intermediate products.
  u64 eval_mod(u64 n, u64 m) const;

  QuarticPoly derivative() const;

  /// Discriminant via the Sylvester resultant; RangeError on overflow.
  i128 discriminant() const;
  bool is_separable() const { return degree_ >= 1 && discriminant() != 0; }

  std::string to_string() const;

  friend bool operator==(const QuarticPoly&, const QuarticPoly&) = default;

 private:
  std::array<i64, 5> c_{};  // c_[i] is the coefficient of T^i
  int degree_ = 0;
};

/// f with coefficients reduced into [0, m), for hot evaluation loops.
class ModPoly {
 public:
  ModPoly(const QuarticPoly& f, u64 m);
  u64 modulus() const { return m_; }
  u64 eval(u64 n) const;
  bool is_zero() const;
  u64 coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }

 private:
  std::array<u64, 5> c_{};
  u64 m_;
};

/// Dense integer polynomial, low-order coefficient first.
using IntPoly = std::vector<i64>;

std::string poly_to_string(const IntPoly& p);

}  // namespace sqfree
