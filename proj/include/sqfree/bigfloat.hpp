#pragma once

#include <mpfr.h>

#include <string>

#include "sqfree/types.hpp"

namespace sqfree {

enum class Round { nearest, down, up };

/// Owning wrapper around an MPFR value. Every arithmetic step takes an
/// explicit rounding direction.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits, double value = 0.0);
  BigFloat(mpfr_prec_t bits, const std::string& decimal, Round r);
  BigFloat(const BigFloat& other);
  BigFloat& operator=(const BigFloat& other);
  ~BigFloat();

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

  /// this = num / den with both operands exact integers.
  void set_ratio(u128 num, u128 den, Round r);
  void mul(const BigFloat& other, Round r);
  void mul_d(double d, Round r);
  /// this *= exp(-c / P), with the result rounded in direction r.
  void mul_exp_neg(u64 c, u64 P, Round r);

  /// Fixed-point decimal with `digits` places after the point.
  std::string to_fixed(unsigned digits, Round r) const;
  double to_double() const;

  int compare(const BigFloat& other) const { return mpfr_cmp(v_, other.v_); }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return a.compare(b) < 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return a.compare(b) <= 0; }

  const mpfr_t& raw() const { return v_; }
  mpfr_t& raw() { return v_; }

 private:
  mpfr_t v_;
};

mpfr_rnd_t to_mpfr(Round r);

/// Working precision in bits for a requested number of decimal digits.
mpfr_prec_t bits_for_digits(unsigned digits);

}  // namespace sqfree
