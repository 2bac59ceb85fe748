#include "sqfree/bigfloat.hpp"

#include <cmath>

namespace sqfree {

mpfr_rnd_t to_mpfr(Round r) {
  switch (r) {
    case Round::down: return MPFR_RNDD;
    case Round::up: return MPFR_RNDU;
    case Round::nearest: break;
  }
  return MPFR_RNDN;
}

mpfr_prec_t bits_for_digits(unsigned digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 32;
}

BigFloat::BigFloat(mpfr_prec_t bits, double value) {
  mpfr_init2(v_, bits);
  mpfr_set_d(v_, value, MPFR_RNDN);
}

BigFloat::BigFloat(mpfr_prec_t bits, const std::string& decimal, Round r) {
  mpfr_init2(v_, bits);
  if (mpfr_set_str(v_, decimal.c_str(), 10, to_mpfr(r)) != 0 && !mpfr_number_p(v_)) {
    mpfr_clear(v_);
    throw InvalidArgument("not a decimal number: " + decimal);
  }
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

namespace {

void set_u128(mpfr_t out, u128 v) {
  // exact as long as the precision holds 128 bits
  mpfr_set_ui(out, static_cast<unsigned long>(v >> 64), MPFR_RNDN);
  mpfr_mul_2ui(out, out, 64, MPFR_RNDN);
  mpfr_add_ui(out, out, static_cast<unsigned long>(v & 0xFFFFFFFFFFFFFFFFull), MPFR_RNDN);
}

}  // namespace

void BigFloat::set_ratio(u128 num, u128 den, Round r) {
  mpfr_t n, d;
  mpfr_init2(n, 160);
  mpfr_init2(d, 160);
  set_u128(n, num);
  set_u128(d, den);
  mpfr_div(v_, n, d, to_mpfr(r));
  mpfr_clear(n);
  mpfr_clear(d);
}

void BigFloat::mul(const BigFloat& other, Round r) { mpfr_mul(v_, v_, other.v_, to_mpfr(r)); }

void BigFloat::mul_d(double d, Round r) { mpfr_mul_d(v_, v_, d, to_mpfr(r)); }

void BigFloat::mul_exp_neg(u64 c, u64 P, Round r) {
  mpfr_t t;
  mpfr_init2(t, precision());
  // exp is increasing, so rounding -c/P the same way keeps the direction
  const mpfr_rnd_t dir = to_mpfr(r);
  mpfr_set_ui(t, c, MPFR_RNDN);
  mpfr_div_ui(t, t, P, r == Round::down ? MPFR_RNDU : (r == Round::up ? MPFR_RNDD : MPFR_RNDN));
  mpfr_neg(t, t, MPFR_RNDN);
  mpfr_exp(t, t, dir);
  mpfr_mul(v_, v_, t, dir);
  mpfr_clear(t);
}

std::string BigFloat::to_fixed(unsigned digits, Round r) const {
  char* buf = nullptr;
  const char rc = r == Round::down ? 'D' : (r == Round::up ? 'U' : 'N');
  const std::string fmt = std::string("%.*R") + rc + "f";
  if (mpfr_asprintf(&buf, fmt.c_str(), static_cast<int>(digits), v_) < 0) throw RangeError("decimal formatting failed");
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

double BigFloat::to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

}  // namespace sqfree
