#include "sqfree/congruence.hpp"

namespace sqfree {

namespace {

IntPoly multiply(const IntPoly& a, const IntPoly& b) {
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// a / (x^d - 1), exact
IntPoly divide_xd_minus_1(IntPoly a, unsigned d) {
  const std::size_t n = a.size() - 1;
  IntPoly q(n - d + 1, 0);
  for (std::size_t i = n + 1; i-- > d;) {
    i64 c = a[i];
    q[i - d] = c;
    a[i] = 0;
    a[i - d] += c;
  }
  for (i64 c : a)
    if (c != 0) throw Inconsistency("inexact cyclotomic division");
  return q;
}

int mobius(unsigned n) {
  int mu = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  return n > 1 ? -mu : mu;
}

}  // namespace

IntPoly cyclotomic_poly(unsigned n) {
  if (n < 1 || n > 100) throw InvalidArgument("cyclotomic polynomials are available for 1 <= n <= 100");
  IntPoly num{1};
  std::vector<unsigned> den;
  for (unsigned d = 1; d <= n; ++d) {
    if (n % d) continue;
    int mu = mobius(n / d);
    if (mu == 0) continue;
    if (mu == 1) {
      IntPoly f(d + 1, 0);
      f[0] = -1;
      f[d] = 1;
      num = multiply(num, f);
    } else {
      den.push_back(d);
    }
  }
  for (unsigned d : den) num = divide_xd_minus_1(std::move(num), d);
  return num;
}

u64 euler_phi(u64 n) {
  if (n == 0) throw InvalidArgument("phi(0) is undefined");
  u64 r = n;
  for (const auto& pp : factorize(n)) {
    const u64 p = static_cast<u64>(pp.p);
    r = r / p * (p - 1);
  }
  return r;
}

u64 multiplicative_order(u64 a, u64 n) {
  if (n == 0) throw InvalidArgument("order modulo zero");
  if (n == 1) return 1;
  if (gcd(a % n, n) != 1) throw InvalidArgument("order needs gcd(a, n) = 1");
  auto pw = [n](u64 b, u64 e) {
    u128 r = 1 % n, x = b % n;
    while (e > 0) {
      if (e & 1) r = r * x % n;
      x = x * x % n;
      e >>= 1;
    }
    return static_cast<u64>(r);
  };
  u64 ord = euler_phi(n);
  for (const auto& pp : factorize(ord)) {
    const u64 q = static_cast<u64>(pp.p);
    while (ord % q == 0 && pw(a, ord / q) == 1) ord /= q;
  }
  return ord;
}

std::string to_string(const CyclotomicSplitting& s) {
  switch (s.kind) {
    case CyclotomicSplitting::Kind::ramified:
      return "ramified";
    case CyclotomicSplitting::Kind::split_linear:
      return "splits into " + std::to_string(s.count) + " linear factors";
    case CyclotomicSplitting::Kind::factors:
      return std::to_string(s.count) + (s.count == 1 ? " irreducible factor" : " factors") + " of degree " +
             std::to_string(s.degree);
  }
  return "?";
}

CyclotomicSplitting cyclotomic_splitting(unsigned n, u64 p) {
  if (n < 1 || n > 100) throw InvalidArgument("cyclotomic polynomials are available for 1 <= n <= 100");
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  CyclotomicSplitting out;
  // Phi_n(T) = Phi_{n/2}(-T) for n = 2 mod 4, so 2 is unramified there
  const u64 conductor = n % 4 == 2 ? n / 2 : n;
  u64 m = conductor;
  while (m % p == 0) m /= p;
  const u64 f = multiplicative_order(p, m);
  out.degree = f;
  out.count = euler_phi(m) / f;
  if (m != conductor)
    out.kind = CyclotomicSplitting::Kind::ramified;
  else if (f == 1)
    out.kind = CyclotomicSplitting::Kind::split_linear;
  else
    out.kind = CyclotomicSplitting::Kind::factors;
  return out;
}

}  // namespace sqfree
