#include "sqfree/modarith.hpp"

#include <cmath>
#include <limits>

#include "sqfree/poly.hpp"
#include "sqfree/primes.hpp"

namespace sqfree {

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

std::string to_string(i128 v) {
  if (v >= 0) return to_string(static_cast<u128>(v));
  return "-" + to_string(static_cast<u128>(-(v + 1)) + 1);
}

u128 parse_u128(const std::string& text) {
  auto parse_plain = [&](const std::string& s) -> u128 {
    if (s.empty()) throw InvalidArgument("expected a non-negative integer, got '" + text + "'");
    u128 v = 0;
    for (char ch : s) {
      if (ch < '0' || ch > '9') throw InvalidArgument("expected a non-negative integer, got '" + text + "'");
      u128 next = v * 10 + static_cast<unsigned>(ch - '0');
      if (next / 10 != v) throw RangeError("integer too large: " + text);
      v = next;
    }
    return v;
  };
  auto power = [&](u128 base, u128 exp) {
    u128 r = 1;
    for (u128 i = 0; i < exp; ++i) {
      if (base != 0 && r > std::numeric_limits<u128>::max() / base) throw RangeError("integer too large: " + text);
      r *= base;
    }
    return r;
  };
  if (auto pos = text.find_first_of("eE"); pos != std::string::npos) {
    u128 mant = parse_plain(text.substr(0, pos));
    u128 scale = power(10, parse_plain(text.substr(pos + 1)));
    if (mant != 0 && scale > std::numeric_limits<u128>::max() / mant) throw RangeError("integer too large: " + text);
    return mant * scale;
  }
  if (auto pos = text.find('^'); pos != std::string::npos)
    return power(parse_plain(text.substr(0, pos)), parse_plain(text.substr(pos + 1)));
  return parse_plain(text);
}

u64 parse_u64(const std::string& text) {
  u128 v = parse_u128(text);
  if (v > std::numeric_limits<u64>::max()) throw RangeError("integer does not fit 64 bits: " + text);
  return static_cast<u64>(v);
}

u64 reduce(i64 a, u64 m) {
  if (a >= 0) return static_cast<u64>(a) % m;
  u64 mag = static_cast<u64>(-(a + 1)) + 1;
  u64 r = mag % m;
  return r == 0 ? 0 : m - r;
}

u64 reduce(i128 a, u64 m) {
  if (a >= 0) return static_cast<u64>(static_cast<u128>(a) % m);
  u128 mag = static_cast<u128>(-(a + 1)) + 1;
  u64 r = static_cast<u64>(mag % m);
  return r == 0 ? 0 : m - r;
}

namespace {

inline u64 mulm(u64 a, u64 b, u64 m) {
  if (m <= 0xFFFFFFFFull) return a * b % m;
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powm(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e > 0) {
    if (e & 1) r = mulm(r, a, m);
    a = mulm(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

u64 pow_mod(u64 a, u64 e, Modulus m) { return powm(a, e, m.value()); }

u64 gcd(u64 a, u64 b) {
  while (b != 0) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 gcd(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::optional<u64> inv_mod(u64 a, u64 m) {
  if (m == 0) throw InvalidArgument("inverse modulo zero");
  if (m == 1) return 0;
  i128 old_r = a % m, r = m, old_s = 1, s = 0;
  while (r != 0) {
    i128 q = old_r / r;
    i128 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) return std::nullopt;
  return reduce(old_s, m);
}

int jacobi_u(u64 a, u64 n) {
  if (n == 0 || n % 2 == 0) throw InvalidArgument("Jacobi symbol needs an odd positive modulus");
  a %= n;
  int t = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      u64 r = n % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

int jacobi(i64 a, u64 n) {
  if (n == 0 || n % 2 == 0) throw InvalidArgument("Jacobi symbol needs an odd positive modulus");
  return jacobi_u(reduce(a, n), n);
}

namespace detail {

std::optional<u64> sqrt_mod_prime(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  if (p == 2) return a;
  if (powm(a, (p - 1) / 2, p) != 1) return std::nullopt;
  u64 r;
  if (p % 4 == 3) {
    r = powm(a, (p + 1) / 4, p);
  } else if (p % 8 == 5) {
    u64 a2 = add_mod(a, a, p);
    u64 v = powm(a2, (p - 5) / 8, p);
    u64 i = mulm(a2, mulm(v, v, p), p);
    r = mulm(mulm(a, v, p), sub_mod(i, 1, p), p);
  } else {
    // Tonelli-Shanks, p - 1 = q * 2^s
    u64 q = p - 1;
    unsigned s = 0;
    while (q % 2 == 0) {
      q /= 2;
      ++s;
    }
    u64 z = 2;
    while (jacobi_u(z, p) != -1) ++z;
    u64 c = powm(z, q, p);
    u64 t = powm(a, q, p);
    r = powm(a, (q + 1) / 2, p);
    unsigned m = s;
    while (t != 1) {
      unsigned i = 0;
      u64 tt = t;
      while (tt != 1) {
        tt = mulm(tt, tt, p);
        ++i;
      }
      u64 b = c;
      for (unsigned j = 0; j + 1 < m - i; ++j) b = mulm(b, b, p);
      r = mulm(r, b, p);
      c = mulm(b, b, p);
      t = mulm(t, c, p);
      m = i;
    }
  }
  return std::min(r, p - r);
}

}  // namespace detail

std::optional<u64> sqrt_mod(u64 a, u64 p) {
  if (!is_prime(p)) throw InvalidArgument("sqrt_mod needs a prime modulus");
  return detail::sqrt_mod_prime(a, p);
}

bool quartic_residue(u64 a, u64 p) {
  if (!is_prime(p) || p % 4 != 1) throw InvalidArgument("quartic residue symbol needs a prime p = 1 mod 4");
  if (a % p == 0) throw InvalidArgument("quartic residue symbol needs gcd(a, p) = 1");
  return powm(a % p, (p - 1) / 4, p) == 1;
}

u64 checked_pow(u64 p, unsigned k) {
  u64 r = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (p != 0 && r > std::numeric_limits<u64>::max() / p) throw RangeError("prime power exceeds 64 bits");
    r *= p;
  }
  return r;
}

u64 hensel_lift(const QuarticPoly& f, u64 r, u64 p, unsigned k) {
  if (k == 0) throw InvalidArgument("Hensel lift needs k >= 1");
  const u64 pk = checked_pow(p, k);
  r %= p;
  if (f.eval_mod(r, p) != 0) throw InvalidArgument("not a root modulo p");
  if (f.degree() == 0 || f.derivative().eval_mod(r, p) == 0)
    throw SingularRoot("root " + std::to_string(r) + " is singular modulo " + std::to_string(p));
  const QuarticPoly df = f.derivative();
  u64 m = p;
  while (m < pk) {
    m = (m > pk / m) ? pk : m * m;
    u64 fr = f.eval_mod(r, m);
    u64 inv = *inv_mod(df.eval_mod(r, m), m);
    r = sub_mod(r % m, mulm(fr, inv, m), m);
  }
  return r;
}

u64 crt_combine(u64 r1, u64 m1, u64 r2, u64 m2) {
  if (m1 == 0 || m2 == 0) throw InvalidArgument("CRT moduli must be positive");
  auto inv = inv_mod(m1 % m2, m2);
  if (!inv) throw InvalidArgument("CRT moduli are not coprime");
  u128 mm = static_cast<u128>(m1) * m2;
  if (mm > std::numeric_limits<u64>::max()) throw RangeError("CRT modulus exceeds 64 bits");
  r1 %= m1;
  r2 %= m2;
  u64 diff = sub_mod(r2, r1 % m2, m2);
  u64 t = static_cast<u64>(static_cast<u128>(diff) * *inv % m2);
  return static_cast<u64>(r1 + static_cast<u128>(m1) * t);
}

std::optional<QfRep> cornacchia(u64 p, u64 D) {
  if (p < 3 || p % 2 == 0 || !is_prime(p)) throw InvalidArgument("cornacchia needs an odd prime");
  if (D < 1 || D >= p) throw InvalidArgument("cornacchia needs 1 <= D < p");
  auto root = detail::sqrt_mod_prime(p - D, p);
  if (!root) return std::nullopt;
  u64 a = p, b = *root;
  if (b <= p / 2) b = p - b;
  while (static_cast<u128>(b) * b >= p) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  u64 rest = p - b * b;
  if (rest % D != 0) return std::nullopt;
  u64 c = rest / D;
  u64 s = int_sqrt(c);
  if (s * s != c) return std::nullopt;
  QfRep rep{b, s, D};
  if (D == 1 && rep.a % 2 == 0) std::swap(rep.a, rep.b);
  return rep;
}

std::vector<u64> primes_in_ap(u64 q, u64 a, u64 limit) {
  if (q == 0) throw InvalidArgument("progression modulus must be positive");
  if (gcd(q, a % q) != 1 && q != 1) throw InvalidArgument("primes_in_ap needs gcd(q, a) = 1");
  a %= q;
  std::vector<u64> out;
  for_each_prime(2, limit, [&](u64 p) {
    if (p % q == a) out.push_back(p);
  });
  return out;
}

u128 int_sqrt(u128 n) {
  constexpr u128 kMax = 0xFFFFFFFFFFFFFFFFull;
  long double est = std::sqrt(static_cast<long double>(n));
  u128 s = est >= static_cast<long double>(kMax) ? kMax : static_cast<u128>(est);
  while (s > 0 && s * s > n) --s;
  while (s < kMax && (s + 1) * (s + 1) <= n) ++s;
  return s;
}

u64 int_sqrt(u64 n) { return static_cast<u64>(int_sqrt(static_cast<u128>(n))); }

u128 int_cbrt(u128 n) {
  long double est = std::cbrt(static_cast<long double>(n));
  u128 s = static_cast<u128>(est);
  while (s > 0 && s * s * s > n) --s;
  while ((s + 1) * (s + 1) * (s + 1) <= n) ++s;
  return s;
}

bool is_perfect_square(u128 n) {
  u128 s = int_sqrt(n);
  return s * s == n;
}

}  // namespace sqfree
