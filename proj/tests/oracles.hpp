#pragma once

// Slow, independent reference implementations. They share no code with the
// library beyond the QuarticPoly coefficient accessors.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <vector>

#include "sqfree/poly.hpp"

namespace oracle {

using boost::multiprecision::cpp_int;
using sqfree::i64;
using sqfree::QuarticPoly;
using sqfree::u64;

inline cpp_int eval(const QuarticPoly& f, const cpp_int& n) {
  cpp_int v = 0;
  for (int i = 4; i >= 0; --i) v = v * n + f.coeff(i);
  return v;
}

inline u64 eval_mod(const QuarticPoly& f, u64 n, u64 m) {
  cpp_int v = eval(f, cpp_int(n)) % m;
  if (v < 0) v += m;
  return static_cast<u64>(v);
}

/// Roots mod m by evaluating the exact integer value at every residue.
inline std::vector<u64> roots(const QuarticPoly& f, u64 m) {
  std::vector<u64> out;
  for (u64 n = 0; n < m; ++n)
    if (eval_mod(f, n, m) == 0) out.push_back(n);
  return out;
}

/// mu^2 by trial division with d^2 for every d up to sqrt(v).
inline bool squarefree(cpp_int v) {
  if (v < 0) v = -v;
  if (v == 0) return false;
  if (v <= std::numeric_limits<std::uint64_t>::max()) {
    auto w = static_cast<std::uint64_t>(v);
    for (std::uint64_t d = 2; d <= w / d; ++d) {
      if (w % d == 0) {
        w /= d;
        if (w % d == 0) return false;
      }
    }
    return true;
  }
  for (cpp_int d = 2; d * d <= v; ++d) {
    if (v % d == 0) {
      v /= d;
      if (v % d == 0) return false;
    }
  }
  return true;
}

inline bool prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ---- polynomials over F_p, low-order coefficient first ----

using Fp = std::vector<std::int64_t>;

inline void trim(Fp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::int64_t pw(std::int64_t a, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

inline Fp mod(Fp a, const Fp& b, std::int64_t p) {
  const std::int64_t inv = pw(b.back(), p - 2, p);
  while (a.size() >= b.size()) {
    const std::int64_t c = a.back() * inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

inline Fp div_exact(Fp a, const Fp& b, std::int64_t p) {
  const std::int64_t inv = pw(b.back(), p - 2, p);
  Fp q(a.size() - b.size() + 1, 0);
  while (a.size() >= b.size()) {
    const std::int64_t c = a.back() * inv % p;
    const std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
    trim(a);
  }
  return q;
}

inline Fp mulmod(const Fp& a, const Fp& b, const Fp& m, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Fp r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  trim(r);
  return mod(r, m, p);
}

inline Fp gcd(Fp a, Fp b, std::int64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Fp r = mod(a, b, p);
    a = b;
    b = r;
  }
  return a;
}

/// Distinct irreducible factors of g over F_p, as degree -> count.
/// Works for non-squarefree g as well.
inline std::map<int, int> distinct_factor_degrees(Fp g, std::int64_t p) {
  for (auto& c : g) c = ((c % p) + p) % p;
  trim(g);
  std::map<int, int> out;
  Fp xq{0, 1};  // x^(p^k) mod g
  for (int k = 1; g.size() > 1; ++k) {
    // xq = xq^p mod g
    Fp base = mod(xq, g, p), r{1};
    for (std::int64_t e = p; e; e >>= 1) {
      if (e & 1) r = mulmod(r, base, g, p);
      base = mulmod(base, base, g, p);
    }
    xq = r;
    Fp h = xq;
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = ((h[1] - 1) % p + p) % p;
    trim(h);
    Fp d = gcd(g, h, p);
    const int dd = static_cast<int>(d.size()) - 1;
    if (dd > 0) {
      out[k] = dd / k;
      while (true) {
        Fp e = gcd(g, d, p);
        if (e.size() <= 1) break;
        g = div_exact(g, e, p);
      }
      xq = g.size() > 1 ? mod(xq, g, p) : Fp{};
    }
  }
  return out;
}

inline std::mt19937_64 rng(u64 seed) { return std::mt19937_64(seed); }

}  // namespace oracle
