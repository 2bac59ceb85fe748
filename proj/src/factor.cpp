#include <algorithm>
#include <map>

#include "sqfree/modarith.hpp"
#include "sqfree/montgomery.hpp"
#include "sqfree/primes.hpp"

namespace sqfree {

namespace {

constexpr u64 kTrialBound = 10000;
constexpr int kRhoBatch = 128;

u64 splitmix64(u64& state) {
  u64 z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

template <typename M>
typename M::word mont_pow(const M& m, typename M::word base, u128 e) {
  typename M::word r = m.one();
  while (e > 0) {
    if (e & 1) r = m.mul(r, base);
    base = m.mul(base, base);
    e >>= 1;
  }
  return r;
}

// One strong-probable-prime round to base a (a already reduced, 1 < a < n-1).
template <typename M>
bool miller_rabin_round(const M& m, typename M::word a, u128 d, unsigned s) {
  using W = typename M::word;
  const W one = m.one();
  const W minus_one = m.sub(W(0), one);
  W x = mont_pow(m, m.to(a), d);
  if (x == one || x == minus_one) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = m.mul(x, x);
    if (x == minus_one) return true;
    if (x == one) return false;
  }
  return false;
}

int jacobi128(i128 a, u128 n) {
  u128 aa;
  if (a >= 0) {
    aa = static_cast<u128>(a) % n;
  } else {
    u128 r = (static_cast<u128>(-(a + 1)) + 1) % n;
    aa = r == 0 ? 0 : n - r;
  }
  int t = 1;
  while (aa != 0) {
    while (aa % 2 == 0) {
      aa /= 2;
      u128 r = n % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(aa, n);
    if (aa % 4 == 3 && n % 4 == 3) t = -t;
    aa %= n;
  }
  return n == 1 ? t : 0;
}

// Strong Lucas probable prime test with Selfridge parameters (P = 1).
bool strong_lucas(const Mont128& m, u128 n) {
  if (is_perfect_square(n)) return false;
  i128 D = 5;
  while (true) {
    int j = jacobi128(D, n);
    if (j == -1) break;
    if (j == 0) {
      u128 absd = static_cast<u128>(D < 0 ? -D : D);
      if (absd != n) return false;
    }
    D = D > 0 ? -(D + 2) : -(D - 2);
  }
  auto to_residue = [&](i128 v) {
    if (v >= 0) return m.to(static_cast<u128>(v) % n);
    u128 r = (static_cast<u128>(-(v + 1)) + 1) % n;
    return m.to(r == 0 ? 0 : n - r);
  };
  const u128 Dm = to_residue(D);
  const u128 Qm = to_residue((1 - D) / 4);
  auto half = [&](u128 x) {
    u128 v = m.from(x);
    v = (v % 2 == 0) ? v / 2 : v / 2 + n / 2 + 1;
    return m.to(v);
  };

  u128 d = n + 1;  // 2^128 - 1 is divisible by 3, so this never wraps
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  int top = 127;
  while (((d >> top) & 1) == 0) --top;

  u128 U = m.one(), V = m.one(), Qk = Qm;
  for (int bit = top - 1; bit >= 0; --bit) {
    U = m.mul(U, V);
    V = m.sub(m.mul(V, V), m.add(Qk, Qk));
    Qk = m.mul(Qk, Qk);
    if ((d >> bit) & 1) {
      u128 nu = half(m.add(U, V));
      u128 nv = half(m.add(m.mul(Dm, U), V));
      U = nu;
      V = nv;
      Qk = m.mul(Qk, Qm);
    }
  }
  if (U == 0 || V == 0) return true;
  for (unsigned r = 1; r < s; ++r) {
    V = m.sub(m.mul(V, V), m.add(Qk, Qk));
    Qk = m.mul(Qk, Qk);
    if (V == 0) return true;
  }
  return false;
}

template <typename M>
typename M::word brent_rho(const M& m, u64 seed) {
  using W = typename M::word;
  const W n = m.modulus();
  const W c = m.to(static_cast<W>(seed));
  auto step = [&](W v) { return m.add(m.mul(v, v), c); };
  W y = m.to(2), x = y, ys = y, q = m.one();
  W g = 1;
  u64 r = 1;
  do {
    x = y;
    for (u64 i = 0; i < r; ++i) y = step(y);
    u64 k = 0;
    do {
      ys = y;
      u64 lim = std::min<u64>(kRhoBatch, r - k);
      for (u64 i = 0; i < lim; ++i) {
        y = step(y);
        q = m.mul(q, m.sub(x, y));
      }
      g = gcd(static_cast<u128>(q), static_cast<u128>(n));
      k += kRhoBatch;
    } while (k < r && g == 1);
    r *= 2;
  } while (g == 1);
  if (g == n) {
    do {
      ys = step(ys);
      g = gcd(static_cast<u128>(m.sub(x, ys)), static_cast<u128>(n));
    } while (g == 1);
  }
  return g;
}

// A non-trivial factor of an odd composite n.
u128 find_factor(u128 n) {
  if (is_perfect_square(n)) return int_sqrt(n);
  for (u64 seed = 1;; ++seed) {
    u128 g;
    if (n <= 0xFFFFFFFFFFFFFFFFull) {
      Mont64 m(static_cast<u64>(n));
      g = brent_rho(m, seed);
    } else {
      Mont128 m(n);
      g = brent_rho(m, seed);
    }
    if (g != 1 && g != n) return g;
  }
}

void split(u128 n, std::map<u128, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  u128 f = find_factor(n);
  split(f, out);
  split(n / f, out);
}

}  // namespace

bool is_prime(WideInt n) {
  if (n < 2) return false;
  static constexpr u64 kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kBases) {
    if (n % p == 0) return n == p;
  }
  if (n < 41 * 41) return true;
  u128 d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  if (n <= 0xFFFFFFFFFFFFFFFFull) {
    Mont64 m(static_cast<u64>(n));
    for (u64 a : kBases)
      if (!miller_rabin_round(m, a, d, s)) return false;
    return true;
  }
  Mont128 m(n);
  u64 state = static_cast<u64>(n) ^ static_cast<u64>(n >> 64);
  for (int round = 0; round < 64; ++round) {
    u128 a = round < 12 ? kBases[round] : 2 + (static_cast<u128>(splitmix64(state)) << 64 | splitmix64(state)) % (n - 3);
    if (!miller_rabin_round(m, a, d, s)) return false;
  }
  return strong_lucas(m, n);
}

std::vector<PrimePower> factorize(WideInt n) {
  if (n == 0) throw InvalidArgument("cannot factor zero");
  std::map<u128, unsigned> found;
  for (u64 p : small_primes()) {
    if (static_cast<u128>(p) * p > n) break;
    while (n % p == 0) {
      n /= p;
      ++found[p];
    }
  }
  if (n > 1) {
    if (n < static_cast<u128>(kTrialBound) * kTrialBound)
      ++found[n];
    else
      split(n, found);
  }
  std::vector<PrimePower> out;
  for (auto [p, e] : found) out.push_back({p, e});
  return out;
}

bool is_squarefree(WideInt n) {
  if (n == 0) throw InvalidArgument("squarefree test needs n >= 1");
  for (u64 p : small_primes()) {
    if (static_cast<u128>(p) * p > n) return true;
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return false;
    }
  }
  // every prime factor of n is now >= kTrialBound
  if (n == 1) return true;
  if (n < static_cast<u128>(kTrialBound) * kTrialBound) return true;
  if (is_perfect_square(n)) return false;
  if (is_prime(n)) return true;
  if (n < static_cast<u128>(kTrialBound) * kTrialBound * kTrialBound) return true;  // p*q, p != q
  for (const auto& pp : factorize(n))
    if (pp.e > 1) return false;
  return true;
}

}  // namespace sqfree
