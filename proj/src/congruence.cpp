#include "sqfree/congruence.hpp"

#include <algorithm>
#include <optional>

namespace sqfree {

namespace {

// ---- polynomials over F_p, low-order coefficient first, kept trimmed ----

using FpPoly = std::vector<u64>;

inline u64 mulm(u64 a, u64 b, u64 p) {
  if (p <= 0xFFFFFFFFull) return a * b % p;
  return static_cast<u64>(static_cast<u128>(a) * b % p);
}

u64 powm(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1) r = mulm(r, a, p);
    a = mulm(a, a, p);
    e >>= 1;
  }
  return r;
}

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }

u64 inv_prime(u64 a, u64 p) { return powm(a, p - 2, p); }

void make_monic(FpPoly& a, u64 p) {
  if (a.empty()) return;
  u64 inv = inv_prime(a.back(), p);
  for (u64& c : a) c = mulm(c, inv, p);
}

// a mod b, b monic
FpPoly poly_mod(FpPoly a, const FpPoly& b, u64 p) {
  const int db = deg(b);
  for (int i = deg(a); i >= db; --i) {
    u64 lead = a[static_cast<std::size_t>(i)];
    if (lead == 0) continue;
    for (int j = 0; j <= db; ++j) {
      auto idx = static_cast<std::size_t>(i - db + j);
      a[idx] = sub_mod(a[idx], mulm(lead, b[static_cast<std::size_t>(j)], p), p);
    }
  }
  trim(a);
  return a;
}

// quotient of a by monic b, assuming exact division
FpPoly poly_div(FpPoly a, const FpPoly& b, u64 p) {
  const int db = deg(b);
  const int da = deg(a);
  if (da < db) return {};
  FpPoly q(static_cast<std::size_t>(da - db + 1), 0);
  for (int i = da; i >= db; --i) {
    u64 lead = a[static_cast<std::size_t>(i)];
    q[static_cast<std::size_t>(i - db)] = lead;
    if (lead == 0) continue;
    for (int j = 0; j <= db; ++j) {
      auto idx = static_cast<std::size_t>(i - db + j);
      a[idx] = sub_mod(a[idx], mulm(lead, b[static_cast<std::size_t>(j)], p), p);
    }
  }
  trim(q);
  return q;
}

FpPoly poly_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = add_mod(r[i + j], mulm(a[i], b[j], p), p);
  trim(r);
  return poly_mod(std::move(r), m, p);
}

FpPoly poly_powmod(FpPoly base, u64 e, const FpPoly& m, u64 p) {
  FpPoly r{1};
  r = poly_mod(r, m, p);
  base = poly_mod(base, m, p);
  while (e > 0) {
    if (e & 1) r = poly_mulmod(r, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

FpPoly poly_gcd(FpPoly a, FpPoly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    make_monic(b, p);
    FpPoly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  make_monic(a, p);
  return a;
}

FpPoly poly_sub(FpPoly a, const FpPoly& b, u64 p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = sub_mod(a[i], b[i], p);
  trim(a);
  return a;
}

// Splits a monic product of distinct linear factors into its roots.
void split_linear(const FpPoly& d, u64 p, std::vector<u64>& roots) {
  if (deg(d) <= 0) return;
  if (deg(d) == 1) {
    roots.push_back(d[0] == 0 ? 0 : p - d[0]);
    return;
  }
  for (u64 a = 1; a < p; ++a) {
    FpPoly w = poly_powmod(FpPoly{a % p, 1}, (p - 1) / 2, d, p);
    w = poly_sub(std::move(w), FpPoly{1}, p);
    FpPoly e = poly_gcd(d, w, p);
    if (deg(e) > 0 && deg(e) < deg(d)) {
      split_linear(e, p, roots);
      split_linear(poly_div(d, e, p), p, roots);
      return;
    }
  }
  throw Inconsistency("equal-degree splitting failed");
}

std::vector<u64> all_residues(u64 p) {
  if (p > kExhaustiveBound) throw RangeError("polynomial vanishes identically modulo a large prime");
  std::vector<u64> r(p);
  for (u64 i = 0; i < p; ++i) r[i] = i;
  return r;
}

std::vector<u64> biquadratic_roots(const ModPoly& g, u64 p) {
  const u64 a = g.coeff(4), b = g.coeff(2), c = g.coeff(0);
  // a y^2 + b y + c = 0 with y = T^2
  u64 disc = sub_mod(mulm(b, b, p), mulm(4 % p, mulm(a, c, p), p), p);
  auto s = detail::sqrt_mod_prime(disc, p);
  if (!s) return {};
  const u64 inv2a = inv_prime(mulm(2, a, p), p);
  const u64 minus_b = b == 0 ? 0 : p - b;
  std::vector<u64> ys{mulm(add_mod(minus_b, *s, p), inv2a, p), mulm(sub_mod(minus_b, *s, p), inv2a, p)};
  std::vector<u64> roots;
  for (u64 y : ys) {
    auto t = detail::sqrt_mod_prime(y, p);
    if (!t) continue;
    roots.push_back(*t);
    if (*t != 0) roots.push_back(p - *t);
  }
  return roots;
}

std::vector<u64> cantor_zassenhaus_roots(const ModPoly& g, u64 p) {
  FpPoly f(5);
  for (int i = 0; i < 5; ++i) f[static_cast<std::size_t>(i)] = g.coeff(i);
  trim(f);
  make_monic(f, p);
  FpPoly h = poly_powmod(FpPoly{0, 1}, p, f, p);
  FpPoly d = poly_gcd(f, poly_sub(h, FpPoly{0, 1}, p), p);
  std::vector<u64> roots;
  split_linear(d, p, roots);
  return roots;
}

RootSet finish(u64 m, std::vector<u64> roots) {
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return RootSet{m, std::move(roots)};
}

bool contains(const std::vector<u64>& v, u64 x) { return std::find(v.begin(), v.end(), x) != v.end(); }

std::vector<u64> prime_divisors(u128 n) {
  std::vector<u64> out;
  if (n <= 1) return out;
  for (const auto& pp : factorize(n)) {
    if (pp.p > 0xFFFFFFFFFFFFFFFFull) throw RangeError("prime divisor exceeds 64 bits");
    out.push_back(static_cast<u64>(pp.p));
  }
  return out;
}

}  // namespace

namespace detail {

RootSet roots_mod_prime(const QuarticPoly& f, u64 p, RootMethod method) {
  if (method == RootMethod::automatic) method = p < kScanBelow ? RootMethod::exhaustive : RootMethod::algebraic;
  if (method == RootMethod::exhaustive || p == 2) return roots_exhaustive(f, p);

  const ModPoly g(f, p);
  if (g.is_zero()) return RootSet{p, all_residues(p)};
  int dg = 4;
  while (dg > 0 && g.coeff(dg) == 0) --dg;
  if (dg == 0) return RootSet{p, {}};

  std::vector<u64> roots = (f.is_biquadratic() && dg == 4) ? biquadratic_roots(g, p) : cantor_zassenhaus_roots(g, p);
  for (u64 r : roots)
    if (g.eval(r) != 0) throw Inconsistency("algebraic root " + std::to_string(r) + " fails verification mod " + std::to_string(p));
  return finish(p, std::move(roots));
}

}  // namespace detail

using detail::roots_mod_prime;

RootSet roots_exhaustive(const QuarticPoly& f, u64 m) {
  if (m == 0) throw InvalidArgument("modulus must be positive");
  const ModPoly g(f, m);
  RootSet out{m, {}};
  for (u64 n = 0; n < m; ++n)
    if (g.eval(n) == 0) out.roots.push_back(n);
  return out;
}

RootSet roots_mod_p(const QuarticPoly& f, u64 p, RootMethod method) {
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  return roots_mod_prime(f, p, method);
}

RootSet roots_mod_pk(const QuarticPoly& f, u64 p, unsigned k) {
  if (k == 0) throw InvalidArgument("exponent must be at least 1");
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  const u64 pk = checked_pow(p, k);
  RootSet base = roots_mod_prime(f, p, RootMethod::automatic);
  if (k == 1) return base;

  std::optional<ModPoly> df;
  if (f.degree() > 0) df.emplace(f.derivative(), p);
  std::vector<u64> out;
  for (u64 r : base.roots) {
    if (df && df->eval(r) != 0) {
      out.push_back(hensel_lift(f, r, p, k));
      continue;
    }
    if (pk > kExhaustiveBound)
      throw UnsupportedRamified("singular root modulo " + std::to_string(p) + " needs a scan beyond the bound");
    std::vector<u64> level{r};
    u64 pj = p;
    for (unsigned j = 1; j < k; ++j) {
      const u64 next = pj * p;
      const ModPoly g(f, next);
      std::vector<u64> lifted;
      for (u64 s : level)
        for (u64 t = 0; t < p; ++t) {
          u64 cand = s + t * pj;
          if (g.eval(cand) == 0) lifted.push_back(cand);
        }
      level = std::move(lifted);
      pj = next;
    }
    out.insert(out.end(), level.begin(), level.end());
  }
  return finish(pk, std::move(out));
}

RootSet roots_mod(const QuarticPoly& f, u64 m) {
  if (m == 0) throw InvalidArgument("modulus must be positive");
  RootSet acc{1, {0}};
  for (const auto& pp : factorize(m)) {
    const u64 p = static_cast<u64>(pp.p);
    RootSet local = roots_mod_pk(f, p, pp.e);
    std::vector<u64> combined;
    combined.reserve(acc.roots.size() * local.roots.size());
    for (u64 a : acc.roots)
      for (u64 b : local.roots) combined.push_back(crt_combine(a, acc.modulus, b, local.modulus));
    acc = finish(acc.modulus * local.modulus, std::move(combined));
    if (acc.roots.empty()) return RootSet{m, {}};
  }
  return acc;
}

u64 rho(const QuarticPoly& f, u64 m) {
  if (m == 0) throw InvalidArgument("modulus must be positive");
  if (m == 1) return 1;
  const auto bad = bad_primes(f);
  u64 total = 1;
  for (const auto& pp : factorize(m)) {
    const u64 p = static_cast<u64>(pp.p);
    u64 local;
    if (p != 2 && !contains(bad, p))
      local = rho_p(f, p);
    else
      local = roots_mod_pk(f, p, pp.e).count();
    total *= local;
    if (total == 0) return 0;
  }
  return total;
}

std::string to_string(Splitting s) {
  switch (s) {
    case Splitting::ramified: return "ramified";
    case Splitting::split: return "split";
    case Splitting::partial: return "partial";
    case Splitting::inert: return "inert";
  }
  return "?";
}

NamedPoly identify(const QuarticPoly& f) {
  if (f == QuarticPoly::cyc8()) return NamedPoly::cyc8;
  if (f == QuarticPoly::ferm2()) return NamedPoly::ferm2;
  if (f == QuarticPoly::dihed()) return NamedPoly::dihed;
  return NamedPoly::none;
}

std::optional<u64> fast_rho_p(const QuarticPoly& f, u64 p) {
  const NamedPoly id = identify(f);
  if (id == NamedPoly::none) return std::nullopt;
  if (p == 2) return 1;  // f(1) for cyc8, f(0) for ferm2 and dihed
  const u64 cls = p % 8;
  switch (id) {
    case NamedPoly::cyc8:
      return cls == 1 ? 4 : 0;
    case NamedPoly::ferm2:
      if (cls == 3) return 2;
      if (cls == 1) return powm(p - 2, (p - 1) / 4, p) == 1 ? 4 : 0;
      return 0;
    case NamedPoly::dihed: {
      if (cls == 5) return 2;
      if (cls != 1) return 0;
      // T^2 = 1 +- i; the two branches multiply to 2, a square here
      u64 i = *detail::sqrt_mod_prime(p - 1, p);
      return jacobi_u(add_mod(1, i, p), p) == 1 ? 4 : 0;
    }
    case NamedPoly::none:
      break;
  }
  return std::nullopt;
}

u64 rho_p(const QuarticPoly& f, u64 p) {
  if (auto fast = fast_rho_p(f, p)) return *fast;
  return roots_mod_prime(f, p, RootMethod::automatic).count();
}

u64 rho_p2(const QuarticPoly& f, u64 p) { return rho_p2(f, p, bad_primes(f)); }

u64 rho_p2(const QuarticPoly& f, u64 p, const std::vector<u64>& bad) {
  if (p == 2 || contains(bad, p)) return roots_mod_pk(f, p, 2).count();
  return rho_p(f, p);
}

std::vector<u64> bad_primes(const QuarticPoly& f) {
  std::vector<u64> out;
  const i128 disc = f.discriminant();
  const i128 lead = f.coeff(f.degree());
  auto mag = [](i128 v) { return static_cast<u128>(v < 0 ? -v : v); };
  if (disc != 0) {
    for (u64 p : prime_divisors(mag(disc))) out.push_back(p);
  }
  for (u64 p : prime_divisors(mag(lead))) out.push_back(p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PrimeClassification classify_prime(const QuarticPoly& f, u64 p, CrossCheck check) {
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  PrimeClassification out;
  out.p = p;
  out.residue_class_mod8 = p == 2 ? 2 : static_cast<int>(p % 8);

  const u64 algebraic = roots_mod_prime(f, p, RootMethod::automatic).count();
  const auto fast = fast_rho_p(f, p);
  if (fast && *fast != algebraic)
    throw Inconsistency("fast-path rho(" + std::to_string(p) + ") = " + std::to_string(*fast) +
                        " but root finding gives " + std::to_string(algebraic));
  if (check == CrossCheck::below_bound && p < kCrossCheckBelow) {
    const u64 scanned = roots_exhaustive(f, p).count();
    if (scanned != algebraic)
      throw Inconsistency("rho(" + std::to_string(p) + ") = " + std::to_string(algebraic) + " disagrees with scan count " +
                          std::to_string(scanned));
  }
  out.rho_p = fast.value_or(algebraic);
  out.rho_p2 = roots_mod_pk(f, p, 2).count();

  if (identify(f) == NamedPoly::ferm2 && p != 2) {
    if (out.residue_class_mod8 == 1) {
      out.qf = cornacchia(p, 1);
      // 2 (equivalently -2) is a quartic residue iff b = 0 mod 8
      if ((out.qf->b % 8 == 0) != (out.rho_p == 4))
        throw Inconsistency("quadratic-form criterion disagrees with the residue test at " + std::to_string(p));
    } else if (out.residue_class_mod8 == 3) {
      out.qf = cornacchia(p, 2);
    }
  }

  const auto bad = bad_primes(f);
  if (contains(bad, p))
    out.splitting = Splitting::ramified;
  else if (out.rho_p == static_cast<u64>(f.degree()))
    out.splitting = Splitting::split;
  else if (out.rho_p > 0)
    out.splitting = Splitting::partial;
  else
    out.splitting = Splitting::inert;
  return out;
}

SupportQuery in_support(const QuarticPoly& f, u64 m) {
  if (m < 2) throw InvalidArgument("support query needs m >= 2");
  SupportQuery q{m, true, 0, 0};
  for (const auto& pp : factorize(m)) {
    const u64 r = rho_p(f, static_cast<u64>(pp.p));
    if (r == 0) q.in_support = false;
    if (r == 4) ++q.omega0;
    if (r == 2) ++q.omega1;
  }
  return q;
}

u64 fixed_divisor(const QuarticPoly& f) {
  u128 g = 0;
  for (int n = 0; n <= f.degree(); ++n) {
    i128 v = f.eval(n);
    g = gcd(g, static_cast<u128>(v < 0 ? -v : v));
  }
  if (g > 0xFFFFFFFFFFFFFFFFull) throw RangeError("fixed divisor exceeds 64 bits");
  return static_cast<u64>(g);
}

std::string to_string(QuadraticType t) {
  switch (t) {
    case QuadraticType::ramified: return "ramified";
    case QuadraticType::split: return "split";
    case QuadraticType::inert: return "inert";
  }
  return "?";
}

QuadraticType classify_quadratic(const QuarticPoly& g, u64 p) {
  if (g.degree() != 2) throw InvalidArgument("expected a quadratic polynomial");
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  const i128 a = g.coeff(2), b = g.coeff(1), c = g.coeff(0);
  const i128 disc = b * b - 4 * a * c;
  if (disc >= 0 && is_perfect_square(static_cast<u128>(disc)))
    throw InvalidArgument("quadratic is reducible over the integers");
  if (p == 2 || reduce(disc, p) == 0) return QuadraticType::ramified;
  return jacobi_u(reduce(disc, p), p) == 1 ? QuadraticType::split : QuadraticType::inert;
}

bool quartic_residue_3_form_condition(u64 p) {
  if (!is_prime(p) || p % 4 != 1) throw InvalidArgument("needs a prime p = 1 mod 4");
  auto rep = cornacchia(p, 1);
  if (!rep) throw Inconsistency("prime " + std::to_string(p) + " = 1 mod 4 has no two-square representation");
  return p % 8 == 1 && rep->b % 3 == 0;
}

bool quartic_residue_3(u64 p) {
  if (p == 3 || p % 4 != 1 || !is_prime(p)) throw InvalidArgument("quartic character of 3 needs a prime p = 1 mod 4");
  const bool euler = powm(3, (p - 1) / 4, p) == 1;
  if (p % 8 == 1 && euler != quartic_residue_3_form_condition(p))
    throw Inconsistency("quartic character of 3 disagrees with the form criterion at " + std::to_string(p));
  return euler;
}

}  // namespace sqfree
