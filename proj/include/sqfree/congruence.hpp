#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqfree/modarith.hpp"
#include "sqfree/poly.hpp"

namespace sqfree {

/// Sorted residues r < modulus with f(r) = 0 mod modulus.
struct RootSet {
  u64 modulus = 0;
  std::vector<u64> roots;

  std::size_t count() const { return roots.size(); }
  friend bool operator==(const RootSet&, const RootSet&) = default;
};

enum class RootMethod {
  automatic,   // scan tiny primes, algebraic otherwise
  exhaustive,  // evaluate f at every residue
  algebraic,   // square roots for biquadratics, Cantor-Zassenhaus otherwise
};

/// Residues up to which `automatic` still scans.
inline constexpr u64 kScanBelow = 64;
/// Largest modulus an exhaustive scan is allowed to cover.
inline constexpr u64 kExhaustiveBound = 1'000'000;
/// Primes below this are cross-checked against a scan by classify_prime.
inline constexpr u64 kCrossCheckBelow = 1'000'000;

RootSet roots_mod_p(const QuarticPoly& f, u64 p, RootMethod method = RootMethod::automatic);

/// Roots modulo p^k. Simple roots are Hensel-lifted; singular roots are
/// lifted digit by digit, which is only allowed while p^k <= kExhaustiveBound.
RootSet roots_mod_pk(const QuarticPoly& f, u64 p, unsigned k);

/// Roots modulo an arbitrary m >= 1, assembled by CRT from prime powers.
RootSet roots_mod(const QuarticPoly& f, u64 m);

/// Plain scan over 0..m-1; the oracle every other root routine is checked against.
RootSet roots_exhaustive(const QuarticPoly& f, u64 m);

/// rho_f(m), the number of roots of f modulo m.
u64 rho(const QuarticPoly& f, u64 m);

enum class Splitting { ramified, split, partial, inert };
std::string to_string(Splitting s);

struct PrimeClassification {
  u64 p = 0;
  int residue_class_mod8 = 0;  // 1, 3, 5, 7, or 2 for the prime 2
  u64 rho_p = 0;
  u64 rho_p2 = 0;
  std::optional<QfRep> qf;
  Splitting splitting = Splitting::inert;
  friend bool operator==(const PrimeClassification&, const PrimeClassification&) = default;
};

enum class NamedPoly { none, cyc8, ferm2, dihed };
NamedPoly identify(const QuarticPoly& f);

/// rho_f(p) from residue-symbol criteria, for the named polynomials only.
std::optional<u64> fast_rho_p(const QuarticPoly& f, u64 p);

/// rho_f(p): fast path where one exists, algebraic root count otherwise.
u64 rho_p(const QuarticPoly& f, u64 p);

/// rho_f(p^2) without listing roots when p is unramified.
u64 rho_p2(const QuarticPoly& f, u64 p);
/// Same, with bad_primes(f) supplied by the caller.
u64 rho_p2(const QuarticPoly& f, u64 p, const std::vector<u64>& bad);

enum class CrossCheck { none, below_bound };

/// Root counts, splitting type and (for T^4 + 2) the quadratic form that
/// decides solvability. With CrossCheck::below_bound the fast path is
/// compared with a scan for p < kCrossCheckBelow; a mismatch throws
/// Inconsistency.
PrimeClassification classify_prime(const QuarticPoly& f, u64 p, CrossCheck check = CrossCheck::below_bound);

struct SupportQuery {
  u64 m = 0;
  bool in_support = false;
  unsigned omega0 = 0;  // prime divisors with 4 roots
  unsigned omega1 = 0;  // prime divisors with 2 roots
};

SupportQuery in_support(const QuarticPoly& f, u64 m);

/// gcd of f(0), ..., f(deg f).
u64 fixed_divisor(const QuarticPoly& f);

/// Primes dividing disc(f) or the leading coefficient.
std::vector<u64> bad_primes(const QuarticPoly& f);

enum class QuadraticType { ramified, split, inert };
std::string to_string(QuadraticType t);

/// Splitting of an irreducible quadratic g (given with a4 = a3 = 0) mod p.
QuadraticType classify_quadratic(const QuarticPoly& g, u64 p);

/// Phi_n for 1 <= n <= 100, low-order coefficient first.
IntPoly cyclotomic_poly(unsigned n);

struct CyclotomicSplitting {
  enum class Kind { ramified, split_linear, factors } kind = Kind::factors;
  u64 count = 0;   // number of irreducible factors
  u64 degree = 0;  // their common degree
};
std::string to_string(const CyclotomicSplitting& s);

CyclotomicSplitting cyclotomic_splitting(unsigned n, u64 p);

u64 euler_phi(u64 n);
u64 multiplicative_order(u64 a, u64 n);

/// 3^((p-1)/4) = 1 mod p, for a prime p = 1 mod 4. When p = 1 mod 8 the
/// result is checked against the quadratic-form criterion.
bool quartic_residue_3(u64 p);

/// "p = 1 mod 8 and b = 0 mod 3" where p = a^2 + b^2 with b even.
bool quartic_residue_3_form_condition(u64 p);

namespace detail {
// roots_mod_p without the primality check, for loops over sieved primes.
RootSet roots_mod_prime(const QuarticPoly& f, u64 p, RootMethod method = RootMethod::automatic);
}  // namespace detail

}  // namespace sqfree
