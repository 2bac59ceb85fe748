#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sqfree/congruence.hpp"
#include "sqfree/counting.hpp"

using namespace sqfree;

namespace {

const QuarticPoly kCyc8 = QuarticPoly::cyc8();
const QuarticPoly kFerm2 = QuarticPoly::ferm2();
const QuarticPoly kDihed = QuarticPoly::dihed();

u64 oracle_count(const QuarticPoly& f, u64 lo, u64 hi) {
  u64 c = 0;
  for (u64 n = lo; n <= hi; ++n) c += oracle::squarefree(oracle::eval(f, n));
  return c;
}

u64 oracle_divisor_count(const QuarticPoly& f, u64 d, u64 lo, u64 hi) {
  u64 c = 0;
  for (u64 n = lo; n <= hi; ++n) c += oracle::eval(f, n) % (d * d) == 0;
  return c;
}

bool squarefree_small(u64 d) {
  for (u64 p = 2; p * p <= d; ++p)
    if (d % (p * p) == 0) return false;
  return true;
}

DensityEstimate fixed_estimate(const std::string& point) {
  DensityEstimate e;
  e.point = e.lower = e.upper = point;
  e.truncation_bound = 100;
  return e;
}

}  // namespace

TEST_CASE("intervals") {
  CHECK(Interval::dyadic(1024) == Interval{1024, 2048});
  CHECK(Interval{5, 4}.empty());
  CHECK(Interval{5, 4}.length() == 0);
  CHECK(Interval{5, 5}.length() == 1);
}

TEST_CASE("exact count: worked examples") {
  CHECK(count_exact(kCyc8, {134, 134}) == 0);
  CHECK(count_exact(kCyc8, {1, 1}) == 1);
  CHECK(count_exact(kCyc8, {100, 200}) == oracle_count(kCyc8, 100, 200));
  CHECK(count_exact(kCyc8, {100, 200}) == 97);
  CHECK(count_exact(kCyc8, {1, 10}) == oracle_count(kCyc8, 1, 10));
  CHECK(count_exact(kCyc8, {9, 3}) == 0);
}

TEST_CASE("exact count agrees with trial division") {
  auto rng = oracle::rng(101);
  for (int it = 0; it < 50; ++it) {
    std::array<i64, 5> c;
    for (auto& x : c) x = static_cast<i64>(rng() % 21) - 10;
    if (c[0] == 0) c[0] = 1;
    const QuarticPoly f(c);
    const u64 lo = rng() % 200, hi = lo + rng() % 40;
    INFO(f.to_string(), " on [", lo, ", ", hi, "]");
    const u64 want = oracle_count(f, lo, hi);
    for (auto s : {ExactStrategy::per_value, ExactStrategy::sieved}) {
      CountOptions opts;
      opts.strategy = s;
      CHECK(count_exact(f, {lo, hi}, opts) == want);
    }
  }
}

TEST_CASE("flags treat zeros and negative values correctly") {
  // T^4 - 1 vanishes at 1; T^4 - 100 is negative below 4
  const QuarticPoly g({1, 0, 0, 0, -1});
  const QuarticPoly h({1, 0, 0, 0, -100});
  for (auto s : {ExactStrategy::per_value, ExactStrategy::sieved}) {
    CountOptions opts;
    opts.strategy = s;
    const auto fg = squarefree_flags(g, {0, 40}, opts);
    const auto fh = squarefree_flags(h, {0, 40}, opts);
    REQUIRE(fg.size() == 41);
    for (u64 n = 0; n <= 40; ++n) {
      CHECK(fg[n] == oracle::squarefree(oracle::eval(g, n)));
      CHECK(fh[n] == oracle::squarefree(oracle::eval(h, n)));
    }
    CHECK(fg[1] == 0);
  }
}

TEST_CASE("sieved and per-value strategies agree on long ranges") {
  for (const auto& f : {kCyc8, kFerm2, kDihed, QuarticPoly::phi5()}) {
    for (u64 lo : {u64(1), u64(50'000), u64(200'000)}) {
      const Interval iv{lo, lo + 4000};
      CountOptions a, b;
      a.strategy = ExactStrategy::per_value;
      b.strategy = ExactStrategy::sieved;
      CHECK(squarefree_flags(f, iv, a) == squarefree_flags(f, iv, b));
    }
  }
}

TEST_CASE("exact count is independent of the worker count") {
  CountOptions one, three;
  one.workers = 1;
  three.workers = 3;
  const Interval iv{100000, 200000};
  const u64 a = count_exact(kDihed, iv, one);
  CHECK(count_exact(kDihed, iv, three) == a);
  CHECK(a == 90064);
}

TEST_CASE("exact count range limits") {
  CHECK_THROWS_AS(count_exact(kCyc8, {u64(1) << 40, (u64(1) << 40) + 5}), RangeError);
  CHECK_THROWS_AS(count_exact(kCyc8, {1, u64(1) << 63}), RangeError);
  CHECK_NOTHROW(count_exact(kCyc8, {(u64(1) << 31) - 10, u64(1) << 31}));
}

TEST_CASE("divisor counts") {
  CHECK(count_by_divisor(kCyc8, 17, {100, 200}) == 4);
  CHECK(count_by_divisor(kCyc8, 17, {0, 288}) == 4);
  CHECK(count_by_divisor(kCyc8, 3, {0, 100000}) == 0);
  CHECK(count_by_divisor(kCyc8, 1, {5, 9}) == 5);
  CHECK(count_by_divisor(kCyc8, 17, {9, 3}) == 0);
  CHECK_THROWS_AS(count_by_divisor(kCyc8, (u64(1) << 32) + 1, {0, 10}), RangeError);

  auto rng = oracle::rng(103);
  int done = 0;
  while (done < 200) {
    const u64 d = 2 + rng() % 400;
    if (!squarefree_small(d)) continue;
    const auto& f = done % 3 == 0 ? kCyc8 : done % 3 == 1 ? kFerm2 : kDihed;
    const u64 lo = rng() % 500000, hi = lo + rng() % 5000;
    CHECK(count_by_divisor(f, d, {lo, hi}) == oracle_divisor_count(f, d, lo, hi));
    // one full period holds exactly rho(d^2) solutions
    const u64 a = rng() % 1000000;
    CHECK(count_by_divisor(f, d, {a, a + d * d - 1}) == rho(f, d * d));
    ++done;
  }
}

TEST_CASE("sieve equals the exact count under the full divisor range") {
  for (const auto& f : {kCyc8, kFerm2, kDihed, QuarticPoly::phi12()}) {
    for (u64 x = 1; x <= 300; x += 23) {
      const Interval iv{x, 2 * x};
      const auto s = count_sieve(f, iv);
      INFO(f.to_string(), " x = ", x);
      CHECK(s.count == static_cast<i64>(count_exact(f, iv)));
      CHECK(std::abs(std::stod(s.count == 0 ? "0" : std::to_string(s.count)) - std::stod(s.main_term) -
                     std::stod(s.error_term)) < 1e-6);
    }
  }
  const auto s = count_sieve(kCyc8, {100, 200});
  CHECK(s.count == 97);
  CHECK(s.d_bound == 40000);
  CHECK(s.support_size == 1201);
}

TEST_CASE("sieve with integer zeros in range") {
  // (T^2 - 4)(T^2 + 1) vanishes at 2
  const QuarticPoly g({1, 0, -3, 0, -4});
  for (u64 lo : {0, 1, 2, 3})
    CHECK(count_sieve(g, {lo, 60}).count == static_cast<i64>(count_exact(g, {lo, 60})));
}

TEST_CASE("sieve bounds and edge cases") {
  CHECK(count_sieve(kCyc8, {10, 3}).count == 0);
  CHECK_THROWS_AS(count_sieve(kCyc8, {1, 5000}), ExplicitBoundRequired);
  const auto a = count_sieve(kCyc8, {1000, 2000}, 2000);
  CHECK(a.d_bound == 2000);
  // every d counted with d <= 2000 is below the full bound, so the truncated
  // sum can only differ by the terms with d > 2000
  const auto full = count_sieve(kCyc8, {1000, 2000});
  CHECK(full.count == static_cast<i64>(count_exact(kCyc8, {1000, 2000})));
  CHECK(a.support_size < full.support_size);
  CHECK(full.d_bound == 4'000'000);
  const auto b = count_sieve(kCyc8, {1000, 2000}, 5'000'000);
  CHECK(b.count == full.count);
  CHECK(b.support_size > full.support_size);
}

TEST_CASE("count report") {
  const auto c = euler_product(kCyc8, 10000);
  const auto r = count_report(kCyc8, {100, 200}, CountMethod::both, std::nullopt, &c);
  REQUIRE(r.exact_count.has_value());
  REQUIRE(r.sieve.has_value());
  CHECK(*r.exact_count == 97);
  CHECK(r.sieve->count == 97);
  REQUIRE(r.predicted.has_value());
  CHECK(std::abs(std::stod(*r.predicted) - 101 * c.point_value()) < 1e-6);
  const auto e = count_report(kCyc8, {100, 200}, CountMethod::exact, std::nullopt, nullptr);
  CHECK_FALSE(e.sieve.has_value());
  CHECK_FALSE(e.predicted.has_value());
}

TEST_CASE("error scan") {
  const auto c = euler_product(kFerm2, 100000);
  const std::vector<u64> xs{1024, 2048, 1024};
  const auto rows = scan_error(kFerm2, xs, c, 0.1);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == rows[2]);
  for (const auto& row : rows) {
    CHECK(row.count == count_exact(kFerm2, Interval::dyadic(row.x)));
    const double pred = c.point_value() * static_cast<double>(row.x + 1);
    CHECK(std::abs(std::stod(row.predicted) - pred) < 1e-6);
    CHECK(std::abs(std::stod(row.deviation) - std::abs(row.count - pred)) < 1e-6);
    CHECK(std::abs(std::stod(row.normalized) - std::stod(row.deviation) / std::pow(row.x, 0.6)) < 1e-6);
    CHECK(row.epsilon == 0.1);
  }

  const auto zero = scan_error(kFerm2, {500}, fixed_estimate("0"), 0.1);
  CHECK(std::stod(zero[0].deviation) == static_cast<double>(zero[0].count));
  CHECK_THROWS_AS(scan_error(kFerm2, {500}, c, -0.5), InvalidArgument);
  CHECK_THROWS_AS(scan_error(kFerm2, {0}, c, 0.1), InvalidArgument);
}

TEST_CASE("empirical density") {
  const auto e = empirical_density(kCyc8, {100000, 200000});
  CHECK(e.count == count_exact(kCyc8, {100000, 200000}));
  CHECK(e.value == doctest::Approx(static_cast<double>(e.count) / 100001));
  CHECK(e.half_width == doctest::Approx(3 * std::sqrt(e.value * (1 - e.value) / 100001)));
  const auto c = euler_product(kCyc8, 1'000'000);
  CHECK(std::abs(e.value - c.point_value()) <= e.half_width);
  CHECK_THROWS_AS(empirical_density(kCyc8, {5, 4}), InvalidArgument);
}

TEST_CASE("adjudication") {
  EmpiricalDensity emp;
  emp.interval = {1, 100};
  emp.value = 0.90;
  emp.half_width = 0.01;
  auto variant = [](const std::string& name, const std::string& point) {
    return DensityVariant{name, name, fixed_estimate(point)};
  };

  const auto a = adjudicate({variant("full", "0.905"), variant("half", "0.4525"), variant("other", "0.963802")}, emp,
                            "0.963802");
  REQUIRE(a.matched.has_value());
  CHECK(*a.matched == "full");
  CHECK(a.consistent());
  CHECK(a.reference_matches == std::vector<std::string>{"other"});
  CHECK_FALSE(a.reference_is_matched);
  CHECK(a.checks.size() == 3);
  CHECK(a.checks[0].within_band);
  CHECK(a.checks[1].distance == doctest::Approx(0.4475));

  const auto b = adjudicate({variant("x", "0.905"), variant("y", "0.895")}, emp, "0.905");
  CHECK_FALSE(b.matched.has_value());
  CHECK_FALSE(b.consistent());

  const auto c = adjudicate({variant("x", "0.5"), variant("y", "0.6")}, emp, "0.1");
  CHECK_FALSE(c.consistent());
  CHECK(c.reference_matches.empty());

  const auto d = adjudicate({variant("x", "0.9012"), variant("y", "0.6")}, emp, "0.901");
  CHECK(d.matched == std::optional<std::string>("x"));
  CHECK(d.reference_is_matched);
}
