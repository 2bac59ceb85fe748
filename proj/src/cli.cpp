#include "sqfree/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>

#include "sqfree/congruence.hpp"
#include "sqfree/counting.hpp"
#include "sqfree/density.hpp"
#include "sqfree/primes.hpp"
#include "sqfree/report.hpp"

namespace sqfree {

namespace {

struct RunConfig {
  std::string format = "text";
  unsigned workers = 0;
  unsigned precision = 50;
};

struct PolyArgs {
  std::string name;
  std::string coeffs;
};

const std::map<std::string, QuarticPoly>& named_polys() {
  static const std::map<std::string, QuarticPoly> table{{"cyc8", QuarticPoly::cyc8()},
                                                        {"ferm2", QuarticPoly::ferm2()},
                                                        {"dihed", QuarticPoly::dihed()},
                                                        {"phi5", QuarticPoly::phi5()},
                                                        {"phi12", QuarticPoly::phi12()}};
  return table;
}

std::vector<i64> parse_int_list(const std::string& text) {
  std::vector<i64> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove(item.begin(), item.end(), ' '), item.end());
    i64 v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec == std::errc::result_out_of_range) throw RangeError("coefficient out of range: " + item);
    if (ec != std::errc() || ptr != item.data() + item.size()) throw InvalidArgument("not an integer: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

QuarticPoly resolve(const PolyArgs& a) {
  if (!a.name.empty() && !a.coeffs.empty()) throw InvalidArgument("give either --poly or --coeffs, not both");
  if (!a.name.empty()) {
    auto it = named_polys().find(a.name);
    if (it == named_polys().end()) throw InvalidArgument("unknown polynomial '" + a.name + "'");
    return it->second;
  }
  if (a.coeffs.empty()) throw InvalidArgument("a polynomial is required (--poly or --coeffs)");
  auto c = parse_int_list(a.coeffs);
  if (c.empty() || c.size() > 5) throw InvalidArgument("--coeffs takes 1 to 5 integers, leading coefficient first");
  std::array<i64, 5> hl{};
  std::copy(c.begin(), c.end(), hl.begin() + static_cast<std::ptrdiff_t>(5 - c.size()));
  return QuarticPoly(hl);
}

void add_poly(CLI::App* sub, PolyArgs& a) {
  sub->add_option("--poly", a.name, "named polynomial: cyc8, ferm2, dihed, phi5, phi12");
  sub->add_option("--coeffs", a.coeffs, "coefficients a4,a3,a2,a1,a0 (leading first)");
}

std::vector<u64> parse_u64_list(const std::string& text) {
  std::vector<u64> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove(item.begin(), item.end(), ' '), item.end());
    if (!item.empty()) out.push_back(parse_u64(item));
  }
  return out;
}

std::string join(const std::vector<u64>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

class Emitter {
 public:
  Emitter(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}
  bool json_mode() const { return cfg_.format == "json"; }
  bool csv_mode() const { return cfg_.format == "csv"; }
  void emit_json(const std::string& kind, const json& body) { out_ << envelope(kind, body).dump(2) << "\n"; }
  std::ostream& text() { return out_; }

 private:
  const RunConfig& cfg_;
  std::ostream& out_;
};

std::optional<DensityEstimate> try_density(const QuarticPoly& f, u64 P, const RunConfig& cfg) {
  if (P == 0 || !f.is_separable()) return std::nullopt;
  return euler_product(f, P, DensityOptions{cfg.precision, cfg.workers});
}

// ---- commands ----

void cmd_rho(const QuarticPoly& f, u64 m, Emitter& e) {
  if (m == 0) throw InvalidArgument("modulus must be positive");
  const RootSet roots = roots_mod(f, m);
  if (m >= 2 && rho(f, m) != roots.count())
    throw Inconsistency("rho(" + std::to_string(m) + ") disagrees with the listed roots");
  if (e.json_mode()) {
    json body = to_json(roots);
    body["poly"] = f.to_string();
    e.emit_json("rho", body);
    return;
  }
  if (e.csv_mode()) {
    e.text() << "modulus,rho,roots\n" << m << "," << roots.count() << "," << join(roots.roots, " ") << "\n";
    return;
  }
  e.text() << "f = " << f.to_string() << "\nmodulus " << m << "\nrho " << roots.count() << "\nroots "
           << join(roots.roots, " ") << "\n";
}

void print_estimate(std::ostream& os, const DensityEstimate& d) {
  os << "point " << d.point << "\nlower " << d.lower << "\nupper " << d.upper << "\nwidth " << d.width()
     << "\ntruncation_bound " << d.truncation_bound << "\nfactors_used " << d.factors_used << "\n";
}

void cmd_density(const QuarticPoly& f, u64 P, bool variants, u64 empirical_x, const std::string& reference,
                 const RunConfig& cfg, Emitter& e) {
  const DensityOptions opts{cfg.precision, cfg.workers};
  if (!variants) {
    const DensityEstimate d = euler_product(f, P, opts);
    if (e.json_mode()) {
      json body = to_json(d);
      body["poly"] = f.to_string();
      e.emit_json("density", body);
    } else if (e.csv_mode()) {
      e.text() << "point,lower,upper,truncation_bound,factors_used\n"
               << d.point << "," << d.lower << "," << d.upper << "," << d.truncation_bound << "," << d.factors_used
               << "\n";
    } else {
      e.text() << "f = " << f.to_string() << "\n";
      print_estimate(e.text(), d);
    }
    return;
  }

  const auto vs = density_variants(f, P, opts);
  std::optional<Adjudication> adj;
  if (empirical_x > 0) {
    const auto emp = empirical_density(f, Interval::dyadic(empirical_x), CountOptions{cfg.workers});
    adj = adjudicate(vs, emp, reference);
  }
  std::vector<std::string> ref_matches;
  if (!reference.empty())
    for (const auto& v : vs)
      if (matches_to_digits(v.estimate, reference)) ref_matches.push_back(v.name);

  if (e.json_mode()) {
    json arr = json::array();
    for (const auto& v : vs) arr.push_back(to_json(v));
    json body{{"poly", f.to_string()}, {"truncation_bound", std::to_string(P)}, {"variants", arr}};
    if (!reference.empty()) body["reference"] = reference, body["reference_matches"] = ref_matches;
    if (adj) body["adjudication"] = to_json(*adj);
    e.emit_json("density_variants", body);
    return;
  }
  if (e.csv_mode()) {
    e.text() << "name,point,lower,upper,truncation_bound,factors_used\n";
    for (const auto& v : vs)
      e.text() << v.name << "," << v.estimate.point << "," << v.estimate.lower << "," << v.estimate.upper << ","
               << v.estimate.truncation_bound << "," << v.estimate.factors_used << "\n";
    return;
  }
  auto& os = e.text();
  os << "f = " << f.to_string() << "\ntruncation_bound " << P << "\n";
  for (const auto& v : vs)
    os << v.name << "  " << v.estimate.point.substr(0, 14) << "  [" << v.estimate.lower.substr(0, 14) << ", "
       << v.estimate.upper.substr(0, 14) << "]  " << v.description << "\n";
  if (!reference.empty()) {
    os << "reference " << reference << " matches to " << (reference.size() - reference.find('.') - 1) << " places: ";
    os << (ref_matches.empty() ? std::string("none") : ref_matches.front());
    for (std::size_t i = 1; i < ref_matches.size(); ++i) os << ", " << ref_matches[i];
    os << "\n";
  }
  if (adj) {
    const auto& emp = adj->empirical;
    os << "empirical over [" << emp.interval.lo << ", " << emp.interval.hi << "]: " << emp.count << "/"
       << emp.interval.length() << " = " << emp.value << " +- " << emp.half_width
       << " (heuristic band, 3 binomial standard deviations)\n";
    for (const auto& c : adj->checks)
      os << "  " << c.name << ": distance " << c.distance << (c.within_band ? "  within band" : "") << "\n";
    if (adj->matched)
      os << "matched variant: " << *adj->matched << "\n";
    else
      os << "matched variant: none unique (adjudication inconclusive)\n";
    if (!reference.empty())
      os << "reference " << reference << (adj->reference_is_matched ? " is" : " is not") << " the matched variant\n";
  }
}

void cmd_count(const QuarticPoly& f, u64 x, u64 hi, const std::string& method, std::optional<u64> d_bound,
               u64 density_bound, double epsilon, const RunConfig& cfg, Emitter& e) {
  if (x == 0) throw InvalidArgument("x must be positive");
  const Interval iv = hi == 0 ? Interval::dyadic(x) : Interval{x, hi};
  if (iv.empty()) throw InvalidArgument("--hi must not be below --x");
  const CountMethod m = method == "exact" ? CountMethod::exact : method == "sieve" ? CountMethod::sieve : CountMethod::both;
  const auto density = try_density(f, density_bound, cfg);
  const CountReport rep = count_report(f, iv, m, d_bound, density ? &*density : nullptr, CountOptions{cfg.workers});
  if (e.json_mode()) {
    json body = to_json(rep);
    body["poly"] = f.to_string();
    e.emit_json("count", body);
    return;
  }
  if (e.csv_mode()) {
    e.text() << count_csv(rep, epsilon);
    return;
  }
  auto& os = e.text();
  os << "f = " << f.to_string() << "\ninterval [" << iv.lo << ", " << iv.hi << "]\n";
  if (rep.exact_count) os << "exact " << *rep.exact_count << "\n";
  if (rep.sieve) {
    os << "sieve " << rep.sieve->count << " (d <= " << rep.sieve->d_bound << ", " << rep.sieve->support_size
       << " support elements)\nmain_term " << rep.sieve->main_term << "\nerror_term " << rep.sieve->error_term << "\n";
  }
  if (rep.predicted) os << "predicted " << *rep.predicted << " (c_f at P = " << density_bound << ")\n";
}

void cmd_scan(const QuarticPoly& f, std::vector<u64> xs, double epsilon, u64 density_bound, const RunConfig& cfg,
              Emitter& e) {
  if (xs.empty()) throw InvalidArgument("no x values to scan");
  const auto density = try_density(f, density_bound, cfg);
  if (!density) throw InvalidArgument("scan needs a separable polynomial and a density bound");
  const auto rows = scan_error(f, xs, *density, epsilon, CountOptions{cfg.workers});
  if (e.json_mode()) {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    e.emit_json("scan", json{{"poly", f.to_string()}, {"density", to_json(*density)}, {"rows", arr}});
    return;
  }
  e.text() << scan_csv(rows);
}

void cmd_classify(const QuarticPoly& f, u64 bound, bool crosscheck, Emitter& e) {
  std::vector<PrimeClassification> rows;
  const CrossCheck check = crosscheck ? CrossCheck::below_bound : CrossCheck::none;
  for_each_prime(2, bound, [&](u64 p) { rows.push_back(classify_prime(f, p, check)); });
  if (e.json_mode()) {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    e.emit_json("classify", json{{"poly", f.to_string()}, {"bound", std::to_string(bound)}, {"primes", arr}});
    return;
  }
  if (e.csv_mode()) {
    e.text() << classify_csv(rows);
    return;
  }
  auto& os = e.text();
  os << "f = " << f.to_string() << "\n" << classify_csv(rows);
  std::map<u64, std::vector<u64>> by_rho;
  for (const auto& r : rows) by_rho[r.rho_p].push_back(r.p);
  for (const auto& [rho_value, ps] : by_rho) os << "rho_p = " << rho_value << ": " << join(ps, ", ") << "\n";
}

QuarticPoly quadratic_with_disc(i64 D) {
  const i64 r = ((D % 4) + 4) % 4;
  if (r == 0) return QuarticPoly({0, 0, 1, 0, -D / 4});
  if (r == 1) return QuarticPoly({0, 0, 1, 1, (1 - D) / 4});
  throw InvalidArgument("a discriminant is 0 or 1 mod 4");
}

void cmd_reciprocity(const std::string& kind, const std::string& disc, const std::string& coeffs, u64 p, unsigned n,
                     Emitter& e) {
  json body{{"test", kind}, {"p", std::to_string(p)}};
  std::vector<std::string> lines;
  if (kind == "quadratic") {
    if (disc.empty() == coeffs.empty()) throw InvalidArgument("give exactly one of --disc and --coeffs");
    QuarticPoly g = [&] {
      if (!disc.empty()) {
        auto d = parse_int_list(disc);
        if (d.size() != 1) throw InvalidArgument("--disc takes one integer");
        return quadratic_with_disc(d[0]);
      }
      auto c = parse_int_list(coeffs);
      if (c.size() != 3) throw InvalidArgument("--coeffs takes a,b,c for a T^2 + b T + c");
      return QuarticPoly({0, 0, c[0], c[1], c[2]});
    }();
    const auto t = classify_quadratic(g, p);
    body["polynomial"] = g.to_string();
    body["type"] = to_string(t);
    lines.push_back(g.to_string() + " mod " + std::to_string(p) + ": " + to_string(t));
  } else if (kind == "quartic2") {
    const bool res = quartic_residue(2, p);
    body["quartic_residue"] = res;
    lines.push_back(std::string("2 is ") + (res ? "a quartic residue" : "not a quartic residue") + " mod " +
                    std::to_string(p));
    if (p % 8 == 1) {
      const auto rep = cornacchia(p, 1);
      if (!rep) throw Inconsistency("no two-square representation for " + std::to_string(p));
      const bool crit = rep->b % 8 == 0;
      if (crit != res) throw Inconsistency("form criterion disagrees with the residue test at " + std::to_string(p));
      body["form"] = json{{"a", std::to_string(rep->a)}, {"b", std::to_string(rep->b)}};
      body["b_divisible_by_8"] = crit;
      lines.push_back("rep " + std::to_string(rep->a) + "^2 + " + std::to_string(rep->b) +
                      "^2, b = 0 mod 8: " + (crit ? "yes" : "no"));
    }
  } else if (kind == "quartic3") {
    const bool res = quartic_residue_3(p);
    body["quartic_residue"] = res;
    lines.push_back(std::string("3 is ") + (res ? "a quartic residue" : "not a quartic residue") + " mod " +
                    std::to_string(p));
    if (p % 8 == 1) {
      const bool cond = quartic_residue_3_form_condition(p);
      body["form_condition"] = cond;
      lines.push_back(std::string("form condition (p = a^2 + b^2, 3 | b): ") + (cond ? "holds" : "fails"));
    }
  } else if (kind == "cyclotomic") {
    const auto s = cyclotomic_splitting(n, p);
    const char* label = s.kind == CyclotomicSplitting::Kind::ramified       ? "ramified"
                        : s.kind == CyclotomicSplitting::Kind::split_linear ? "split-linear"
                                                                            : "factors";
    body["n"] = std::to_string(n);
    body["splitting"] = label;
    body["factors"] = std::to_string(s.count);
    body["degree"] = std::to_string(s.degree);
    lines.push_back("Phi_" + std::to_string(n) + " mod " + std::to_string(p) + ": " + label + " (" + to_string(s) + ")");
  } else {
    throw InvalidArgument("unknown reciprocity test '" + kind + "'");
  }
  if (e.json_mode()) {
    e.emit_json("reciprocity", body);
    return;
  }
  for (const auto& l : lines) e.text() << l << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Squarefree values of quartic polynomials"};
  app.name("sqfree");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--workers", cfg.workers, "worker threads (0: SQFREE_WORKERS or hardware)");
  app.add_option("--precision", cfg.precision, "decimal digits for density products")->check(CLI::Range(10u, 1000u));

  PolyArgs poly;
  std::string m_text, bound_text = "1e6", x_text, hi_text, method = "exact", dbound_text, xs_text,
                      empirical_text, reference, kind, disc, qcoeffs, p_text, density_bound_text = "1e5";
  bool variants = false, no_crosscheck = false;
  double epsilon = 0.1;
  unsigned n = 0, from_exp = 10, to_exp = 20;

  auto* rho_cmd = app.add_subcommand("rho", "roots of f modulo m");
  add_poly(rho_cmd, poly);
  rho_cmd->add_option("--m", m_text, "modulus")->required();

  auto* density_cmd = app.add_subcommand("density", "truncated Euler product with enclosure");
  add_poly(density_cmd, poly);
  density_cmd->add_option("--bound", bound_text, "truncation prime bound P (>= 100)");
  density_cmd->add_flag("--variants", variants, "full, p = 5 excluded and halved products");
  density_cmd->add_option("--empirical-x", empirical_text, "compare variants with the count over [x, 2x]");
  density_cmd->add_option("--reference", reference, "decimal to test the variants against");

  auto* count_cmd = app.add_subcommand("count", "count squarefree values over [x, 2x]");
  add_poly(count_cmd, poly);
  count_cmd->add_option("--x", x_text, "lower end x")->required();
  count_cmd->add_option("--hi", hi_text, "upper end (default 2x)");
  count_cmd->add_option("--method", method, "exact, sieve or both")->check(CLI::IsMember({"exact", "sieve", "both"}));
  count_cmd->add_option("--d-bound", dbound_text, "divisor bound for the sieve");
  count_cmd->add_option("--density-bound", density_bound_text, "prime bound for the predicted value (0: none)");
  count_cmd->add_option("--epsilon", epsilon, "exponent slack in the csv normalized column");

  auto* scan_cmd = app.add_subcommand("scan", "error term scan over dyadic intervals");
  add_poly(scan_cmd, poly);
  scan_cmd->add_option("--xs", xs_text, "comma separated x values");
  scan_cmd->add_option("--from-exp", from_exp, "first x = 2^k when --xs is absent");
  scan_cmd->add_option("--to-exp", to_exp, "last x = 2^k when --xs is absent");
  scan_cmd->add_option("--epsilon", epsilon, "normalize by x^(1/2 + epsilon)");
  scan_cmd->add_option("--density-bound", bound_text, "prime bound for c_f");

  auto* classify_cmd = app.add_subcommand("classify", "root counts and splitting for primes up to a bound");
  add_poly(classify_cmd, poly);
  classify_cmd->add_option("--bound", bound_text, "prime bound")->required();
  classify_cmd->add_flag("--no-crosscheck", no_crosscheck, "skip the exhaustive scan below 10^6");

  auto* rec_cmd = app.add_subcommand("reciprocity", "quadratic, quartic and cyclotomic splitting laws");
  rec_cmd->add_option("kind", kind, "quadratic, quartic2, quartic3 or cyclotomic")
      ->required()
      ->check(CLI::IsMember({"quadratic", "quartic2", "quartic3", "cyclotomic"}));
  rec_cmd->add_option("--p", p_text, "prime")->required();
  rec_cmd->add_option("--disc", disc, "discriminant of the quadratic");
  rec_cmd->add_option("--coeffs", qcoeffs, "a,b,c of a T^2 + b T + c");
  rec_cmd->add_option("--n", n, "cyclotomic index");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  Emitter emitter(cfg, out);
  try {
    if (rho_cmd->parsed()) {
      cmd_rho(resolve(poly), parse_u64(m_text), emitter);
    } else if (density_cmd->parsed()) {
      cmd_density(resolve(poly), parse_u64(bound_text), variants, empirical_text.empty() ? 0 : parse_u64(empirical_text),
                  reference, cfg, emitter);
    } else if (count_cmd->parsed()) {
      std::optional<u64> d_bound;
      if (!dbound_text.empty()) d_bound = parse_u64(dbound_text);
      cmd_count(resolve(poly), parse_u64(x_text), hi_text.empty() ? 0 : parse_u64(hi_text), method, d_bound,
                parse_u64(density_bound_text), epsilon, cfg, emitter);
    } else if (scan_cmd->parsed()) {
      std::vector<u64> xs;
      if (!xs_text.empty()) {
        xs = parse_u64_list(xs_text);
      } else {
        if (from_exp > to_exp || to_exp > 40) throw InvalidArgument("need from-exp <= to-exp <= 40");
        for (unsigned k = from_exp; k <= to_exp; ++k) xs.push_back(u64(1) << k);
      }
      cmd_scan(resolve(poly), xs, epsilon, parse_u64(bound_text), cfg, emitter);
    } else if (classify_cmd->parsed()) {
      cmd_classify(resolve(poly), parse_u64(bound_text), !no_crosscheck, emitter);
    } else if (rec_cmd->parsed()) {
      cmd_reciprocity(kind, disc, qcoeffs, parse_u64(p_text), n, emitter);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::range_error& e) {
    err << "range error: " << e.what() << "\n";
    return kExitRange;
  } catch (const std::out_of_range& e) {
    err << "range error: " << e.what() << "\n";
    return kExitRange;
  } catch (const std::exception& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return kExitInconsistent;
  }
  return kExitOk;
}

}  // namespace sqfree
