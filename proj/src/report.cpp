#include "sqfree/report.hpp"

#include <charconv>
#include <sstream>

#include "sqfree/bigfloat.hpp"

namespace sqfree {

namespace {

std::string str(u64 v) { return std::to_string(v); }

u64 num(const json& j, const char* key) { return parse_u64(j.at(key).get<std::string>()); }

std::string text(const json& j, const char* key) { return j.at(key).get<std::string>(); }

Splitting splitting_from(const std::string& s) {
  for (Splitting k : {Splitting::ramified, Splitting::split, Splitting::partial, Splitting::inert})
    if (to_string(k) == s) return k;
  throw InvalidArgument("unknown splitting type '" + s + "'");
}

constexpr mpfr_prec_t kBits = 256;

}  // namespace

json envelope(const std::string& kind, const json& body) {
  json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = kind;
  for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
  return j;
}

json to_json(const RootSet& r) {
  json roots = json::array();
  for (u64 x : r.roots) roots.push_back(str(x));
  return json{{"modulus", str(r.modulus)}, {"rho", str(r.count())}, {"roots", roots}};
}

RootSet root_set_from_json(const json& j) {
  RootSet r;
  r.modulus = num(j, "modulus");
  for (const auto& x : j.at("roots")) r.roots.push_back(parse_u64(x.get<std::string>()));
  if (num(j, "rho") != r.roots.size()) throw InvalidArgument("rho does not match the number of roots");
  return r;
}

json to_json(const PrimeClassification& c) {
  json j{{"p", str(c.p)},
         {"class_mod_8", str(static_cast<u64>(c.residue_class_mod8))},
         {"rho_p", str(c.rho_p)},
         {"rho_p2", str(c.rho_p2)},
         {"splitting", to_string(c.splitting)}};
  if (c.qf)
    j["form"] = json{{"a", str(c.qf->a)}, {"b", str(c.qf->b)}, {"D", str(c.qf->D)}};
  else
    j["form"] = nullptr;
  return j;
}

PrimeClassification classification_from_json(const json& j) {
  PrimeClassification c;
  c.p = num(j, "p");
  c.residue_class_mod8 = static_cast<int>(num(j, "class_mod_8"));
  c.rho_p = num(j, "rho_p");
  c.rho_p2 = num(j, "rho_p2");
  c.splitting = splitting_from(text(j, "splitting"));
  if (!j.at("form").is_null()) {
    const json& f = j.at("form");
    c.qf = QfRep{num(f, "a"), num(f, "b"), num(f, "D")};
  }
  return c;
}

json to_json(const SupportQuery& q) {
  return json{{"m", str(q.m)}, {"in_support", q.in_support}, {"omega0", str(q.omega0)}, {"omega1", str(q.omega1)}};
}

json to_json(const DensityEstimate& e) {
  return json{{"point", e.point},
              {"lower", e.lower},
              {"upper", e.upper},
              {"truncation_bound", str(e.truncation_bound)},
              {"factors_used", str(e.factors_used)}};
}

DensityEstimate density_from_json(const json& j) {
  DensityEstimate e;
  e.point = text(j, "point");
  e.lower = text(j, "lower");
  e.upper = text(j, "upper");
  e.truncation_bound = num(j, "truncation_bound");
  e.factors_used = num(j, "factors_used");
  return e;
}

json to_json(const DensityVariant& v) {
  json j{{"name", v.name}, {"description", v.description}};
  const json est = to_json(v.estimate);
  for (auto it = est.begin(); it != est.end(); ++it) j[it.key()] = it.value();
  return j;
}

json to_json(const Interval& iv) { return json{{"lo", str(iv.lo)}, {"hi", str(iv.hi)}}; }

Interval interval_from_json(const json& j) { return Interval{num(j, "lo"), num(j, "hi")}; }

json to_json(const SieveResult& s) {
  return json{{"count", std::to_string(s.count)},
              {"main_term", s.main_term},
              {"error_term", s.error_term},
              {"d_bound", str(s.d_bound)},
              {"support_size", str(s.support_size)}};
}

SieveResult sieve_from_json(const json& j) {
  SieveResult s;
  const std::string c = text(j, "count");
  s.count = c.rfind('-', 0) == 0 ? -static_cast<i64>(parse_u64(c.substr(1))) : static_cast<i64>(parse_u64(c));
  s.main_term = text(j, "main_term");
  s.error_term = text(j, "error_term");
  s.d_bound = num(j, "d_bound");
  s.support_size = num(j, "support_size");
  return s;
}

json to_json(const CountReport& r) {
  json j{{"interval", to_json(r.interval)}};
  j["exact_count"] = r.exact_count ? json(str(*r.exact_count)) : json(nullptr);
  j["sieve"] = r.sieve ? to_json(*r.sieve) : json(nullptr);
  j["predicted"] = r.predicted ? json(*r.predicted) : json(nullptr);
  return j;
}

CountReport count_report_from_json(const json& j) {
  CountReport r;
  r.interval = interval_from_json(j.at("interval"));
  if (!j.at("exact_count").is_null()) r.exact_count = num(j, "exact_count");
  if (!j.at("sieve").is_null()) r.sieve = sieve_from_json(j.at("sieve"));
  if (!j.at("predicted").is_null()) r.predicted = text(j, "predicted");
  return r;
}

json to_json(const ScanRow& r) {
  char eps[32];
  auto end = std::to_chars(eps, eps + sizeof eps, r.epsilon).ptr;
  return json{{"x", str(r.x)},          {"count", str(r.count)},         {"main", r.main},
              {"error", r.error},       {"predicted", r.predicted},      {"deviation", r.deviation},
              {"normalized", r.normalized}, {"epsilon", std::string(eps, end)}};
}

ScanRow scan_row_from_json(const json& j) {
  ScanRow r;
  r.x = num(j, "x");
  r.count = num(j, "count");
  r.main = text(j, "main");
  r.error = text(j, "error");
  r.predicted = text(j, "predicted");
  r.deviation = text(j, "deviation");
  r.normalized = text(j, "normalized");
  r.epsilon = std::stod(text(j, "epsilon"));
  return r;
}

json to_json(const EmpiricalDensity& e) {
  std::ostringstream v, h;
  v.precision(9);
  h.precision(3);
  v << std::fixed << e.value;
  h << std::scientific << e.half_width;
  return json{{"interval", to_json(e.interval)},
              {"count", str(e.count)},
              {"value", v.str()},
              {"half_width", h.str()},
              {"band", "heuristic: 3 sqrt(c(1-c)/N)"}};
}

json to_json(const Adjudication& a) {
  json checks = json::array();
  for (const auto& c : a.checks) {
    std::ostringstream p, d;
    p.precision(9);
    d.precision(3);
    p << std::fixed << c.point;
    d << std::scientific << c.distance;
    checks.push_back(json{{"name", c.name},
                          {"point", p.str()},
                          {"distance", d.str()},
                          {"within_band", c.within_band},
                          {"matches_reference", c.matches_reference}});
  }
  return json{{"empirical", to_json(a.empirical)},
              {"variants", checks},
              {"matched", a.matched ? json(*a.matched) : json(nullptr)},
              {"consistent", a.consistent()},
              {"reference", a.reference},
              {"reference_matches", a.reference_matches},
              {"reference_is_matched_variant", a.reference_is_matched}};
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::string out = std::string(kCountCsvHeader) + "\n";
  for (const auto& r : rows)
    out += str(r.x) + "," + str(r.count) + "," + r.main + "," + r.error + "," + r.predicted + "," + r.deviation + "," +
           r.normalized + "\n";
  return out;
}

std::string count_csv(const CountReport& r, double epsilon) {
  const u64 x = r.interval.lo;
  std::string count, main, error, predicted, deviation, normalized;
  i64 c = 0;
  if (r.exact_count)
    c = static_cast<i64>(*r.exact_count);
  else if (r.sieve)
    c = r.sieve->count;
  count = std::to_string(c);
  if (r.sieve) {
    main = r.sieve->main_term;
    error = r.sieve->error_term;
  }
  if (r.predicted) {
    predicted = *r.predicted;
    BigFloat dev(kBits, *r.predicted, Round::nearest);
    mpfr_si_sub(dev.raw(), c, dev.raw(), MPFR_RNDN);
    mpfr_abs(dev.raw(), dev.raw(), MPFR_RNDN);
    deviation = dev.to_fixed(6, Round::nearest);
    if (x > 0) {
      BigFloat scale(kBits);
      mpfr_set_ui(scale.raw(), x, MPFR_RNDN);
      BigFloat expo(kBits, 0.5 + epsilon);
      mpfr_pow(scale.raw(), scale.raw(), expo.raw(), MPFR_RNDN);
      mpfr_div(dev.raw(), dev.raw(), scale.raw(), MPFR_RNDN);
      normalized = dev.to_fixed(6, Round::nearest);
    }
    if (!r.sieve) {
      main = predicted;
      BigFloat err(kBits, *r.predicted, Round::nearest);
      mpfr_si_sub(err.raw(), c, err.raw(), MPFR_RNDN);
      error = err.to_fixed(6, Round::nearest);
    }
  }
  return std::string(kCountCsvHeader) + "\n" + str(x) + "," + count + "," + main + "," + error + "," + predicted + "," +
         deviation + "," + normalized + "\n";
}

std::string classify_csv(const std::vector<PrimeClassification>& rows) {
  std::string out = "p,class_mod_8,rho_p,rho_p2,splitting,form\n";
  for (const auto& c : rows) {
    std::string form;
    if (c.qf) form = str(c.qf->a) + "^2+" + str(c.qf->D) + "*" + str(c.qf->b) + "^2";
    out += str(c.p) + "," + str(static_cast<u64>(c.residue_class_mod8)) + "," + str(c.rho_p) + "," + str(c.rho_p2) +
           "," + to_string(c.splitting) + "," + form + "\n";
  }
  return out;
}

}  // namespace sqfree
