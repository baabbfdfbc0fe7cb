#include "lgpoly/reports.hpp"

#include "lgpoly/poly_text.hpp"

namespace lgpoly {

namespace {

std::string dec(uint64_t v) { return std::to_string(v); }

ordered_json prime_list(const std::vector<uint64_t>& ps) {
  ordered_json a = ordered_json::array();
  for (uint64_t p : ps) a.push_back(dec(p));
  return a;
}

const char* local_holds_name(LocalHolds h) {
  switch (h) {
    case LocalHolds::yes_empirically:
      return "yes-empirically";
    case LocalHolds::no_with_witnesses:
      return "no-with-witnesses";
    default:
      return "vacuous";
  }
}

const char* principle_name(Principle p) {
  switch (p) {
    case Principle::holds:
      return "holds";
    case Principle::violated:
      return "violated";
    default:
      return "unknown-at-bound";
  }
}

const char* status_name(LocalStatus s) {
  switch (s) {
    case LocalStatus::witness:
      return "witness";
    case LocalStatus::none:
      return "none";
    default:
      return "none-at-cap";
  }
}

std::string torsion_name(int t) { return t == 1 ? "+1" : "-1"; }

}  // namespace

std::string rational_string(const mpq_class& q) { return q.get_str(); }

ordered_json to_json(const IntPoly& f) {
  ordered_json a = ordered_json::array();
  if (f.is_zero()) {
    a.push_back("0");
    return a;
  }
  for (const auto& c : f.coeffs()) a.push_back(c.get_str());
  return a;
}

ordered_json to_json(const LocalScanReport& r) {
  ordered_json j;
  j["prime_bound"] = dec(r.prime_bound);
  j["primes_with_root"] = dec(r.primes_with_root);
  j["primes_without_root"] = prime_list(r.primes_without_root);
  j["exceptional_primes"] = prime_list(r.exceptional_primes);
  j["excluded_primes"] = prime_list(r.excluded_primes);
  j["density_estimate"] = rational_string(r.density_estimate);
  return j;
}

ordered_json to_json(const HasseVerdict& v) {
  ordered_json j;
  j["local_holds"] = local_holds_name(v.local_holds);
  j["global_holds"] = v.global_holds;
  j["integer_root"] =
      v.integer_root ? ordered_json(v.integer_root->get_str()) : ordered_json();
  j["principle"] = principle_name(v.principle);
  j["prime_bound"] = dec(v.prime_bound);
  j["exceptional_allowance"] = dec(v.exceptional_allowance);
  j["scan"] = to_json(v.scan);
  return j;
}

ordered_json to_json(const AllModuliVerdict& v) {
  ordered_json j;
  switch (v.kind) {
    case AllModuliKind::true_certified:
      j["kind"] = "true-certified";
      break;
    case AllModuliKind::false_with_witness:
      j["kind"] = "false-with-witness";
      break;
    case AllModuliKind::true_up_to_bound:
      j["kind"] = "true-up-to-bound";
      break;
  }
  j["witness"] = v.witness ? ordered_json(v.witness->get_str()) : ordered_json();
  j["analysis_bound"] = dec(v.analysis_bound);
  return j;
}

ordered_json to_json(const GroupPoly& F) {
  ordered_json j;
  ordered_json support = ordered_json::array();
  for (uint64_t p : F.support().primes()) support.push_back(dec(p));
  j["support"] = support;
  ordered_json coeffs = ordered_json::array();
  for (const auto& c : F.coeffs())
    coeffs.push_back(rational_string(c.to_rational()));
  j["coeffs"] = coeffs;
  return j;
}

ordered_json to_json(const GroupHasseReport& r) {
  ordered_json j;
  j["gcd_poly"] = to_json(r.gcd_poly);
  j["gcd_poly_display"] = to_display(r.gcd_poly, 'n');
  j["gcd_is_zero"] = r.gcd_is_zero;
  j["prime_bound"] = dec(r.prime_bound);
  ordered_json local = ordered_json::array();
  for (const auto& o : r.local) {
    ordered_json e;
    e["prime"] = dec(o.prime);
    e["status"] = status_name(o.status);
    if (o.status == LocalStatus::witness) {
      e["witness_n"] = dec(o.witness_n);
      e["torsion"] = torsion_name(o.torsion);
    }
    local.push_back(std::move(e));
  }
  j["local"] = std::move(local);
  j["local_failures"] = dec(r.local_failures);
  j["c1_observed"] = r.c1_observed;
  if (r.global) {
    ordered_json g;
    g["n"] = r.global->n.get_str();
    g["torsion"] = torsion_name(r.global->torsion);
    j["global"] = std::move(g);
  } else {
    j["global"] = ordered_json();
  }
  j["classical_verdict"] = to_json(r.classical_verdict);
  j["theorem_consistent"] = r.theorem_consistent;
  return j;
}

ordered_json to_json(const MembershipReport& r) {
  ordered_json j;
  j["global"] = r.global;
  j["prime_bound"] = dec(r.prime_bound);
  j["scanned"] = dec(r.scanned);
  j["local_failures"] = prime_list(r.local_failures);
  j["failure_density"] = rational_string(r.failure_density);
  j["observation_consistent"] = r.observation_consistent;
  return j;
}

ordered_json to_json(const DensityReport& r) {
  ordered_json j;
  j["l"] = dec(r.l);
  ordered_json ks = ordered_json::array();
  for (unsigned k : r.ks) ks.push_back(dec(k));
  j["ks"] = std::move(ks);
  ordered_json points = ordered_json::array();
  for (const auto& s : r.points) points.push_back(s);
  j["points"] = std::move(points);
  ordered_json values = ordered_json::array();
  for (const auto& s : r.point_values) values.push_back(s);
  j["point_values"] = std::move(values);
  j["prime_bound"] = dec(r.prime_bound);
  j["scanned"] = dec(r.scanned);
  j["matching"] = dec(r.matching);
  j["frequency"] = rational_string(r.frequency);
  return j;
}

Support support_from_json(const ordered_json& j) {
  if (!j.is_array() || j.empty())
    throw ParseError("support must be a nonempty array of primes");
  std::vector<uint64_t> primes;
  for (const auto& item : j) {
    if (item.is_number_unsigned())
      primes.push_back(item.get<uint64_t>());
    else if (item.is_number_integer() && item.get<int64_t>() > 0)
      primes.push_back(static_cast<uint64_t>(item.get<int64_t>()));
    else if (item.is_string())
      primes.push_back(std::stoull(item.get<std::string>()));
    else
      throw ParseError("support entries must be positive integers");
  }
  return Support(std::move(primes));
}

GroupPoly group_poly_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("support") || !j.contains("coeffs"))
    throw ParseError("group polynomial needs {support, coeffs}");
  Support support = support_from_json(j["support"]);
  if (!j["coeffs"].is_array())
    throw ParseError("coeffs must be an array of rationals");
  std::vector<SUnit> coeffs;
  for (const auto& item : j["coeffs"]) {
    std::string text;
    if (item.is_string())
      text = item.get<std::string>();
    else if (item.is_number_integer())
      text = std::to_string(item.get<long long>());
    else
      throw ParseError("coefficients must be rational strings");
    coeffs.push_back(from_rational(text, support));
  }
  return GroupPoly(std::move(support), std::move(coeffs));
}

}  // namespace lgpoly
