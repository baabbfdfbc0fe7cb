#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lgpoly/grouppoly.hpp"
#include "lgpoly/hasse.hpp"
#include "lgpoly/poly_text.hpp"
#include "lgpoly/polyring.hpp"
#include "lgpoly/reports.hpp"
#include "lgpoly/sunits.hpp"

namespace {

using namespace lgpoly;

constexpr int kExitInput = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitBound = 4;

struct Config {
  uint64_t prime_bound = 10000;
  uint64_t analysis_bound = 1000;
  uint64_t enumeration_threshold = kDefaultEnumerationThreshold;
  uint64_t exceptional_allowance = 0;
  unsigned workers = 1;
  std::string format = "json";
  uint64_t seed = 0;  // reserved for randomized subcommands
  std::string input_file;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// positional JSON argument, or contents of --input
std::string group_input(const Config& cfg, const std::string& positional) {
  if (!cfg.input_file.empty()) return slurp(cfg.input_file);
  if (positional.empty())
    throw ParseError("missing input: pass a JSON object or --input file.json");
  return positional;
}

GroupPoly parse_group_poly(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return group_poly_from_json(j);
}

void emit(const Config& cfg, const ordered_json& doc,
          const std::string& text_rendering) {
  if (cfg.format == "text")
    std::cout << text_rendering;
  else
    std::cout << doc.dump(2) << "\n";
}

ordered_json envelope(const std::string& command) {
  ordered_json j;
  j["schema"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

std::string verdict_text(const HasseVerdict& v) {
  std::ostringstream out;
  out << "local: ";
  switch (v.local_holds) {
    case LocalHolds::yes_empirically:
      out << "yes-empirically";
      break;
    case LocalHolds::no_with_witnesses:
      out << "no-with-witnesses (" << v.scan.primes_without_root.size()
          << " primes without a root)";
      break;
    default:
      out << "vacuous";
  }
  out << "  [" << v.scan.primes_with_root << " with root, "
      << v.scan.primes_without_root.size() << " without, bound "
      << v.prime_bound << "]\n";
  out << "global: ";
  if (v.global_holds)
    out << "integer root " << v.integer_root->get_str() << "\n";
  else
    out << "no integer root\n";
  out << "principle: ";
  switch (v.principle) {
    case Principle::holds:
      out << "holds\n";
      break;
    case Principle::violated:
      out << "violated\n";
      break;
    default:
      out << "unknown-at-bound\n";
  }
  return out.str();
}

std::string group_report_text(const GroupHasseReport& r) {
  std::ostringstream out;
  out << "gcd: " << to_display(r.gcd_poly, 'n') << "\n";
  out << "local (C1): " << (r.c1_observed ? "holds" : "fails") << " at bound "
      << r.prime_bound << " (" << r.local_failures << " failing primes of "
      << r.local.size() << ")\n";
  out << "global (C2): ";
  if (r.global)
    out << "F(" << r.global->n.get_str() << ") = "
        << (r.global->torsion == 1 ? "+1" : "-1") << "\n";
  else
    out << "no witness\n";
  out << "classical principle for gcd: ";
  switch (r.classical_verdict.principle) {
    case Principle::holds:
      out << "holds\n";
      break;
    case Principle::violated:
      out << "violated\n";
      break;
    default:
      out << "unknown-at-bound\n";
  }
  out << "theorem consistent: " << (r.theorem_consistent ? "yes" : "NO") << "\n";
  return out.str();
}

Support inferred_support(const std::vector<std::string>& rationals) {
  std::vector<uint64_t> primes;
  for (const auto& text : rationals) {
    mpq_class q;
    if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0 || q.get_den() == 0)
      throw ParseError("bad rational '" + text + "'");
    q.canonicalize();
    std::vector<mpz_class> parts{abs(q.get_num()), mpz_class(q.get_den())};
    for (const mpz_class& part : parts) {
      if (part < 2) continue;
      for (const auto& [prime, e] : factor(part)) {
        if (!prime.fits_ulong_p())
          throw ParseError("prime factor of '" + text + "' exceeds 64 bits");
        primes.push_back(prime.get_ui());
      }
    }
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  if (primes.empty()) primes.push_back(2);  // torsion-only inputs
  return Support(std::move(primes));
}

int run(int argc, char** argv) {
  CLI::App app{
      "lgpoly: local-global principle toolkit for integer polynomials and "
      "polynomials with S-unit coefficients"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--prime-bound", cfg.prime_bound, "prime scan bound")
      ->check(CLI::PositiveNumber);
  app.add_option("--analysis-bound", cfg.analysis_bound,
                 "per-prime-power analysis bound")
      ->check(CLI::PositiveNumber);
  app.add_option("--enumeration-threshold", cfg.enumeration_threshold,
                 "largest p enumerated exhaustively")
      ->check(CLI::PositiveNumber);
  app.add_option("--exceptional-allowance", cfg.exceptional_allowance,
                 "failing primes tolerated by 'almost all'");
  app.add_option("--workers", cfg.workers, "worker threads for prime scans")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", cfg.seed, "seed for randomized subcommands");
  app.add_option("--input", cfg.input_file, "read the JSON input from a file");

  // poly-check
  std::string poly_arg;
  auto* poly_check = app.add_subcommand(
      "poly-check", "classical Hasse principle verdict for f in Z[x]");
  poly_check->add_option("polynomial", poly_arg,
                         "expression or dense list [c0,c1,...]");

  // rootless
  std::vector<std::string> rootless_polys;
  uint64_t rootless_prime = 0;
  auto* rootless_cmd = app.add_subcommand(
      "rootless", "coefficients c_i making sum c_i f_i rootless mod p");
  rootless_cmd->add_option("polynomials", rootless_polys, "two or more polynomials");
  rootless_cmd->add_option("--prime", rootless_prime, "the prime p")->required();

  // group subcommands
  std::string group_arg;
  auto add_group_sub = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("input", group_arg, "group polynomial JSON");
    return sub;
  };
  auto* group_gcd = add_group_sub("group-gcd", "the gcd of F");
  auto* group_local =
      add_group_sub("group-local", "smallest local witness at one prime");
  uint64_t local_prime = 0;
  group_local->add_option("--prime", local_prime, "the place p")->required();
  int fixed_T = 0;
  group_local->add_option("--torsion", fixed_T,
                          "require this torsion value (+1 or -1)");
  auto* group_global = add_group_sub("group-global", "global solvability (C2)");
  auto* group_check =
      add_group_sub("group-check", "full local-global report for F");
  auto* group_dynamical = add_group_sub(
      "group-dynamical", "dynamical variant: phi^n F(n) on the local side");
  std::string phi_text = "1";
  group_dynamical->add_option("--phi", phi_text, "the endomorphism multiplier")
      ->required();

  // member
  std::string member_point;
  std::vector<std::string> member_gens;
  std::vector<uint64_t> support_arg;
  auto* member_cmd = app.add_subcommand(
      "member", "P in <gens>: exact lattice decision plus local scan");
  member_cmd->add_option("--point", member_point, "the point P")->required();
  member_cmd->add_option("--gen", member_gens, "subgroup generators");
  member_cmd->add_option("--support", support_arg,
                         "support primes (inferred when omitted)");

  // density
  std::vector<std::string> density_points;
  std::vector<unsigned> density_ks;
  uint64_t density_l = 0;
  uint64_t density_bound = 0;
  auto* density_cmd = app.add_subcommand(
      "density", "axiom A1 experiment: exact divisibility of orders");
  density_cmd->add_option("--point", density_points, "independent points")
      ->required();
  density_cmd->add_option("--l", density_l, "the prime l")->required();
  density_cmd->add_option("--k", density_ks, "exact exponents, one per point")
      ->required();
  density_cmd->add_option("--bound", density_bound,
                          "prime bound (defaults to --prime-bound)");
  density_cmd->add_option("--support", support_arg,
                          "support primes (inferred when omitted)");

  // counterexample
  std::string kind;
  unsigned degree = 2;
  auto* counter_cmd =
      app.add_subcommand("counterexample", "construct a counterexample family");
  counter_cmd->add_option("--kind", kind, "fixed-torsion or reducible")
      ->required()
      ->check(CLI::IsMember({"fixed-torsion", "reducible"}));
  counter_cmd->add_option("--degree", degree, "degree d >= 2")->required();

  CLI11_PARSE(app, argc, argv);

  if (poly_check->parsed()) {
    IntPoly f = parse_poly(poly_arg);
    if (f.is_zero())
      throw PreconditionError("poly-check: the zero polynomial is excluded");
    HasseOptions ho;
    ho.exceptional_allowance = cfg.exceptional_allowance;
    ho.workers = cfg.workers;
    ho.enumeration_threshold = cfg.enumeration_threshold;
    HasseVerdict v = hasse_principle_verdict(f, cfg.prime_bound, ho);
    ScanOptions so;
    so.workers = cfg.workers;
    so.enumeration_threshold = cfg.enumeration_threshold;
    AllModuliVerdict am = has_root_mod_all_integers(f, cfg.analysis_bound, so);
    ordered_json doc = envelope("poly-check");
    doc["polynomial"] = to_json(f);
    doc["polynomial_display"] = to_display(f, 'x');
    doc["guaranteed_hasse"] = guaranteed_hasse(f);
    doc["verdict"] = to_json(v);
    doc["mod_all_integers"] = to_json(am);
    std::ostringstream text;
    text << "polynomial: " << to_display(f, 'x') << "\n"
         << verdict_text(v) << "mod-all-integers: "
         << to_json(am)["kind"].get<std::string>();
    if (am.witness) text << " (witness " << am.witness->get_str() << ")";
    text << "\n";
    emit(cfg, doc, text.str());
    return 0;
  }

  if (rootless_cmd->parsed()) {
    std::vector<IntPoly> fs;
    for (const auto& s : rootless_polys) fs.push_back(parse_poly(s));
    std::vector<mpz_class> cs;
    try {
      cs = rootless_combination(fs, rootless_prime, cfg.enumeration_threshold);
    } catch (const BadPrimeError& e) {
      std::cerr << "error: " << e.what() << "\nbad primes:";
      for (const auto& p : bad_primes(fs)) std::cerr << " " << p.get_str();
      std::cerr << "\n";
      return kExitPrecondition;
    } catch (const PreconditionError& e) {
      // this subcommand treats a bad family as bad input
      std::cerr << "error: " << e.what() << "\n";
      return kExitInput;
    }
    IntPoly combo;
    for (size_t i = 0; i < fs.size(); ++i) combo = combo + fs[i] * cs[i];
    ordered_json doc = envelope("rootless");
    doc["prime"] = std::to_string(rootless_prime);
    ordered_json coeffs = ordered_json::array();
    for (const auto& c : cs) coeffs.push_back(c.get_str());
    doc["coefficients"] = std::move(coeffs);
    doc["combination"] = to_json(combo);
    doc["combination_display"] = to_display(combo, 'x');
    std::ostringstream text;
    text << "coefficients:";
    for (const auto& c : cs) text << " " << c.get_str();
    text << "\ncombination: " << to_display(combo, 'x') << "\n";
    emit(cfg, doc, text.str());
    return 0;
  }

  if (group_gcd->parsed()) {
    GroupPoly F = parse_group_poly(group_input(cfg, group_arg));
    IntPoly g = gcd_of(F);
    ordered_json doc = envelope("group-gcd");
    doc["input"] = to_json(F);
    doc["gcd"] = to_json(g);
    doc["gcd_display"] = to_display(g, 'n');
    emit(cfg, doc, "gcd: " + to_display(g, 'n') + "\n");
    return 0;
  }

  if (group_local->parsed()) {
    GroupPoly F = parse_group_poly(group_input(cfg, group_arg));
    ReductionContext ctx(local_prime, F.support());
    ordered_json doc = envelope("group-local");
    doc["prime"] = std::to_string(local_prime);
    std::ostringstream text;
    if (fixed_T != 0) {
      doc["torsion"] = fixed_T == 1 ? "+1" : "-1";
      auto n = local_solvable_fixed_T(F, fixed_T, ctx);
      doc["witness"] =
          n ? ordered_json(std::to_string(*n)) : ordered_json();
      text << "witness: " << (n ? std::to_string(*n) : "none") << "\n";
    } else if (auto w = local_solvable(F, ctx)) {
      ordered_json e;
      e["n"] = std::to_string(w->n);
      e["torsion"] = w->torsion == 1 ? "+1" : "-1";
      doc["witness"] = std::move(e);
      text << "witness: n = " << w->n << ", T = "
           << (w->torsion == 1 ? "+1" : "-1") << "\n";
    } else {
      doc["witness"] = ordered_json();
      text << "witness: none\n";
    }
    emit(cfg, doc, text.str());
    return 0;
  }

  if (group_global->parsed()) {
    GroupPoly F = parse_group_poly(group_input(cfg, group_arg));
    auto w = global_solve(F);
    ordered_json doc = envelope("group-global");
    if (w) {
      ordered_json e;
      e["n"] = w->n.get_str();
      e["torsion"] = w->torsion == 1 ? "+1" : "-1";
      doc["witness"] = std::move(e);
    } else {
      doc["witness"] = ordered_json();
    }
    emit(cfg, doc,
         w ? "witness: n = " + w->n.get_str() + ", T = " +
                 (w->torsion == 1 ? std::string("+1") : std::string("-1")) + "\n"
           : "witness: none\n");
    return 0;
  }

  if (group_check->parsed() || group_dynamical->parsed()) {
    GroupPoly F = parse_group_poly(group_input(cfg, group_arg));
    GroupOptions go;
    go.exceptional_allowance = cfg.exceptional_allowance;
    go.workers = cfg.workers;
    go.enumeration_threshold = cfg.enumeration_threshold;
    GroupHasseReport r;
    ordered_json doc;
    if (group_check->parsed()) {
      r = group_hasse_verdict(F, cfg.prime_bound, go);
      doc = envelope("group-check");
    } else {
      mpz_class phi;
      if (mpz_set_str(phi.get_mpz_t(), phi_text.c_str(), 10) != 0)
        throw ParseError("bad integer '" + phi_text + "' for --phi");
      r = dynamical_verdict(F, phi, cfg.prime_bound, go);
      doc = envelope("group-dynamical");
      doc["phi"] = phi.get_str();
    }
    doc["input"] = to_json(F);
    doc["report"] = to_json(r);
    emit(cfg, doc, group_report_text(r));
    return 0;
  }

  if (member_cmd->parsed()) {
    std::vector<std::string> all = member_gens;
    all.push_back(member_point);
    Support support =
        support_arg.empty() ? inferred_support(all) : Support(support_arg);
    SUnit point = from_rational(member_point, support);
    std::vector<SUnit> gens;
    for (const auto& g : member_gens) gens.push_back(from_rational(g, support));
    MembershipReport r =
        membership_verdict(point, gens, cfg.prime_bound, cfg.workers);
    ordered_json doc = envelope("member");
    doc["point"] = point.to_string();
    doc["point_value"] = rational_string(point.to_rational());
    ordered_json gj = ordered_json::array();
    ordered_json gv = ordered_json::array();
    for (const auto& g : gens) {
      gj.push_back(g.to_string());
      gv.push_back(rational_string(g.to_rational()));
    }
    doc["gens"] = std::move(gj);
    doc["gen_values"] = std::move(gv);
    doc["report"] = to_json(r);
    std::ostringstream text;
    text << "global: " << (r.global ? "member" : "not a member") << "\n"
         << "local failures: " << r.local_failures.size() << " of " << r.scanned
         << " scanned primes (density "
         << rational_string(r.failure_density) << ")\n";
    emit(cfg, doc, text.str());
    return 0;
  }

  if (density_cmd->parsed()) {
    Support support = support_arg.empty() ? inferred_support(density_points)
                                          : Support(support_arg);
    std::vector<SUnit> points;
    for (const auto& s : density_points)
      points.push_back(from_rational(s, support));
    uint64_t bound = density_bound ? density_bound : cfg.prime_bound;
    DensityReport r =
        a1_density_experiment(points, density_l, density_ks, bound, cfg.workers);
    ordered_json doc = envelope("density");
    doc["report"] = to_json(r);
    std::ostringstream text;
    text << "matching places: " << r.matching << " of " << r.scanned
         << " (frequency " << rational_string(r.frequency) << ")\n";
    emit(cfg, doc, text.str());
    return 0;
  }

  if (counter_cmd->parsed()) {
    ordered_json doc = envelope("counterexample");
    doc["kind"] = kind;
    doc["degree"] = std::to_string(degree);
    std::ostringstream text;
    if (kind == "fixed-torsion") {
      GroupPoly F = counterexample_fixed_torsion(degree);
      doc["group_poly"] = to_json(F);
      doc["exponent_poly"] = to_json(exponent_poly(F, 0));
      doc["sign_poly"] = to_json(sign_poly(F));
      text << "F(n) = n^" << degree - 1 << " * ((3n - 1) [2] + [-1])\n"
           << "coeffs: " << doc["group_poly"]["coeffs"].dump() << "\n";
    } else {
      if (degree < 2)
        throw PreconditionError("reducible counterexample needs degree >= 2");
      IntPoly f = parse_poly("(3x-2)(2x-3)^" + std::to_string(degree - 1));
      doc["polynomial"] = to_json(f);
      doc["polynomial_display"] = to_display(f, 'x');
      text << "f(x) = " << to_display(f, 'x') << "\n";
    }
    emit(cfg, doc, text.str());
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const lgpoly::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const lgpoly::NotSmoothError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const lgpoly::BoundExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBound;
  } catch (const lgpoly::BadPrimeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const lgpoly::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
