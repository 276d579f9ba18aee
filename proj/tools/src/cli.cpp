#include "iwasawa_cli/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "iwasawa/character_io.hpp"
#include "iwasawa/characters.hpp"
#include "iwasawa/errors.hpp"
#include "iwasawa/lfunc.hpp"
#include "iwasawa/selftest.hpp"
#include "json.hpp"

namespace iwasawa::cli {

namespace {

using Json = nlohmann::ordered_json;

Json padic_json(const PadicInt& x) {
  return Json{{"mod", std::to_string(x.prime()) + "^" + std::to_string(x.precision())},
              {"value", x.value().get_str()}};
}

// Exact integers as JSON numbers when they fit, decimal strings otherwise.
Json integer_json(const Integer& x) {
  if (x >= 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 64) {
    const std::string s = x.get_str();
    return Json(std::stoull(s));
  }
  return Json(x.get_str());
}

Json bounds_json(const LambdaBounds& b) {
  return Json{{"new", integer_json(b.new_bound)},
              {"rosenberg", integer_json(b.rosenberg)},
              {"field", integer_json(b.field)}};
}

Json check_json(const std::string& name, bool pass) { return Json{{"name", name}, {"pass", pass}}; }

Json interpolation_json(const InterpolationCheck& c) {
  Json j{{"name", "interpolation k=" + std::to_string(c.k)}, {"k", c.k}};
  if (c.series_value) j["series_value"] = padic_json(*c.series_value);
  if (c.l_value) j["l_value"] = padic_json(*c.l_value);
  j["skipped"] = c.skipped;
  j["pass"] = c.pass;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

void validate(const RunConfig& cfg) {
  require_odd_prime(cfg.p);
  if (cfg.d == 0 || cfg.d % cfg.p == 0) {
    throw DomainError("conductor d=" + std::to_string(cfg.d) + " must be positive and prime to p");
  }
  if (cfg.n == 0 || cfg.m == 0 || cfg.m_max == 0) throw DomainError("precisions must be >= 1");
}

DirichletCharacter resolve_character(const RunConfig& cfg) {
  if (cfg.chi_file && cfg.quadratic) throw DomainError("give either --chi or --quadratic");
  if (cfg.chi_file) {
    DirichletCharacter chi = load_character_file(*cfg.chi_file);
    if (chi.prime() != cfg.p) {
      throw CharacterError("character file is for p=" + std::to_string(chi.prime()),
                           "p=" + std::to_string(chi.prime()));
    }
    if (cfg.d != 1 && chi.conductor() != cfg.d) {
      throw CharacterError("character file has conductor " + std::to_string(chi.conductor()),
                           "d=" + std::to_string(chi.conductor()));
    }
    return chi;
  }
  if (cfg.quadratic) {
    DirichletCharacter chi = DirichletCharacter::quadratic(cfg.p, *cfg.quadratic);
    if (cfg.d != 1 && chi.conductor() != cfg.d) {
      throw CharacterError("discriminant has conductor " + std::to_string(chi.conductor()),
                           "D=" + std::to_string(*cfg.quadratic));
    }
    return chi;
  }
  if (cfg.d != 1) throw DomainError("d >= 2 needs --chi FILE or --quadratic D");
  return DirichletCharacter::trivial(cfg.p);
}

long resolve_delta(const RunConfig& cfg) {
  if (cfg.delta && cfg.theta_omega) throw DomainError("give either --delta or --theta-omega");
  if (cfg.delta) return *cfg.delta;
  if (cfg.theta_omega) return *cfg.theta_omega - 1;
  throw DomainError("theta needs --delta or --theta-omega");
}

Json theta_inputs(const ThetaCharacter& theta) {
  return Json{{"theta", theta.label()},
              {"conductor", theta.chi.conductor()},
              {"delta", theta.delta}};
}

Json base_document(const RunConfig& cfg) {
  Json doc;
  doc["schema"] = 1;
  doc["command"] = cfg.command;
  doc["inputs"] = Json{{"p", cfg.p}, {"d", cfg.d}};
  return doc;
}

int run_invariants(const RunConfig& cfg, Json& doc) {
  const ThetaCharacter theta = ThetaCharacter::make(resolve_character(cfg), resolve_delta(cfg));
  InvariantsOptions opts;
  opts.n = cfg.n;
  const IwasawaSeriesReport r = iwasawa_invariants(theta, cfg.m_max, opts);
  doc["inputs"].update(theta_inputs(theta));
  doc["inputs"]["m_max"] = cfg.m_max;
  doc["inputs"]["kappa"] = r.kappa.get_str();
  doc["precision"] = Json{{"n", r.n}, {"m", r.m}, {"levels_tried", r.levels_tried}};
  Json result{{"verdict", r.certified() ? "certified" : "indeterminate"}};
  if (r.certified()) {
    result["mu"] = *r.invariants.mu;
    result["lambda"] = *r.invariants.lambda;
  }
  if (!r.note.empty()) result["note"] = r.note;
  doc["result"] = result;
  doc["bounds"] = bounds_json(r.bounds);
  Json checks = Json::array();
  if (r.certified()) checks.push_back(check_json("lambda < new bound", r.lambda_below_new));
  checks.push_back(check_json("new bound < rosenberg bound", r.new_below_rosenberg));
  for (const auto& c : r.checks) checks.push_back(interpolation_json(c));
  doc["checks"] = checks;
  if (!r.new_below_rosenberg || !r.checks_pass()) return kExitFailure;
  if (r.certified() && !r.lambda_below_new) return kExitFailure;
  return r.certified() ? kExitOk : kExitIndeterminate;
}

int run_series(const RunConfig& cfg, Json& doc) {
  const ThetaCharacter theta = ThetaCharacter::make(resolve_character(cfg), resolve_delta(cfg));
  const RingElem f = iwasawa_series(theta, cfg.n, cfg.m);
  doc["inputs"].update(theta_inputs(theta));
  doc["inputs"]["kappa"] = default_kappa(cfg.p, theta.chi.conductor()).get_str();
  doc["precision"] = Json{{"n", cfg.n}, {"m", cfg.m}};
  Json coeffs = Json::array();
  for (const auto& c : f.monomial_coeffs()) coeffs.push_back(c.get_str());
  doc["result"] = Json{{"mod", std::to_string(cfg.p) + "^" + std::to_string(cfg.n)},
                       {"basis", "T^i"},
                       {"coefficients", coeffs}};
  return kExitOk;
}

int run_interp_check(const RunConfig& cfg, Json& doc) {
  const ThetaCharacter theta = ThetaCharacter::make(resolve_character(cfg), resolve_delta(cfg));
  const std::vector<unsigned> ks = cfg.ks.empty() ? default_check_exponents(theta, 3) : cfg.ks;
  const auto checks = interpolation_selfcheck(theta, ks, cfg.n, cfg.m);
  doc["inputs"].update(theta_inputs(theta));
  doc["precision"] = Json{{"n", cfg.n}, {"m", cfg.m}};
  Json arr = Json::array();
  bool failed = false;
  bool skipped = false;
  for (const auto& c : checks) {
    arr.push_back(interpolation_json(c));
    failed |= !c.skipped && !c.pass;
    skipped |= c.skipped;
  }
  doc["checks"] = arr;
  if (failed) return kExitFailure;
  return skipped ? kExitIndeterminate : kExitOk;
}

int run_bounds(const RunConfig& cfg, Json& doc) {
  const LambdaBounds b = bounds(cfg.p, cfg.d);
  doc["result"] = bounds_json(b);
  doc["checks"] = Json::array({check_json("new bound < rosenberg bound", b.new_bound < b.rosenberg)});
  return b.new_bound < b.rosenberg ? kExitOk : kExitFailure;
}

int run_lambda_sum(const RunConfig& cfg, Json& doc) {
  if (cfg.d != 1) throw DomainError("lambda-sum runs over the powers of omega (d = 1)");
  InvariantsOptions opts;
  opts.n = cfg.n;
  opts.check_count = 0;
  const LambdaSumReport r = lambda_sum_cyclotomic(cfg.p, cfg.m_max, opts, cfg.threads);
  doc["inputs"]["m_max"] = cfg.m_max;
  doc["precision"] = Json{{"n", cfg.n}};
  Json rows = Json::array();
  bool bound_ok = true;
  for (const auto& t : r.per_theta) {
    Json row{{"theta", t.theta.label()}, {"delta", t.theta.delta}, {"m", t.m},
             {"verdict", t.certified() ? "certified" : "indeterminate"}};
    if (t.certified()) {
      row["mu"] = *t.invariants.mu;
      row["lambda"] = *t.invariants.lambda;
      bound_ok &= t.lambda_below_new;
    }
    rows.push_back(row);
  }
  Json result{{"per_theta", rows}};
  if (r.total) result["lambda_sum"] = *r.total;
  doc["result"] = result;
  doc["bounds"] = bounds_json(bounds(cfg.p, 1));
  doc["checks"] = Json::array({check_json("every lambda < new bound", bound_ok)});
  if (!bound_ok) return kExitFailure;
  return r.total ? kExitOk : kExitIndeterminate;
}

int run_pseudo_rational(const RunConfig& cfg, Json& doc) {
  const DirichletCharacter chi = resolve_character(cfg);
  const long delta = resolve_delta(cfg);
  const PseudoRationalReport r = not_pseudorational_report(chi, delta);
  doc["inputs"]["delta"] = ((delta % static_cast<long>(cfg.p - 1)) + (cfg.p - 1)) % (cfg.p - 1);
  doc["inputs"]["character"] = chi.label();
  Json result{{"source", r.source},
              {"reduced", r.reduced.to_string()},
              {"denominator", r.reduced.den().to_string()},
              {"expected_denominator", r.expected_denominator.to_string()},
              {"criterion_holds", r.criterion.holds},
              {"witness", r.criterion.witness.to_string()},
              {"witness_factor", r.criterion.witness_factor.to_string()},
              {"one_plus_T_exponent", r.criterion.n},
              {"not_pseudo_rational", r.not_pseudo_rational}};
  if (r.multiplier) result["multiplier"] = r.multiplier;
  doc["result"] = result;
  doc["checks"] = Json::array({check_json("reduced denominator matches", r.denominator_matches),
                               check_json("criterion fails", r.not_pseudo_rational)});
  return r.denominator_matches && r.not_pseudo_rational ? kExitOk : kExitFailure;
}

int run_selftest_command(const RunConfig& cfg, Json& doc) {
  const SelftestReport r = run_selftest(cfg.p, cfg.seed);
  doc["inputs"]["seed"] = cfg.seed;
  Json arr = Json::array();
  for (const auto& x : r.results) {
    arr.push_back(Json{{"name", x.name},
                       {"n", x.n},
                       {"m", x.m},
                       {"cases", x.cases},
                       {"failures", x.failures},
                       {"pass", x.failures == 0}});
  }
  doc["checks"] = arr;
  return r.pass() ? kExitOk : kExitFailure;
}

void flatten(const Json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), os);
  } else {
    std::string v = j.is_string() ? j.get<std::string>() : j.dump();
    if (v.find_first_of(",\"\n") != std::string::npos) {
      std::string q = "\"";
      for (char ch : v) q += (ch == '"') ? std::string("\"\"") : std::string(1, ch);
      v = q + "\"";
    }
    os << prefix << "," << v << "\n";
  }
}

std::string serialize(const Json& doc, const std::string& format) {
  if (format == "csv") {
    std::ostringstream os;
    os << "key,value\n";
    flatten(doc, "", os);
    return os.str();
  }
  return doc.dump(2) + "\n";
}

}  // namespace

DispatchResult dispatch(const RunConfig& cfg) {
  Json doc = base_document(cfg);
  int code = kExitFailure;
  try {
    if (cfg.format != "json" && cfg.format != "csv") {
      throw DomainError("unknown format '" + cfg.format + "'");
    }
    validate(cfg);
    if (cfg.command == "invariants") {
      code = run_invariants(cfg, doc);
    } else if (cfg.command == "series") {
      code = run_series(cfg, doc);
    } else if (cfg.command == "interp-check") {
      code = run_interp_check(cfg, doc);
    } else if (cfg.command == "bounds") {
      code = run_bounds(cfg, doc);
    } else if (cfg.command == "lambda-sum") {
      code = run_lambda_sum(cfg, doc);
    } else if (cfg.command == "pseudo-rational-check") {
      code = run_pseudo_rational(cfg, doc);
    } else if (cfg.command == "selftest") {
      code = run_selftest_command(cfg, doc);
    } else {
      throw DomainError("unknown command '" + cfg.command + "'");
    }
  } catch (const CharacterError& e) {
    doc["error"] = Json{{"type", "CharacterError"}, {"message", e.what()}, {"witness", e.witness()}};
    code = kExitFailure;
  } catch (const ResourceLimit& e) {
    doc["error"] = Json{{"type", "ResourceLimit"}, {"message", e.what()}};
    code = kExitFailure;
  } catch (const std::exception& e) {
    doc["error"] = Json{{"type", "Error"}, {"message", e.what()}};
    code = kExitFailure;
  }
  doc["exit_code"] = code;
  const std::string format = (cfg.format == "csv") ? "csv" : "json";
  return DispatchResult{code, serialize(doc, format)};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact p-adic workbench for Leopoldt transforms and Iwasawa invariants"};
  app.require_subcommand(1);
  RunConfig cfg;
  long theta_omega = 0;
  long delta = 0;
  long quadratic = 0;
  std::string chi_file;
  std::string out_path;

  struct CommandInfo {
    const char* name;
    const char* help;
  };
  const CommandInfo commands[] = {
      {"invariants", "certify mu and lambda of f(T, theta) with level escalation"},
      {"series", "print the coefficients of f(T, theta) in R(n, m)"},
      {"interp-check", "compare f(kappa^-k - 1) with L_p(-k, theta)"},
      {"bounds", "new, Rosenberg and field lambda bounds"},
      {"lambda-sum", "sum of lambda(theta) over even nontrivial powers of omega"},
      {"pseudo-rational-check", "run the pseudo-rationality criterion on F_chi"},
      {"selftest", "operator-identity suites on random elements"},
  };
  std::vector<CLI::App*> subs;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--p", cfg.p, "odd prime")->required();
    sub->add_option("--d", cfg.d, "conductor of chi");
    sub->add_option("--chi", chi_file, "character JSON file");
    sub->add_option("--quadratic", quadratic, "fundamental discriminant of a quadratic chi");
    sub->add_option("--theta-omega", theta_omega, "theta = chi omega^j");
    sub->add_option("--delta", delta, "theta = chi omega^{delta+1}");
    sub->add_option("--n", cfg.n, "coefficient precision");
    sub->add_option("--m", cfg.m, "omega level");
    sub->add_option("--m-max", cfg.m_max, "largest level for escalation");
    sub->add_option("--k", cfg.ks, "interpolation exponents")->delimiter(',');
    sub->add_option("--threads", cfg.threads, "worker threads for lambda-sum");
    sub->add_option("--format", cfg.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", out_path, "write the report to FILE");
    sub->add_option("--seed", cfg.seed, "seed for randomized suites");
    subs.push_back(sub);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitFailure;
  }
  for (CLI::App* sub : subs) {
    if (!sub->parsed()) continue;
    cfg.command = sub->get_name();
    if (sub->count("--chi")) cfg.chi_file = chi_file;
    if (sub->count("--quadratic")) cfg.quadratic = quadratic;
    if (sub->count("--theta-omega")) cfg.theta_omega = theta_omega;
    if (sub->count("--delta")) cfg.delta = delta;
    if (sub->count("--out")) cfg.out = out_path;
  }
  const DispatchResult result = dispatch(cfg);
  if (cfg.out) {
    std::ofstream file(*cfg.out);
    if (!file) {
      err << "cannot write " << *cfg.out << "\n";
      return kExitFailure;
    }
    file << result.report;
  } else {
    out << result.report;
  }
  return result.exit_code;
}

}  // namespace iwasawa::cli
