#include "heegner_cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <ostream>
#include <thread>

#include "heegner/errors.hpp"
#include "heegner/fastseries.hpp"
#include "heegner/identities.hpp"
#include "heegner/periods.hpp"
#include "heegner_cli/acceptance.hpp"

namespace heegner::cli {

namespace {

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(',', start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

long parse_long(const std::string& s) {
  size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ParameterError("not an integer: '" + s + "'");
  return v;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace

TauPoint parse_tau_spec(const std::string& spec) {
  const size_t colon = spec.find(':');
  if (colon == std::string::npos) throw ParameterError("tau spec must be heegner:a,b,c or complex:x,y");
  const std::string kind = spec.substr(0, colon);
  const auto parts = split_commas(spec.substr(colon + 1));
  if (kind == "heegner") {
    if (parts.size() != 3) throw ParameterError("heegner tau spec needs a,b,c");
    HeegnerPoint h{parse_long(parts[0]), parse_long(parts[1]), parse_long(parts[2])};
    if (h.a <= 0 || h.d() <= 0) throw ParameterError("heegner point needs a > 0 and 4ac - b^2 > 0");
    return h.tau();
  }
  if (kind == "complex") {
    if (parts.size() != 2) throw ParameterError("complex tau spec needs x,y");
    try {
      return TauPoint::from_decimal(parts[0], parts[1]);
    } catch (const DomainError& e) {
      throw ParameterError(e.what());
    }
  }
  throw ParameterError("unknown tau spec kind '" + kind + "'");
}

std::string format_decimal(const Real& x, long digits) {
  if (x.is_zero()) return "0";
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), x.raw(), MPFR_RNDN);
  std::string mant(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (mant[0] == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  // value = 0.mant * 10^e
  if (e > 0 && e <= digits) {
    std::string s = mant.substr(0, e);
    if (static_cast<size_t>(e) < mant.size()) s += "." + mant.substr(e);
    return sign + s;
  }
  if (e <= 0 && e > -20) return sign + "0." + std::string(static_cast<size_t>(-e), '0') + mant;
  return sign + mant.substr(0, 1) + "." + mant.substr(1) + "e" + std::to_string(static_cast<long>(e) - 1);
}

std::string format_decimal(const Complex& z, long digits) {
  Real scale = std::max(abs(z), Real(1, z.prec()));
  Real tiny = scale * pow(Real(10, z.prec()), Real(-digits, z.prec()));
  if (abs(z.im()) <= tiny) return format_decimal(z.re(), digits);
  std::string s = format_decimal(z.re(), digits);
  s += z.im().sign() < 0 ? " - " : " + ";
  s += format_decimal(abs(z.im()), digits) + "i";
  return s;
}

std::string group_digits(const std::string& pi) {
  const size_t dot = pi.find('.');
  if (dot == std::string::npos) return pi;
  std::string out = pi.substr(0, dot + 1);
  const std::string frac = pi.substr(dot + 1);
  for (size_t i = 0; i < frac.size(); i += 10) {
    if (i > 0) out += ' ';
    out += frac.substr(i, 10);
  }
  return out;
}

namespace {

int cmd_pi(long digits, bool group, bool json, std::ostream& out) {
  if (digits < 1) throw UsageError("--digits must be at least 1");
  std::string pi = compute_pi(digits + 1);
  if (json) {
    out << nlohmann::json{{"digits", digits}, {"pi", pi}}.dump() << "\n";
  } else {
    out << (group ? group_digits(pi) : pi) << "\n";
  }
  return exit_ok;
}

Complex eval_function(const std::string& fn, const TauPoint& tau, const std::optional<RegionId>& region,
                      const PrecisionContext& ctx, std::string& used_region) {
  if (fn == "E2") return eisenstein(2, tau, ctx);
  if (fn == "E4") return eisenstein(4, tau, ctx);
  if (fn == "E6") return eisenstein(6, tau, ctx);
  if (fn == "eta") return dedekind_eta(tau, ctx);
  if (fn == "weberf") return weber_f(tau, ctx);
  if (fn == "J") return klein_J(tau, ctx);
  if (fn == "j") return j_invariant(tau, ctx);
  if (fn == "s2") return s2(tau, ctx);
  if (fn == "delta") return discriminant_tau(tau, ctx);
  std::optional<RegionId> r = region ? region : containing_region(tau, ctx);
  if (!r) throw DomainError("tau is in none of the regions inf, one, zero");
  used_region = to_string(*r);
  if (fn == "period") return period_tilde(*r, tau, ctx);
  return quasi_period_tilde(*r, tau, ctx);
}

int cmd_eval(const std::string& fn, const std::string& tau_spec, const std::string& region_name, long digits,
             bool json, std::ostream& out) {
  if (digits < 1) throw UsageError("--digits must be at least 1");
  TauPoint tau = [&] {
    try {
      return parse_tau_spec(tau_spec);
    } catch (const ParameterError& e) {
      throw UsageError(e.what());
    }
  }();
  std::optional<RegionId> region;
  if (!region_name.empty()) region = region_from_string(region_name);
  const PrecisionContext ctx = make_context(digits);
  std::string used_region;
  Complex v = eval_function(fn, tau, region, ctx, used_region);
  if (json) {
    nlohmann::json j{{"function", fn},
                     {"tau", tau_spec},
                     {"digits", digits},
                     {"re", format_decimal(v.re(), digits)},
                     {"im", format_decimal(v.im(), digits)},
                     {"value", format_decimal(v, digits)}};
    if (!used_region.empty()) j["region"] = used_region;
    out << j.dump() << "\n";
  } else {
    out << format_decimal(v, digits) << "\n";
  }
  return exit_ok;
}

void print_report_text(const VerificationReport& r, std::ostream& out) {
  out << r.id << " " << (r.pass ? "PASS" : "FAIL") << " digits=" << r.digits
      << " rel_diff=" << r.rel_diff.to_string(3) << "\n";
  for (const auto& n : r.notes) out << "  note: " << n << "\n";
}

std::vector<VerificationReport> verify_concurrently(const std::vector<const IdentityRecord*>& recs,
                                                    const PrecisionContext& ctx, RecordOptions ropt,
                                                    std::vector<std::string>& errors) {
  std::vector<std::optional<VerificationReport>> slots(recs.size());
  std::vector<std::string> errs(recs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < recs.size(); i = next++) {
      try {
        slots[i] = verify_record(*recs[i], ctx, ropt);
      } catch (const std::exception& e) {
        errs[i] = recs[i]->id + ": " + e.what();
      }
    }
  };
  const int n = std::max(1, std::min<int>(default_threads(), static_cast<int>(recs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<VerificationReport> out;
  for (size_t i = 0; i < recs.size(); ++i) {
    if (slots[i]) out.push_back(std::move(*slots[i]));
    if (!errs[i].empty()) errors.push_back(errs[i]);
  }
  return out;
}

int cmd_verify(const std::string& id, bool all, long digits, bool json, bool printed, std::ostream& out,
               std::ostream& err) {
  if (digits < 1) throw UsageError("--digits must be at least 1");
  if (all == !id.empty()) throw UsageError("give exactly one of --id or --all");
  std::vector<const IdentityRecord*> recs;
  if (all) {
    for (const auto& r : catalog()) recs.push_back(&r);
    std::sort(recs.begin(), recs.end(), [](auto* a, auto* b) { return a->id < b->id; });
  } else {
    const IdentityRecord* r = find_record(id);
    if (!r) {
      err << "unknown identity id '" << id << "'; valid ids:\n";
      for (const auto& v : catalog_ids()) err << "  " << v << "\n";
      return exit_usage;
    }
    recs.push_back(r);
  }
  std::vector<std::string> errors;
  auto reports = verify_concurrently(recs, make_context(digits), {printed}, errors);
  bool ok = errors.empty();
  for (const auto& r : reports) ok = ok && r.pass;
  if (json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(nlohmann::json::parse(to_json(r)));
    out << (all ? arr.dump(2) : arr.empty() ? "null" : arr[0].dump(2)) << "\n";
  } else {
    for (const auto& r : reports) print_report_text(r, out);
    if (all) {
      long passed = std::count_if(reports.begin(), reports.end(), [](auto& r) { return r.pass; });
      out << passed << "/" << recs.size() << " records pass at " << digits << " digits\n";
    }
  }
  for (const auto& e : errors) err << "error: " << e << "\n";
  return ok ? exit_ok : exit_failure;
}

int cmd_catalog(const std::string& format, std::ostream& out) {
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : catalog()) arr.push_back(nlohmann::json::parse(record_to_json(r)));
    out << arr.dump(2) << "\n";
    return exit_ok;
  }
  for (const auto& r : catalog()) {
    out << r.id << "  " << to_string(r.kind);
    if (r.heegner) out << "  " << r.heegner->to_string();
    out << "  " << r.lhs.to_string();
    if (r.table) out << "  = " << r.table->value.get_str();
    if (!r.annotation.empty()) out << "  [" << r.annotation << "]";
    out << "\n";
  }
  return exit_ok;
}

int cmd_selftest(const std::string& level, const std::string& fault, long pi_digits, std::ostream& out) {
  AcceptanceOptions opt;
  opt.pi_digits = pi_digits;
  if (!fault.empty()) {
    if (!find_record(fault)) throw UsageError("unknown record id for --inject-fault: " + fault);
    opt.inject_fault = fault;
  }
  auto print = [&](const CriterionResult& r) { out << format_line(r) << std::endl; };
  auto results = level == "full" ? run_acceptance(opt, print) : run_quick(opt, print);
  long passed = std::count_if(results.begin(), results.end(), [](auto& r) { return r.pass; });
  out << level << ": " << passed << "/" << results.size() << " passed\n";
  return passed == static_cast<long>(results.size()) ? exit_ok : exit_failure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"High-precision modular, hypergeometric and period evaluation with identity verification", "heegner"};
  app.require_subcommand(1);

  long digits_pi = 100;
  bool group = false, json_pi = false;
  auto* pi = app.add_subcommand("pi", "Print pi with the given number of decimals");
  pi->add_option("--digits", digits_pi, "Decimals after the point")->capture_default_str();
  pi->add_flag("--group", group, "Blocks of 10 decimals");
  pi->add_flag("--json", json_pi);

  std::string fn, tau_spec, region;
  long digits_eval = 100;
  bool json_eval = false;
  auto* ev = app.add_subcommand("eval", "Evaluate a function at tau");
  ev->add_option("--function", fn)->required()->check(
      CLI::IsMember({"E2", "E4", "E6", "eta", "weberf", "J", "j", "s2", "delta", "period", "quasiperiod"}));
  ev->add_option("--tau", tau_spec, "heegner:a,b,c or complex:x,y")->required();
  ev->add_option("--region", region, "Representation for period/quasiperiod")
      ->check(CLI::IsMember({"inf", "one", "zero"}));
  ev->add_option("--digits", digits_eval)->capture_default_str();
  ev->add_flag("--json", json_eval);

  std::string id;
  bool all = false, json_verify = false, printed = false;
  long digits_verify = 100;
  auto* ver = app.add_subcommand("verify", "Verify catalog identities");
  ver->add_option("--id", id);
  ver->add_flag("--all", all);
  ver->add_option("--digits", digits_verify)->capture_default_str();
  ver->add_flag("--json", json_verify);
  ver->add_flag("--printed", printed, "Evaluate typo-annotated records as printed");

  std::string format = "text";
  auto* cat = app.add_subcommand("catalog", "Dump the identity catalog");
  cat->add_option("--format", format)->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  std::string level = "quick", fault;
  long pi_digits = 100000;
  auto* st = app.add_subcommand("selftest", "Run the invariant suites or the acceptance criteria");
  st->add_option("--level", level)->check(CLI::IsMember({"quick", "full"}))->capture_default_str();
  st->add_option("--inject-fault", fault, "Perturb this record's constant before verifying");
  st->add_option("--pi-digits", pi_digits, "pi digits for the full level")->capture_default_str();

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*pi) return cmd_pi(digits_pi, group, json_pi, out);
    if (*ev) return cmd_eval(fn, tau_spec, region, digits_eval, json_eval, out);
    if (*ver) return cmd_verify(id, all, digits_verify, json_verify, printed, out, err);
    if (*cat) return cmd_catalog(format, out);
    if (*st) return cmd_selftest(level, fault, pi_digits, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_failure;
  }
  return exit_usage;
}

}  // namespace heegner::cli
