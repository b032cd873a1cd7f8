#include "commands.hpp"

#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "etaq/eisenstein.hpp"
#include "etaq/error.hpp"
#include "etaq/expand.hpp"
#include "etaq/filtration.hpp"

namespace etaq::cli {
namespace {

using nlohmann::json;

std::string str(std::int64_t v) { return std::to_string(v); }

json strings(const std::vector<std::int64_t>& values) {
  json out = json::array();
  for (auto v : values) out.push_back(str(v));
  return out;
}

json certificate_json(const Certificate& c) {
  json j;
  j["route"] = std::string(to_string(c.route));
  j["status"] = std::string(to_string(c.status()));
  j["ell"] = str(c.ell);
  j["a"] = str(c.a);
  j["delta_ell"] = str(c.delta_ell);
  j["horizon"] = str(c.horizon);
  j["note"] = c.note;
  j["witness"] = c.witness ? json{{"n", str(c.witness->n)}, {"residue", std::to_string(c.witness->residue)}}
                           : json(nullptr);
  j["sturm_bound"] = c.sturm_bound ? json(str(*c.sturm_bound)) : json(nullptr);
  j["b"] = c.b ? json(str(*c.b)) : json(nullptr);
  j["reduced_spec"] = c.reduced_spec ? json(c.reduced_spec->to_string()) : json(nullptr);
  j["fixpoint_mismatch"] = c.fixpoint_mismatch ? json(str(*c.fixpoint_mismatch)) : json(nullptr);
  return j;
}

json candidate_json(const CongruenceCandidate& c) {
  return {{"ell", str(c.ell)}, {"a", str(c.a)}, {"horizon", str(c.horizon)},
          {"status", std::string(to_string(c.status))}};
}

struct NamedForm {
  TruncatedSeries series;
  std::int64_t weight;
};

NamedForm build_named_form(const FormArgs& args, std::int64_t extra_weight) {
  const Prime ell(args.ell);
  std::int64_t weight = 0;
  ProductSpec spec;
  if (args.form == "delta") {
    weight = 12;
  } else if (args.form == "E4") {
    weight = 4;
  } else if (args.form == "E6") {
    weight = 6;
  } else if (args.form == "F") {
    if (args.spec.empty()) throw InvalidArgument("form F needs --spec");
    spec = ProductSpec::parse(args.spec);
    if (spec.level() != 1) {
      throw InvalidArgument("unsupported level " + std::to_string(spec.level()) +
                            ": filtrations are computed at level 1 only");
    }
    if (ell.value() <= 3) throw InvalidArgument("F_l needs l > 3");
    weight = 12 * spec.parts_count().value_or(0) * delta_ell(ell);
    if (!spec.is_reciprocal()) throw InvalidArgument("form F needs a spec with negative exponents");
  } else {
    throw InvalidArgument("unknown form '" + args.form + "' (expected delta, E4, E6 or F)");
  }
  const Exponent precision = args.precision.value_or(level1_sturm_bound(weight + extra_weight) + 8);
  if (args.form == "delta") return {delta(precision, ell).series, weight};
  if (args.form == "E4" || args.form == "E6") return {eisenstein(weight, precision, ell).series, weight};
  return {build_F(spec, ell, precision).series, weight};
}

OutputRecord residue_record(const std::string& command, const ResidueArgs& args, const Certificate& cert) {
  OutputRecord r;
  r.command = command;
  r.spec = ProductSpec::parse(args.spec).to_string();
  r.parameters = {{"ell", str(args.ell)}, {"a", str(args.a)}, {"horizon", str(args.horizon)}};
  if (command == "certify") r.parameters["max_sturm"] = str(args.max_sturm);
  r.results = certificate_json(cert);
  return r;
}

std::string join(const json& array, const char* sep = " ") {
  std::string out;
  for (const auto& v : array) {
    if (!out.empty()) out += sep;
    out += v.get<std::string>();
  }
  return out;
}

std::string render_certificate(const json& c) {
  std::ostringstream os;
  os << "route: " << c["route"].get<std::string>() << "\n";
  os << "status: " << c["status"].get<std::string>() << "\n";
  if (!c["witness"].is_null()) {
    os << "witness: n=" << c["witness"]["n"].get<std::string>()
       << " residue=" << c["witness"]["residue"].get<std::string>() << "\n";
  }
  if (!c["sturm_bound"].is_null()) os << "sturm_bound: " << c["sturm_bound"].get<std::string>() << "\n";
  if (!c["fixpoint_mismatch"].is_null()) {
    os << "fixpoint_mismatch: q^" << c["fixpoint_mismatch"].get<std::string>() << "\n";
  }
  if (!c["b"].is_null()) os << "b: " << c["b"].get<std::string>() << "\n";
  if (c["delta_ell"].get<std::string>() != "0") os << "delta_ell: " << c["delta_ell"].get<std::string>() << "\n";
  if (!c["reduced_spec"].is_null()) {
    const auto reduced = c["reduced_spec"].get<std::string>();
    os << "reduced_spec: " << (reduced.empty() ? "(empty)" : reduced) << "\n";
  }
  if (c["horizon"].get<std::string>() != "0") os << "horizon: " << c["horizon"].get<std::string>() << "\n";
  if (!c["note"].get<std::string>().empty()) os << "note: " << c["note"].get<std::string>() << "\n";
  return os.str();
}

}  // namespace

json OutputRecord::to_json() const {
  return {{"command", command}, {"spec", spec}, {"parameters", parameters}, {"results", results},
          {"version", version}};
}

OutputRecord OutputRecord::from_json(const json& j) {
  OutputRecord r;
  r.command = j.at("command").get<std::string>();
  r.spec = j.at("spec").get<std::string>();
  r.parameters = j.at("parameters");
  r.results = j.at("results");
  r.version = j.at("version").get<std::string>();
  return r;
}

std::string OutputRecord::dump() const { return to_json().dump(2) + "\n"; }

OutputRecord cmd_expand(const ExpandArgs& args) {
  const auto spec = ProductSpec::parse(args.spec);
  std::optional<Prime> p;
  if (args.modulus) p = Prime(*args.modulus);
  std::int64_t start = args.start;
  std::int64_t precision = args.precision;
  if (args.index) {
    if (*args.index < 0) throw InvalidArgument("index must be nonnegative");
    start = *args.index;
    precision = *args.index + 1;
  }
  if (start < 0 || start >= precision) throw InvalidArgument("empty coefficient range");
  const auto series = expand_product(spec, precision, p);
  OutputRecord r;
  r.command = "expand";
  r.spec = spec.to_string();
  r.parameters = {{"precision", str(precision)}, {"start", str(start)}};
  r.parameters["modulus"] = p ? json(str(p->value())) : json(nullptr);
  json coeffs = json::array();
  for (std::int64_t n = start; n < precision; ++n) coeffs.push_back(series.coefficient(n).get_str());
  r.results = {{"start", str(start)}, {"coefficients", coeffs}};
  return r;
}

OutputRecord cmd_scan(const ScanArgs& args) {
  const auto spec = ProductSpec::parse(args.spec);
  ScanOptions options;
  options.horizon = args.horizon;
  options.cap_for_odd = args.cap;
  PrimeBound bound;
  if (!args.primes.empty()) {
    options.primes = args.primes;
    bound.primes = args.primes;
    bound.exhaustive = false;
  } else {
    bound = prime_bound(spec, args.cap);
  }
  const auto candidates = scan(spec, options);
  OutputRecord r;
  r.command = "scan";
  r.spec = spec.to_string();
  r.parameters = {{"horizon", str(args.horizon)}, {"primes", strings(bound.primes)}};
  json list = json::array();
  for (const auto& c : candidates) list.push_back(candidate_json(c));
  r.results = {{"candidates", list}, {"primes", strings(bound.primes)}, {"exhaustive", bound.exhaustive}};
  return r;
}

OutputRecord cmd_refute(const ResidueArgs& args) {
  const auto spec = ProductSpec::parse(args.spec);
  return residue_record("refute", args, refute(spec, Prime(args.ell), args.a, args.horizon));
}

OutputRecord cmd_certify(const ResidueArgs& args) {
  const auto spec = ProductSpec::parse(args.spec);
  CertifyOptions options;
  options.horizon = args.horizon;
  options.max_sturm_precision = args.max_sturm;
  return residue_record("certify", args, certify(spec, Prime(args.ell), args.a, options));
}

OutputRecord cmd_classify(const ClassifyArgs& args) {
  const auto rows = classify_cN(args.from, args.to, args.horizon);
  OutputRecord r;
  r.command = "classify";
  r.parameters = {{"from", str(args.from)}, {"to", str(args.to)}, {"horizon", str(args.horizon)}};
  json table = json::array();
  for (const auto& row : rows) {
    json entries = json::array();
    for (std::size_t i = 0; i < row.candidates.size(); ++i) {
      auto e = candidate_json(row.candidates[i]);
      e["route"] = std::string(to_string(row.certificates[i].route));
      entries.push_back(e);
    }
    table.push_back({{"N", str(row.N)}, {"spec", row.spec.to_string()}, {"congruences", entries}});
  }
  r.results = {{"rows", table}};
  return r;
}

OutputRecord cmd_audit(const AuditArgs& args) {
  const auto spec = ProductSpec::parse(args.spec);
  const auto report = theorem12_audit(spec, args.from, args.to, args.horizon);
  OutputRecord r;
  r.command = "audit";
  r.spec = spec.to_string();
  r.parameters = {{"from", str(args.from)}, {"to", str(args.to)}, {"horizon", str(args.horizon)}};
  json primes = json::array();
  for (const auto& p : report.primes) {
    json witnesses = json::array();
    for (const auto& res : p.residues) {
      json w = {{"a", str(res.a)}, {"route", std::string(to_string(res.certificate.route))}};
      if (res.certificate.witness) {
        w["n"] = str(res.certificate.witness->n);
        w["residue"] = std::to_string(res.certificate.witness->residue);
      }
      witnesses.push_back(w);
    }
    primes.push_back({{"ell", str(p.ell)},
                      {"forced_a", str(p.forced_a)},
                      {"max_unforced_witness", str(p.max_unforced_witness)},
                      {"forced_certificate", certificate_json(p.forced_certificate)},
                      {"residues", witnesses},
                      {"anomalies", p.anomalies}});
  }
  r.results = {{"primes", primes}, {"skipped", strings(report.skipped)}, {"all_refuted", report.all_refuted()}};
  return r;
}

OutputRecord cmd_theta_cycle(const FormArgs& args) {
  const std::int64_t l = args.ell;
  const auto form = build_named_form(args, (l - 1) * (l + 1));
  const auto report = theta_cycle(form.series, form.weight, Prime(l));
  OutputRecord r;
  r.command = "theta-cycle";
  r.spec = args.form == "F" ? ProductSpec::parse(args.spec).to_string() : "";
  r.parameters = {{"form", args.form}, {"ell", str(l)}, {"weight", str(form.weight)},
                  {"precision", str(form.series.precision())}};
  r.results = {{"filtrations", strings(report.filtrations)},
               {"case", std::string(to_string(report.case_label))},
               {"k0", report.k0 ? json(str(*report.k0)) : json(nullptr)},
               {"drop_indices", strings(report.drop_indices)},
               {"drops", strings(report.drops)},
               {"v", str(static_cast<std::int64_t>(report.drop_indices.size()))},
               {"stable", report.stable}};
  return r;
}

OutputRecord cmd_filtration(const FormArgs& args) {
  const auto form = build_named_form(args, 0);
  const auto w = filtration(form.series, form.weight, Prime(args.ell));
  OutputRecord r;
  r.command = "filtration";
  r.spec = args.form == "F" ? ProductSpec::parse(args.spec).to_string() : "";
  r.parameters = {{"form", args.form}, {"ell", str(args.ell)}, {"weight", str(form.weight)},
                  {"precision", str(form.series.precision())}};
  r.results = {{"filtration", str(w)}};
  return r;
}

std::string render_human(const OutputRecord& record) {
  const auto& res = record.results;
  std::ostringstream os;
  if (record.command == "expand") {
    os << join(res["coefficients"]) << "\n";
  } else if (record.command == "scan") {
    if (res["candidates"].empty()) os << "no candidates\n";
    for (const auto& c : res["candidates"]) {
      os << "(" << c["ell"].get<std::string>() << ", " << c["a"].get<std::string>() << ") "
         << c["status"].get<std::string>() << " horizon=" << c["horizon"].get<std::string>() << "\n";
    }
    os << "primes: " << join(res["primes"]) << (res["exhaustive"].get<bool>() ? "" : " (non-exhaustive)") << "\n";
  } else if (record.command == "refute" || record.command == "certify") {
    os << render_certificate(res);
  } else if (record.command == "classify") {
    for (const auto& row : res["rows"]) {
      os << "N=" << row["N"].get<std::string>() << ":";
      if (row["congruences"].empty()) os << " none";
      for (const auto& c : row["congruences"]) {
        os << " (" << c["ell"].get<std::string>() << ", " << c["a"].get<std::string>() << ") "
           << c["status"].get<std::string>();
      }
      os << "\n";
    }
  } else if (record.command == "audit") {
    for (const auto& p : res["primes"]) {
      os << "l=" << p["ell"].get<std::string>() << " forced_a=" << p["forced_a"].get<std::string>()
         << " max_unforced_witness=" << p["max_unforced_witness"].get<std::string>()
         << " forced=" << p["forced_certificate"]["route"].get<std::string>();
      for (const auto& a : p["anomalies"]) os << " ANOMALY: " << a.get<std::string>();
      os << "\n";
    }
    os << "skipped: " << (res["skipped"].empty() ? "none" : join(res["skipped"])) << "\n";
    os << "all_refuted: " << (res["all_refuted"].get<bool>() ? "true" : "false") << "\n";
  } else if (record.command == "theta-cycle") {
    os << "filtrations: " << join(res["filtrations"]) << "\n";
    os << "case: " << res["case"].get<std::string>() << "\n";
    os << "stable: " << (res["stable"].get<bool>() ? "true" : "false") << "\n";
    os << "k0: " << (res["k0"].is_null() ? "none" : res["k0"].get<std::string>()) << "\n";
    os << "drop_indices: " << join(res["drop_indices"]) << "\n";
    os << "drops: " << join(res["drops"]) << "\n";
  } else if (record.command == "filtration") {
    os << res["filtration"].get<std::string>() << "\n";
  }
  return os.str();
}

std::string render_csv(const OutputRecord& record) {
  if (record.command != "classify") throw InvalidArgument("CSV output is available for classify only");
  std::ostringstream os;
  os << "N,ell,a,status,route\n";
  for (const auto& row : record.results["rows"]) {
    const auto n = row["N"].get<std::string>();
    if (row["congruences"].empty()) os << n << ",,,,\n";
    for (const auto& c : row["congruences"]) {
      os << n << "," << c["ell"].get<std::string>() << "," << c["a"].get<std::string>() << ","
         << c["status"].get<std::string>() << "," << c["route"].get<std::string>() << "\n";
    }
  }
  return os.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact q-series expansion and Ramanujan congruence checks for eta quotients", "etaq"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  bool as_json = false;
  bool as_csv = false;
  auto add_format = [&](CLI::App* sub) {
    sub->add_flag("--json", as_json, "Emit a JSON record");
  };

  ExpandArgs expand_args;
  auto* expand = app.add_subcommand("expand", "Coefficients of an eta product");
  expand->add_option("-s,--spec", expand_args.spec, "Factors d^e, e.g. '1^-1 2^-1'")->required();
  expand->add_option("-n,--precision", expand_args.precision, "Coefficients q^0 .. q^(n-1)")
      ->envname("ETAQ_PRECISION")
      ->check(CLI::PositiveNumber);
  expand->add_option("--start", expand_args.start, "First coefficient index to print");
  expand->add_option("--index", expand_args.index, "Print only this coefficient");
  expand->add_option("-m,--modulus", expand_args.modulus, "Reduce modulo this prime");
  add_format(expand);

  ScanArgs scan_args;
  auto* scan_cmd = app.add_subcommand("scan", "Find (l, a) with c(l n + a) = 0 (mod l) up to a horizon");
  scan_cmd->add_option("-s,--spec", scan_args.spec)->required();
  scan_cmd->add_option("--horizon", scan_args.horizon)->envname("ETAQ_HORIZON");
  scan_cmd->add_option("--primes", scan_args.primes, "Override the candidate primes");
  scan_cmd->add_option("--cap", scan_args.cap, "Prime cap when no bound is known (odd j)");
  add_format(scan_cmd);

  ResidueArgs refute_args;
  auto* refute_cmd = app.add_subcommand("refute", "Search for a coefficient witness against (l, a)");
  ResidueArgs certify_args;
  auto* certify_cmd = app.add_subcommand("certify", "Certify or refute c(l n + a) = 0 (mod l)");
  for (auto [sub, a] : {std::pair{refute_cmd, &refute_args}, std::pair{certify_cmd, &certify_args}}) {
    sub->add_option("-s,--spec", a->spec)->required();
    sub->add_option("-l,--ell", a->ell, "Prime modulus")->required();
    sub->add_option("-a,--residue", a->a, "Residue class 0 <= a < l")->required();
    sub->add_option("--horizon", a->horizon)->envname("ETAQ_REFUTE_HORIZON");
    add_format(sub);
  }
  certify_cmd->add_option("--max-sturm", certify_args.max_sturm, "Coefficient limit for the fixpoint test")
      ->envname("ETAQ_MAX_STURM");

  ClassifyArgs classify_args;
  auto* classify_cmd = app.add_subcommand("classify", "Congruences of c_N for a range of N");
  classify_cmd->add_option("--from", classify_args.from);
  classify_cmd->add_option("--to", classify_args.to);
  classify_cmd->add_option("--horizon", classify_args.horizon)->envname("ETAQ_HORIZON");
  add_format(classify_cmd);
  classify_cmd->add_flag("--csv", as_csv, "Emit CSV");

  AuditArgs audit_args;
  auto* audit_cmd = app.add_subcommand("audit", "Refute every residue for primes above the class bound");
  audit_cmd->add_option("-s,--spec", audit_args.spec)->required();
  audit_cmd->add_option("--from", audit_args.from);
  audit_cmd->add_option("--to", audit_args.to);
  audit_cmd->add_option("--horizon", audit_args.horizon)->envname("ETAQ_REFUTE_HORIZON");
  add_format(audit_cmd);

  FormArgs cycle_args;
  auto* cycle_cmd = app.add_subcommand("theta-cycle", "Filtrations along the theta-cycle of a level-1 form");
  FormArgs filt_args;
  auto* filt_cmd = app.add_subcommand("filtration", "Filtration of a level-1 form mod l");
  for (auto [sub, a] : {std::pair{cycle_cmd, &cycle_args}, std::pair{filt_cmd, &filt_args}}) {
    sub->add_option("--form", a->form, "delta, E4, E6 or F")->required();
    sub->add_option("-l,--ell", a->ell, "Prime l >= 5")->required();
    sub->add_option("-s,--spec", a->spec, "Spec for F (level 1 only)");
    sub->add_option("-n,--precision", a->precision, "Coefficients to compute")->envname("ETAQ_PRECISION");
    add_format(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help_out, help_err;
    const int code = app.exit(e, help_out, help_err);
    out << help_out.str();
    err << help_err.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    OutputRecord record;
    if (*expand) record = cmd_expand(expand_args);
    else if (*scan_cmd) record = cmd_scan(scan_args);
    else if (*refute_cmd) record = cmd_refute(refute_args);
    else if (*certify_cmd) record = cmd_certify(certify_args);
    else if (*classify_cmd) record = cmd_classify(classify_args);
    else if (*audit_cmd) record = cmd_audit(audit_args);
    else if (*cycle_cmd) record = cmd_theta_cycle(cycle_args);
    else if (*filt_cmd) record = cmd_filtration(filt_args);

    if (as_json) {
      out << record.dump();
    } else if (as_csv) {
      out << render_csv(record);
    } else {
      out << render_human(record);
    }
    return kExitOk;
  } catch (const PrecisionShortfall& e) {
    err << "etaq: precision shortfall: " << e.what() << "\n";
    return kExitPrecision;
  } catch (const InvalidArgument& e) {
    err << "etaq: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NotInvertible& e) {
    err << "etaq: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NotModular& e) {
    err << "etaq: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "etaq: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace etaq::cli
