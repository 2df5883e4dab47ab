#include "orelp/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "orelp/json_io.hpp"
#include "orelp/nielsen.hpp"
#include "orelp/pictures.hpp"
#include "orelp/sorep.hpp"
#include "orelp/tracesolve.hpp"

namespace orelp::cli {

namespace {

using nlohmann::json;

struct RunConfig {
  std::optional<double> tolerance;
  std::size_t grid = 32;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";

  double tol_or(double fallback) const { return tolerance.value_or(fallback); }
};

struct Outcome {
  std::string verdict;  // pass, fail or unresolved
  json payload;
  int code = kOk;
  json artifact = nullptr;  // written by --out instead of the payload when set
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "' is not JSON: " + e.what());
  }
}

// Accepts a bare artifact or a report envelope around it.
json unwrap(const json& j) { return j.is_object() && j.contains("payload") ? j.at("payload") : j; }

void flatten(const json& j, const std::string& path, std::ostream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), os);
  } else if (j.is_array() && !j.empty()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", os);
  } else {
    os << path << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

sorep::SearchOptions search_options(const RunConfig& c) {
  sorep::SearchOptions o;
  o.grid = c.grid;
  o.seed = c.seed;
  o.tolerance = c.tol_or(o.tolerance);
  return o;
}

Outcome cmd_certify(std::int64_t p, std::int64_t q, std::int64_t r, const std::string& text, const RunConfig& c) {
  auto ctx = make_context("a:" + std::to_string(p) + " b:" + std::to_string(q) + " c:" + std::to_string(r));
  Word w = parse_word(text, ctx);
  auto options = search_options(c);
  try {
    auto tree = sorep::crt_certify(w, options);
    auto report = sorep::verify(tree, options.tolerance);
    json cert = io::tree_to_json(tree);
    return {report.passed() ? "pass" : "fail",
            {{"certificate", cert}, {"verification", io::report_to_json(report)}},
            report.passed() ? kOk : kFailed,
            cert};
  } catch (const sorep::SearchExhausted& e) {
    std::ostringstream best;
    best << e.best_residual;
    return {"fail", {{"error", e.what()}, {"best_residual", best.str()}}, kFailed};
  }
}

Outcome cmd_verify(const std::string& path, const RunConfig& c) {
  json j = unwrap(read_json_file(path));
  if (j.is_object() && !j.contains("kind") && j.contains("certificate")) j = j.at("certificate");
  double tol = c.tol_or(1e-9);
  sorep::VerificationReport report;
  if (j.is_object() && j.contains("kind")) {
    report = sorep::verify(io::tree_from_json(j), tol);
  } else {
    report = sorep::verify(io::certificate_from_json(j), tol);
  }
  return {report.passed() ? "pass" : "fail", {{"verification", io::report_to_json(report)}}, report.passed() ? kOk : kFailed};
}

Outcome cmd_tracesolve(const std::string& path, const RunConfig& c) {
  auto targets = io::targets_from_json(unwrap(read_json_file(path)));
  double tol = c.tol_or(1e-8);
  auto rep = trace::build_abcd(targets, tol);
  bool ok = rep.target_error <= tol && rep.relator_error <= tol;
  return {ok ? "pass" : "fail", io::abcd_to_json(rep), ok ? kOk : kFailed};
}

nielsen::GenPair read_pair(const std::string& factors, const std::string& u, const std::string& v) {
  auto ctx = make_context(factors);
  return {parse_word(u, ctx), parse_word(v, ctx)};
}

json pair_to_json(const nielsen::GenPair& p) { return {{"u", to_string(p.u)}, {"v", to_string(p.v)}}; }

json reduction_to_json(const nielsen::Reduction& r) {
  json trace = json::array();
  for (const auto& m : r.trace) trace.push_back(m.to_string());
  return {{"pair", pair_to_json(r.pair)}, {"trace", trace}};
}

Outcome cmd_nielsen_reduce(const nielsen::GenPair& p) {
  nielsen::check_pair(p);
  auto r = nielsen::reduce_pair(p);
  bool replays = nielsen::replay(p, r.trace) == r.pair;
  json payload = {{"input", pair_to_json(p)}, {"reduction", reduction_to_json(r)}, {"replays", replays}};
  return {replays ? "pass" : "fail", payload, replays ? kOk : kFailed};
}

Outcome cmd_nielsen_classify(const nielsen::GenPair& p) {
  auto cl = nielsen::classify(p);
  json witnesses = json::array();
  for (const auto& w : cl.witnesses) witnesses.push_back(to_string(w));
  json payload = {{"input", pair_to_json(p)},
                  {"tag", nielsen::to_string(cl.tag)},
                  {"witnesses", witnesses},
                  {"orders", cl.orders},
                  {"reduction", reduction_to_json(cl.reduction)},
                  {"note", cl.note}};
  if (cl.conjugator) payload["conjugator"] = to_string(*cl.conjugator);
  if (!cl.factor.empty()) payload["factor"] = cl.factor;
  return {cl.tag == nielsen::Tag::Unresolved ? "unresolved" : "pass", payload, kOk};
}

Outcome cmd_nielsen_index(const std::string& text) {
  auto r = nielsen::parse_uv(text);
  auto ix = nielsen::index(r);
  json payload = {{"relator", nielsen::to_string(r)},
                  {"canonical", nielsen::to_string(nielsen::canonical(r))},
                  {"index", ix.index},
                  {"sign_index", ix.sign_index},
                  {"length", ix.length},
                  {"weight", 2 * ix.index + ix.length}};
  return {"pass", payload, kOk};
}

Outcome cmd_nielsen_case(const nielsen::GenPair& p, bool c1_equals_c2) {
  auto v = nielsen::decide_case(p, c1_equals_c2);
  return {"pass", {{"input", pair_to_json(p)}, {"shape", v.shape}, {"label", v.label}}, kOk};
}

Outcome cmd_enumerate(const nielsen::GenPair& p, std::size_t bound) {
  auto shape = nielsen::check_enumeration_shape(p);
  auto result = nielsen::enumerate_trivial(p, bound);
  json trivial = json::array();
  for (const auto& r : result.trivial) trivial.push_back(nielsen::to_string(r));
  const auto& g = p.u.group();
  auto letter = [&](const Letter& l) { return g.factor(l.factor).id + "^" + std::to_string(l.exponent); };
  json payload = {{"input", pair_to_json(p)},
                  {"shape",
                   {{"alpha", letter(shape.alpha)},
                    {"beta", letter(shape.beta)},
                    {"beta2", letter(shape.beta2)},
                    {"u_inverted", shape.u_inverted}}},
                  {"bound", bound},
                  {"candidates", result.candidates},
                  {"trivial", trivial}};
  bool empty = result.trivial.empty();
  return {empty ? "pass" : "fail", payload, empty ? kOk : kFailed};
}

Outcome cmd_picture_check(const std::string& path, const std::string& scheme) {
  auto p = io::picture_from_json(unwrap(read_json_file(path)));
  auto v = pictures::validate(p);
  json validation = {{"valid", v.valid()},
                     {"violations", v.violations},
                     {"vertices", v.vertices},
                     {"edges", v.edges},
                     {"faces", v.faces},
                     {"euler", v.euler}};
  if (!v.valid()) return {"fail", {{"validation", validation}}, kFailed};

  json zones = json::array();
  for (const auto& z : pictures::zones(p)) zones.push_back({{"arcs", z.arcs}, {"width", z.width()}});
  json payload = {{"surface", pictures::to_string(p.surface)},
                  {"scheme", scheme},
                  {"validation", validation},
                  {"zones", zones},
                  {"reduced_direct", pictures::is_reduced_direct(p)}};
  if (scheme == "standard") {
    auto report = pictures::curvature(p, pictures::standard_scheme(p));
    bool ok = pictures::gauss_bonnet_check(report);
    payload["curvature"] = io::curvature_to_json(report);
    payload["gauss_bonnet"] = ok;
    return {ok ? "pass" : "fail", payload, ok ? kOk : kFailed};
  }
  auto audit = pictures::news4_audit(p);
  bool gb = pictures::gauss_bonnet_check(audit.report);
  bool ok = gb && audit.vertices_flat && audit.bounds_hold && audit.conserved;
  payload["audit"] = io::news4_audit_to_json(audit);
  payload["gauss_bonnet"] = gb;
  return {ok ? "pass" : "fail", payload, ok ? kOk : kFailed};
}

Outcome cmd_picture_random(std::uint64_t seed, std::size_t ops, const std::string& relator, bool disc) {
  std::vector<pictures::Label> r;
  if (relator.empty()) {
    r = pictures::news4_relator();
  } else {
    std::istringstream is(relator);
    for (std::string tok; is >> tok;) r.push_back(pictures::parse_label(tok));
  }
  auto p = disc ? pictures::random_disc_picture(seed, ops, r) : pictures::random_picture(seed, ops, r);
  bool ok = pictures::validate(p).valid();
  return {ok ? "pass" : "fail", io::picture_to_json(p), ok ? kOk : kFailed};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"One-relator product toolkit: certificates, trace solving, Nielsen reduction, pictures", "orelp"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  double tol = 0;
  app.add_option("--tol", tol, "Tolerance (default 1e-9; 1e-8 for tracesolve)")->envname("ORELP_TOL");
  app.add_option("--grid", cfg.grid, "Search grid resolution, a power of 2")->envname("ORELP_GRID");
  app.add_option("--seed", cfg.seed, "Random seed")->envname("ORELP_SEED");
  app.add_option("--out", cfg.out, "Also write the payload to this file")->envname("ORELP_OUT");
  app.add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "text"}))->envname("ORELP_FORMAT");

  std::function<Outcome()> action;

  auto* certify = app.add_subcommand("certify", "Find and verify an SO(3) representation for a relator over Z_p*Z_q*Z_r");
  std::int64_t cp = 0, cq = 0, cr = 0;
  std::string cword;
  certify->add_option("P", cp)->required();
  certify->add_option("Q", cq)->required();
  certify->add_option("R", cr)->required();
  certify->add_option("WORD", cword, "Relator over a, b, c")->required();
  certify->callback([&] { action = [&] { return cmd_certify(cp, cq, cr, cword, cfg); }; });

  auto* verify = app.add_subcommand("verify", "Re-verify a certificate or certificate tree");
  std::string vfile;
  verify->add_option("FILE", vfile)->required();
  verify->callback([&] { action = [&] { return cmd_verify(vfile, cfg); }; });

  auto* tracesolve = app.add_subcommand("tracesolve", "Realise six trace targets by SL(2,C) matrices a, b, c, d");
  std::string tfile;
  tracesolve->add_option("FILE", tfile)->required();
  tracesolve->callback([&] { action = [&] { return cmd_tracesolve(tfile, cfg); }; });

  std::string factors, u_text, v_text;
  auto add_pair = [&](CLI::App* sub) {
    sub->add_option("--factors", factors, "Factor orders, e.g. a:2,b:4 (0 = infinite)")->required();
    sub->add_option("--u", u_text, "First generator")->required();
    sub->add_option("--v", v_text, "Second generator")->required();
  };

  auto* nielsen = app.add_subcommand("nielsen", "Nielsen reduction and classification of generating pairs");
  nielsen->require_subcommand(1);
  auto* reduce = nielsen->add_subcommand("reduce", "Greedy Nielsen reduction with a replayable trace");
  add_pair(reduce);
  reduce->callback([&] { action = [&] { return cmd_nielsen_reduce(read_pair(factors, u_text, v_text)); }; });
  auto* classify = nielsen->add_subcommand("classify", "Classify the subgroup generated by a pair");
  add_pair(classify);
  classify->callback([&] { action = [&] { return cmd_nielsen_classify(read_pair(factors, u_text, v_text)); }; });
  auto* index = nielsen->add_subcommand("index", "Index and sign index of a relator in U, V");
  std::string relator_text;
  index->add_option("RELATOR", relator_text, "e.g. \"U V U^-1 V^-1\"")->required();
  index->callback([&] { action = [&] { return cmd_nielsen_index(relator_text); }; });
  auto* cases = nielsen->add_subcommand("case", "Case split for short U, V");
  add_pair(cases);
  bool c1_equals_c2 = false;
  cases->add_flag("--c1-equals-c2", c1_equals_c2);
  cases->callback([&] { action = [&] { return cmd_nielsen_case(read_pair(factors, u_text, v_text), c1_equals_c2); }; });

  std::size_t bound = 12;
  auto add_enumerate = [&](CLI::App* sub) {
    add_pair(sub);
    sub->add_option("--bound", bound, "Enumerate relators with 2*index + length below this")->capture_default_str();
    sub->callback([&] { action = [&] { return cmd_enumerate(read_pair(factors, u_text, v_text), bound); }; });
  };
  add_enumerate(nielsen->add_subcommand("enumerate", "Search for short relators killed by the pair"));
  add_enumerate(app.add_subcommand("enumerate", "Search for short relators killed by the pair"));

  auto* picture = app.add_subcommand("picture", "Pictures and curvature");
  picture->require_subcommand(1);
  auto* check = picture->add_subcommand("check", "Validate a picture and audit its curvature");
  std::string pfile, scheme = "standard";
  check->add_option("FILE", pfile)->required();
  check->add_option("--scheme", scheme)->check(CLI::IsMember({"standard", "news4"}))->capture_default_str();
  check->callback([&] { action = [&] { return cmd_picture_check(pfile, scheme); }; });
  auto* random = picture->add_subcommand("random", "Generate a random valid picture");
  std::size_t ops = 8;
  std::string labels;
  bool disc = false;
  random->add_option("--ops", ops)->capture_default_str();
  random->add_option("--relator", labels, "Space-separated labels; default C:c1 AB:U C:c2 AB:V");
  random->add_flag("--disc", disc, "Cut out one vertex to leave a disc picture");
  random->callback([&] { action = [&] { return cmd_picture_random(cfg.seed, ops, labels, disc); }; });

  std::vector<std::string> argv_store{"orelp"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "orelp: " << e.what() << '\n';
    return kUsage;
  }

  if (app.count("--tol") > 0 || std::getenv("ORELP_TOL")) {
    if (!(tol > 0)) {
      err << "orelp: --tol must be positive\n";
      return kUsage;
    }
    cfg.tolerance = tol;
  }
  if (cfg.grid == 0 || (cfg.grid & (cfg.grid - 1)) != 0) {
    err << "orelp: --grid must be a power of 2\n";
    return kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = action();
  } catch (const Error& e) {
    err << "orelp: " << e.what() << '\n';
    return kUsage;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out);
    if (!f) {
      err << "orelp: cannot write '" << cfg.out << "'\n";
      return kUsage;
    }
    f << (outcome.artifact.is_null() ? outcome.payload : outcome.artifact).dump(2) << '\n';
  }
  json report = {{"command", args}, {"timing", {{"seconds", seconds}}}, {"verdict", outcome.verdict}, {"payload", outcome.payload}};
  if (cfg.format == "text") {
    out << "verdict = " << outcome.verdict << '\n';
    flatten(outcome.payload, "payload", out);
  } else {
    out << report.dump(2) << '\n';
  }
  return outcome.code;
}

}  // namespace orelp::cli
