#include "fglforge/cli.hpp"

#include <csignal>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "fglforge/lubin_tate.hpp"
#include "fglforge/suite.hpp"

namespace fglforge {

namespace {

std::atomic<bool> g_interrupt{false};

extern "C" void on_sigint(int) {
  g_interrupt.store(true);
  std::signal(SIGINT, SIG_DFL);  // a second ^C kills immediately
}

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command, claim, profile;
  int n = 2;
  std::optional<int> m, k;
  int d = 1;
  std::string modulus;
  int N = 8, M = 6;
  int cutoff = 0;
  std::string json_path;
  bool force = false;
};

const std::vector<std::string> kClaims{"recursion",      "tkvk",      "invariance", "v-collapse",   "t-collapse",   "chain-inversion",
                                       "cotangent",      "height",    "unit-factors", "fixed-subring", "eq351"};

bool is_lt_claim(const std::string& c) {
  return c == "cotangent" || c == "height" || c == "unit-factors" || c == "fixed-subring";
}

// Desk-scale limits; --force lifts them (hard limits of the library still apply).
void check_feasible(const RunConfig& c) {
  if (c.force) return;
  auto fail = [](const std::string& what) { throw ConfigError(what + " (use --force to override)"); };
  const int kcap = c.n == 3 ? 3 : 4;
  if (c.k && *c.k > kcap) fail("--k " + std::to_string(*c.k) + " exceeds feasibility limit " + std::to_string(kcap) + " for n=" + std::to_string(c.n));
  if (c.cutoff > 16) fail("--cutoff above 16");
  if (c.command == "verify" && is_lt_claim(c.claim)) {
    const int m = c.m.value_or(1);
    if (m > 2) fail("--m above 2");
    if ((1 << (c.n - 1)) * m > 4) fail("height h = 2^{n-1} m above 4");
    if (c.d > 3) fail("--d above 3");
    if (c.N > 16) fail("--precision above 16");
    if (c.M > 8) fail("--madic above 8");
  } else if (c.m && *c.m > 4) {
    fail("--m above 4");
  }
}

std::optional<std::vector<int>> parse_modulus(const std::string& s, int d) {
  if (s.empty()) return std::nullopt;
  std::vector<int> bits;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok != "0" && tok != "1") throw ConfigError("--modulus expects comma-separated bits, got '" + tok + "'");
    bits.push_back(tok[0] - '0');
  }
  if (static_cast<int>(bits.size()) != d + 1) throw ConfigError("--modulus needs d+1 = " + std::to_string(d + 1) + " bits (low to high)");
  return bits;
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// scalar details, recursing into "parts"
void print_report(std::ostream& os, const json& rep, int indent) {
  const std::string pad(indent, ' ');
  os << pad << rep["claim"].get<std::string>() << ": " << rep["status"].get<std::string>() << "\n";
  for (const char* sect : {"params", "bounds"}) {
    std::string p;
    for (const auto& [key, val] : rep[sect].items())
      if (!val.is_structured() && !val.is_null()) p += " " + key + "=" + scalar_text(val);
    if (!p.empty()) os << pad << "  " << sect << ":" << p << "\n";
  }
  for (const auto& [key, val] : rep["details"].items()) {
    if (key == "parts") continue;
    if (!val.is_structured()) os << pad << "  " << key << ": " << scalar_text(val) << "\n";
  }
  if (!rep["witness"].is_null()) os << pad << "  witness: " << rep["witness"].dump() << "\n";
  if (rep["details"].contains("parts"))
    for (const auto& part : rep["details"]["parts"]) print_report(os, part, indent + 2);
}

// returns false when the file cannot be written
bool write_json_file(const std::string& path, const json& doc) {
  std::ofstream f(path);
  if (!f) return false;
  f << doc.dump(2) << "\n";
  return static_cast<bool>(f);
}

int emit(const RunConfig& c, const json& doc, const std::string& text, int code, std::ostream& out, std::ostream& err) {
  if (c.json_path == "-") {
    out << doc.dump(2) << "\n";
    return code;
  }
  out << text;
  if (!c.json_path.empty() && !write_json_file(c.json_path, doc)) {
    err << "fgl-forge: cannot write " << c.json_path << "\n";
    return kExitUsage;
  }
  return code;
}

json base_doc(const std::string& command) { return json{{"schema", kSchema}, {"command", command}}; }

// ------------------------------------------------------------------ log

int cmd_log(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const int K = c.k.value_or(2);
  RnContext ctx(c.n, K, c.m, c.cutoff);
  json doc = base_doc("log");
  doc["params"] = json{{"n", c.n}, {"k_max", K}, {"m", c.m ? json(*c.m) : json(nullptr)}};
  doc["bounds"] = ctx.bounds();
  json logs = json::array();
  std::ostringstream text;
  for (int k = 1; k <= K; ++k) {
    const QPoly& l = ctx.ell()[k];
    mpz_class den = 1;
    for (const auto& [mono, coeff] : l.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), coeff.den().get_mpz_t());
    QPoly num = l.scaled(Rational(mpq_class(den)));
    std::string ns = poly_to_string(num);
    if (num.terms().size() > 1) ns = "(" + ns + ")";
    std::string line = den == 1 ? ns : ns + "/" + den.get_str();
    text << "l" << k << " = " << line << "\n";
    logs.push_back({{"k", k}, {"denominator", den.get_str()}, {"numerator", poly_to_json(num)}, {"text", line}});
  }
  doc["logs"] = logs;
  return emit(c, doc, text.str(), kExitVerified, out, err);
}

// ------------------------------------------------------------------ verify

Report run_claim(const RunConfig& c) {
  const std::string& cl = c.claim;
  if (is_lt_claim(cl)) {
    LTContext ctx(c.n, c.m.value_or(1), c.d, parse_modulus(c.modulus, c.d), c.N, c.M);
    if (cl == "cotangent") return cotangent_check(ctx);
    if (cl == "height") return residue_height(ctx);
    if (cl == "unit-factors") return d_factors(ctx);
    return fixed_subring_presentation(ctx);
  }
  if (cl == "v-collapse" || cl == "t-collapse") {
    const int K = c.k.value_or(c.n == 3 ? 3 : 4);
    const int m = c.m.value_or(1);
    return cl == "v-collapse" ? v_collapse_instances(c.n, m, K) : t_collapse_instances(c.n, m, K);
  }
  const int K = c.k.value_or(2);
  RnContext ctx(c.n, K, c.m, c.cutoff);
  json params{{"n", c.n}, {"k_max", K}};
  if (c.m) params["m"] = *c.m;
  std::vector<Report> parts;
  if (cl == "eq351") {
    parts = {verify_log_denominators(ctx), verify_eq351(ctx)};
  } else if (cl == "chain-inversion") {
    parts = {chain_inversion_check(ctx), chain_inversion_degenerate(c.n, ctx.cutoff())};
  } else {
    for (int k = 1; k <= K; ++k) {
      if (cl == "recursion") parts.push_back(verify_tk_recursion(ctx, k));
      if (cl == "tkvk") parts.push_back(verify_tkvk(ctx, k));
      if (cl == "invariance") parts.push_back(verify_ideal_invariance(ctx, k));
    }
  }
  Report r = combine_reports(cl, parts, params);
  r.bounds = ctx.bounds();
  return r;
}

// one-line headline for the claims whose outcome is a number
std::string headline(const Report& r) {
  const json& d = r.details;
  if (r.claim == "cotangent" && d.contains("rank"))
    return "rank " + d["rank"].dump() + (d["rank"] == d["required_rank"] ? " = h" : " != h = " + d["required_rank"].dump());
  if (r.claim == "height" && d.contains("height"))
    return "h = " + d["height"].dump() + ", coefficient " + d["leading_str"].get<std::string>();
  return "";
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Report r;
  try {
    r = run_claim(c);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::HeightExceedsCutoff) throw ConfigError(e.what());
    r.claim = c.claim;
    r.verified = false;
    r.details["error"] = e.what();
  }
  json doc = r.to_json();
  doc["command"] = "verify";
  std::ostringstream text;
  const std::string h = headline(r);
  if (!h.empty()) text << h << ", " << (r.verified ? "verified" : "FAILED") << "\n";
  print_report(text, doc, 0);
  return emit(c, doc, text.str(), r.verified ? kExitVerified : kExitFailed, out, err);
}

// ------------------------------------------------------------------ suite

int cmd_suite(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto jobs = suite_jobs(c.profile);
  auto prev = std::signal(SIGINT, on_sigint);
  auto results = run_jobs(jobs, default_threads(), &g_interrupt);
  std::signal(SIGINT, prev);
  const bool interrupted = g_interrupt.exchange(false);

  json doc = results_to_json(c.profile, results, interrupted);
  std::ostringstream text;
  for (const auto& r : results) {
    const char* tag = !r.ran ? "SKIP" : (r.verified ? "PASS" : "FAIL");
    text << "[" << tag << "] c" << r.criterion << " " << r.name;
    if (r.ran) text << " (" << std::fixed << std::setprecision(2) << r.seconds << " s)";
    if (!r.error.empty()) text << " error: " << r.error;
    text << "\n";
  }
  const json& s = doc["summary"];
  text << "verified " << s["verified"] << ", failed " << s["failed"] << ", not run " << s["not_run"] << "\n";
  int code = interrupted ? kExitInterrupted : (s["failed"].get<int>() > 0 ? kExitFailed : kExitVerified);
  const int written = emit(c, doc, text.str(), code, out, err);
  return interrupted ? kExitInterrupted : written;
}

json error_doc(const RunConfig& c, const std::string& msg) {
  json d = base_doc(c.command.empty() ? "none" : c.command);
  d["status"] = "usage-error";
  d["error"] = msg;
  return d;
}

}  // namespace

std::atomic<bool>& interrupt_flag() { return g_interrupt; }

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Exact 2-typical formal group laws with cyclic group actions", "fgl-forge"};
  app.require_subcommand(1);

  auto common = [&c](CLI::App* sc) {
    sc->add_option("--json", c.json_path, "Write the JSON report to PATH ('-' for stdout)");
    sc->add_flag("--force", c.force, "Lift feasibility limits");
  };
  auto rn_opts = [&c](CLI::App* sc) {
    sc->add_option("--n", c.n, "Level n (group C_{2^n})")->check(CLI::Range(1, 3));
    sc->add_option("--k", c.k, "Largest generator index")->check(CLI::Range(1, 5));
    sc->add_option("--m", c.m, "Quotient R_n<m>")->check(CLI::PositiveNumber);
    sc->add_option("--cutoff", c.cutoff, "Series cutoff X (inclusive; default 2^k)")->check(CLI::NonNegativeNumber);
  };

  auto* log = app.add_subcommand("log", "Print the equivariant logarithm coefficients");
  rn_opts(log);
  common(log);

  auto* verify = app.add_subcommand("verify", "Verify one claim");
  verify->add_option("claim", c.claim, "Claim id")->required()->check(CLI::IsMember(kClaims));
  rn_opts(verify);
  verify->add_option("--d", c.d, "Residue field F_{2^d}")->check(CLI::Range(1, 8));
  verify->add_option("--modulus", c.modulus, "Field modulus bits, low to high, e.g. 1,1,1");
  verify->add_option("--precision", c.N, "Witt precision N")->check(CLI::Range(1, 62));
  verify->add_option("--madic", c.M, "m-adic truncation order M")->check(CLI::Range(2, 62));
  common(verify);

  auto* suite = app.add_subcommand("suite", "Run the acceptance grid");
  suite->add_option("profile", c.profile, "quick or full")->required()->check(CLI::IsMember({"quick", "full"}));
  common(suite);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }
  if (log->parsed()) c.command = "log";
  if (verify->parsed()) c.command = "verify";
  if (suite->parsed()) c.command = "suite";

  try {
    check_feasible(c);
    if (c.command == "log") return cmd_log(c, out, err);
    if (c.command == "verify") return cmd_verify(c, out, err);
    return cmd_suite(c, out, err);
  } catch (const ConfigError& e) {
    err << "fgl-forge: " << e.what() << "\n";
    if (c.json_path == "-") out << error_doc(c, e.what()).dump(2) << "\n";
    else if (!c.json_path.empty()) write_json_file(c.json_path, error_doc(c, e.what()));
    return kExitUsage;
  } catch (const Error& e) {
    // library-level argument errors are configuration errors
    if (e.code() != ErrorCode::InvalidArgument) throw;
    err << "fgl-forge: " << e.what() << "\n";
    if (c.json_path == "-") out << error_doc(c, e.what()).dump(2) << "\n";
    else if (!c.json_path.empty()) write_json_file(c.json_path, error_doc(c, e.what()));
    return kExitUsage;
  }
}

}  // namespace fglforge
