#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "commands.hpp"
#include "confext/errors.hpp"

namespace {

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw confext::Error("cannot read config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos)
      throw confext::Error(fmt::format("{}:{}: expected key=value", path, lineno));
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  cli::Options o;
  std::string out_format = "json", out_path, config_path;
  bool no_timestamp = false;

  CLI::App app{"Conformal extension operators: constants, extremals and verification"};
  app.require_subcommand(1);
  std::vector<std::pair<CLI::App*, CLI::Option*>> tracked;  // options a config file may fill

  auto common = [&](CLI::App* sub) {
    tracked.emplace_back(sub, sub->add_option("--n", o.n, "dimension (2..8)"));
    tracked.emplace_back(sub, sub->add_option("--alpha", o.alpha, "kernel exponent alpha"));
    tracked.emplace_back(sub, sub->add_option("--beta", o.beta, "kernel exponent beta"));
    tracked.emplace_back(sub, sub->add_option("--level", o.level, "quadrature level")->check(CLI::Range(2, 40)));
    tracked.emplace_back(sub, sub->add_option("--seed", o.seed, "sampling seed"));
    sub->add_option("--out", out_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--path", out_path, "output file (stdout when omitted)");
    sub->add_option("--config", config_path, "key=value defaults file");
    sub->add_flag("--no-timestamp", no_timestamp, "omit timestamp and runtime for byte-stable output");
  };
  auto exps = [&](CLI::App* sub) {
    tracked.emplace_back(sub, sub->add_option("--p", o.p, "boundary exponent p"));
    tracked.emplace_back(sub, sub->add_option("--t", o.t, "interior exponent t"));
  };
  auto bubble = [&](CLI::App* sub) {
    tracked.emplace_back(sub, sub->add_option("--c", o.c, "bubble amplitude"));
    tracked.emplace_back(sub, sub->add_option("--d", o.d, "bubble scale"));
    tracked.emplace_back(sub, sub->add_option("--y0", o.y0, "bubble center (n-1 coordinates)")->delimiter(','));
  };

  auto* params = app.add_subcommand("params", "validate (n, alpha, beta) and derive exponents");
  params->add_option("action", o.action, "check | exponents | split")
      ->check(CLI::IsMember({"check", "exponents", "split"}));
  common(params);
  exps(params);

  auto* constants = app.add_subcommand("constants", "sharp and auxiliary constants");
  constants->add_option("which", o.action, "sharp | subcritical | c-n-alpha | sphere-kernel | psi | blowup")
      ->required()
      ->check(CLI::IsMember({"sharp", "subcritical", "c-n-alpha", "sphere-kernel", "psi", "blowup"}));
  common(constants);
  exps(constants);
  tracked.emplace_back(constants, constants->add_option("--r", o.r, "radius for psi"));
  tracked.emplace_back(constants, constants->add_option("--r-lo", o.r_lo, "blow-up fit window start"));
  tracked.emplace_back(constants, constants->add_option("--r-hi", o.r_hi, "blow-up fit window end"));

  auto* ident = app.add_subcommand("verify-identities", "conformal identities and kernel inequalities");
  common(ident);
  tracked.emplace_back(ident, ident->add_option("--samples", o.samples, "random samples per identity"));

  auto* el = app.add_subcommand("verify-el", "Euler-Lagrange residuals of the bubble");
  common(el);
  exps(el);
  bubble(el);
  tracked.emplace_back(el, el->add_option("--samples", o.samples, "boundary samples"));
  tracked.emplace_back(el, el->add_option("--tol", o.tol, "ratio_cv tolerance"));
  el->add_flag("--system", o.system, "also check the (u, v) system");

  auto* lim = app.add_subcommand("verify-limits", "boundary limits of the extension");
  common(lim);
  bubble(lim);
  tracked.emplace_back(lim, lim->add_option("--x", o.x, "boundary point x' (n-1 coordinates)")->delimiter(','));
  tracked.emplace_back(lim, lim->add_option("--tol", o.tol, "ratio tolerance"));

  auto* sym = app.add_subcommand("verify-symmetry", "Kelvin, Frank-Lieb and moving-plane checks");
  common(sym);
  bubble(sym);
  tracked.emplace_back(sym, sym->add_option("--samples", o.samples, "boundary samples"));

  auto* sweep = app.add_subcommand("sweep", "Rayleigh-quotient sweeps over trial families");
  common(sweep);
  exps(sweep);
  tracked.emplace_back(sweep, sweep->add_option("--degrees", o.degrees, "zonal degrees")->delimiter(','));
  tracked.emplace_back(sweep, sweep->add_option("--amplitudes", o.amplitudes, "amplitude grid (contains 0)")->delimiter(','));
  tracked.emplace_back(sweep, sweep->add_option("--d-grid", o.d_grid, "bubble scales")->delimiter(','));
  tracked.emplace_back(sweep, sweep->add_option("--ascend", o.ascend_steps, "pattern-search steps (0: off)"));
  tracked.emplace_back(sweep, sweep->add_option("--step", o.ascend_step, "pattern-search initial step"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  for (auto* sub : app.get_subcommands()) o.command = sub->get_name();
  if (o.command == "params" && o.action.empty()) o.action = "check";

  bool level_given = false;
  try {
    // flags > config file > CONFEXT_LEVEL > built-in defaults
    std::map<std::string, std::string> kv;
    if (!config_path.empty()) kv = read_config(config_path);
    for (auto [sub, opt] : tracked) {
      if (!sub->parsed()) continue;
      std::string key = opt->get_single_name();
      if (opt->count() > 0) {
        kv.erase(key);
        if (key == "level") level_given = true;
        continue;
      }
      auto it = kv.find(key);
      if (it == kv.end()) continue;
      opt->clear();
      opt->add_result(it->second);
      opt->run_callback();
      kv.erase(it);
      if (key == "level") level_given = true;
    }
    for (const auto& [k, v] : kv) {
      if (k != "out" && k != "path")
        throw CLI::ValidationError("config", "unknown key '" + k + "'");
      if (k == "out") out_format = v;
      if (k == "path" && out_path.empty()) out_path = v;
    }
    if (out_format != "json" && out_format != "csv")
      throw CLI::ValidationError("--out", "must be json or csv");
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const confext::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  if (!level_given) {
    if (const char* env = std::getenv("CONFEXT_LEVEL")) {
      try {
        o.level = std::stoi(env);
      } catch (...) {
        std::cerr << "usage error: CONFEXT_LEVEL must be an integer\n";
        return 2;
      }
      if (o.level < 2 || o.level > 40) {
        std::cerr << "usage error: CONFEXT_LEVEL out of range [2, 40]\n";
        return 2;
      }
    }
  }

  auto t0 = std::chrono::steady_clock::now();
  confext::RunReport rep;
  try {
    rep = cli::run_command(o);
  } catch (const confext::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    rep.command = o.command;
    rep.level = o.level;
    rep.flag("error: " + std::string(e.what()), false);
    rep.pass = false;
  }
  if (!no_timestamp) {
    rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    rep.timestamp = utc_timestamp();
  }
  const bool ok = rep.all_pass();
  rep.pass = ok;
  try {
    confext::emit(rep, out_format == "csv" ? confext::Format::Csv : confext::Format::Json, out_path);
  } catch (const confext::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return ok ? 0 : 1;
}
