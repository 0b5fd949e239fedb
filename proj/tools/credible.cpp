// Command-line front end: sweep, figures, verify, simulate.

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "credible/dynamics.hpp"
#include "credible/report.hpp"

namespace {

using namespace credible;

enum Exit { kOk = 0, kUnexpected = 1, kBadArgs = 2, kIo = 3 };

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Flat "key = value" file; '#' and ';' start comments.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find_first_of("#;")));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

// Fills options not given on the command line from the config file.
void apply_config(CLI::App& sub, const std::string& path) {
  for (const auto& [key, value] : read_config(path)) {
    CLI::Option* opt = nullptr;
    try {
      opt = sub.get_option("--" + key);
    } catch (const CLI::OptionNotFound&) {
      throw std::invalid_argument("unknown config key '" + key + "' for '" + sub.get_name() + "'");
    }
    if (opt->count() > 0) continue;
    std::stringstream items(value);
    std::string item;
    while (std::getline(items, item, ',')) opt->add_result(trim(item));
    opt->run_callback();
  }
}

std::vector<Variant> expand_variants(const std::vector<std::string>& names, const std::vector<unsigned>& ks) {
  std::vector<Variant> out;
  auto limited = [&] {
    for (unsigned k : ks) out.push_back(Variant::limited(k));
  };
  for (const auto& n : names) {
    if (n == "all") {
      out.insert(out.end(), {Variant::benchmark(), Variant::non_naive_good(), Variant::non_naive_bad()});
      limited();
    } else if (n == "limited") {
      limited();
    } else {
      out.push_back(Variant::parse(n));
    }
  }
  return out;
}

PayoffSource parse_source(const std::string& s) {
  if (s == "printed") return PayoffSource::AsPrinted;
  if (s == "faithful") return PayoffSource::IntegrandFaithful;
  throw std::invalid_argument("unknown source '" + s + "' (printed or faithful)");
}

VoterRegime parse_regime(const std::string& s, unsigned k) {
  if (s == "naive") return VoterRegime::naive();
  if (s == "nonnaive") return VoterRegime::non_naive();
  if (s == "limited") return VoterRegime::limited(k);
  throw std::invalid_argument("unknown regime '" + s + "' (naive, nonnaive or limited)");
}

DeviationPolicy parse_policy(const std::string& s) {
  if (s == "never") return DeviationPolicy::never();
  if (s == "always") return DeviationPolicy::always();
  std::size_t t = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), t);
  if (ec == std::errc{} && ptr == s.data() + s.size()) return DeviationPolicy::at_period(t);
  throw std::invalid_argument("deviation policy must be never, always or a period index, got '" + s + "'");
}

std::string rep_label(const Reputation& r) {
  if (r.is_good()) return "G";
  if (r.is_forever()) return "B";
  return "B" + std::to_string(r.punishment_remaining());
}

void emit(const std::string& content, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << content;
    return;
  }
  std::ofstream os(out, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open '" + out + "' for writing");
  os << content;
  os.close();
  if (!os) throw IoError("failed writing '" + out + "'");
}

std::string simulation_csv(const Trajectory& tr) {
  std::string out = "t,x_L,x_R,rep_L,rep_R,region,winner,implemented,utility_L,utility_R,reneged\n";
  for (const auto& p : tr.periods) {
    const auto& o = p.outcome;
    out += std::to_string(p.period) + ',' + format_number(p.x_L) + ',' + format_number(p.x_R) + ',' +
           rep_label(p.rep_L) + ',' + rep_label(p.rep_R) + ',' + std::string(region_name(o.region)) + ',' +
           (o.winner == Side::Left ? "L" : "R") + ',' + format_number(o.implemented) + ',' +
           format_number(o.utility_L) + ',' + format_number(o.utility_R) + ',' + (o.reneged ? "1" : "0") + '\n';
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Credible campaign promises in repeated elections"};
  app.require_subcommand(1);

  std::string config;

  // sweep
  auto* sweep = app.add_subcommand("sweep", "d*(delta) over a grid of discount factors, as CSV");
  std::vector<std::string> variants{"all"};
  std::vector<unsigned> ks{1, 2, 3};
  std::vector<std::string> sources{"faithful"};
  SweepSpec spec;
  std::string sweep_out;
  sweep->add_option("--variant", variants, "benchmark, nonnaive-g, nonnaive-b, limited, limited-k<N> or all");
  sweep->add_option("--k", ks, "punishment labels used by 'limited' and 'all'");
  sweep->add_option("--delta-from", spec.delta_from, "first discount factor")->capture_default_str();
  sweep->add_option("--delta-to", spec.delta_to, "last discount factor")->capture_default_str();
  sweep->add_option("--steps", spec.steps, "grid points")->capture_default_str();
  sweep->add_option("--source", sources, "payoff source: printed or faithful (repeatable)");
  sweep->add_option("--seed", spec.seed, "recorded seed")->capture_default_str();
  sweep->add_option("--out", sweep_out, "output CSV (stdout when omitted)");
  sweep->add_option("--config", config, "flat key = value file; flags take precedence");

  // figures
  auto* figures = app.add_subcommand("figures", "figure1.csv and figure2.csv");
  std::string figures_dir = ".";
  figures->add_option("--out", figures_dir, "output directory")->capture_default_str();
  figures->add_option("--config", config, "flat key = value file; flags take precedence");

  // verify
  auto* verify = app.add_subcommand("verify", "check published formulas against numeric oracles");
  std::optional<double> tol;
  VerifyOptions vopt;
  std::string verify_out;
  verify->add_option("--tol", tol, "use this tolerance for every check");
  verify->add_option("--seed", vopt.seed, "Monte Carlo seed")->capture_default_str();
  verify->add_option("--samples", vopt.monte_carlo_samples, "Monte Carlo samples per case")->capture_default_str();
  verify->add_option("--out", verify_out, "report CSV (stdout when omitted)");
  verify->add_option("--config", config, "flat key = value file; flags take precedence");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "one history of the repeated election, as CSV");
  std::string regime_name = "naive";
  unsigned sim_k = 1;
  SimulationConfig sim;
  sim.delta = 0.7;
  sim.d = 0.5;
  sim.horizon = 20;
  std::string dev_left = "never";
  std::string dev_right = "never";
  std::string mode = "literal";
  std::string sim_out;
  simulate->add_option("--regime", regime_name, "naive, nonnaive or limited")->capture_default_str();
  simulate->add_option("--k", sim_k, "punishment label for the limited regime")->capture_default_str();
  simulate->add_option("--delta", sim.delta, "discount factor")->capture_default_str();
  simulate->add_option("--d", sim.d, "promise reach")->capture_default_str();
  simulate->add_option("--horizon", sim.horizon, "number of elections")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "random seed")->capture_default_str();
  simulate->add_option("--deviate-left", dev_left, "never, always or a period index")->capture_default_str();
  simulate->add_option("--deviate-right", dev_right, "never, always or a period index")->capture_default_str();
  simulate->add_option("--mode", mode, "literal or capped")->capture_default_str();
  simulate->add_option("--out", sim_out, "output CSV (stdout when omitted)");
  simulate->add_option("--config", config, "flat key = value file; flags take precedence");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadArgs;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    if (!config.empty()) apply_config(*active, config);

    if (active == sweep) {
      spec.variants = expand_variants(variants, ks);
      spec.sources.clear();
      for (const auto& s : sources) spec.sources.push_back(parse_source(s));
      validate(spec);
      emit(sweep_csv(spec), sweep_out);
    } else if (active == figures) {
      const FigureFiles f = emit_figures(figures_dir);
      std::cout << f.comparison.string() << '\n' << f.limited.string() << '\n';
    } else if (active == verify) {
      if (tol) {
        if (!(*tol >= 0.0)) throw std::invalid_argument("--tol must be nonnegative");
        vopt.tolerances = Tolerances::uniform(*tol);
      }
      if (vopt.monte_carlo_samples == 0) throw std::invalid_argument("--samples must be positive");
      const VerificationReport report = verify_consistency(vopt);
      emit(report.to_csv(), verify_out);
      std::cerr << report.summary() << '\n';
      for (const auto& c : report.checks) {
        if (c.status == CheckStatus::UnexpectedMismatch) {
          std::cerr << "unexpected mismatch: " << c.claim_id << " expected " << c.expected << ", computed "
                    << c.computed << '\n';
        }
      }
      return report.has_unexpected() ? kUnexpected : kOk;
    } else if (active == simulate) {
      sim.regime = parse_regime(regime_name, sim_k);
      sim.policy_L = parse_policy(dev_left);
      sim.policy_R = parse_policy(dev_right);
      if (mode == "literal") {
        sim.mode = PromiseMode::PaperLiteral;
      } else if (mode == "capped") {
        sim.mode = PromiseMode::CappedAtMedian;
      } else {
        throw std::invalid_argument("unknown mode '" + mode + "' (literal or capped)");
      }
      const Trajectory tr = simulate_history(sim);
      emit(simulation_csv(tr), sim_out);
      std::cerr << "discounted_L=" << format_number(tr.discounted_L)
                << " discounted_R=" << format_number(tr.discounted_R) << '\n';
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadArgs;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadArgs;
  }
  return kOk;
}
