// Command line front end for the rigid body studies. Each subcommand reads an
// optional config file, runs its study and writes CSV files to the output
// directory.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>

#include "dgm/config.hpp"
#include "dgm/error.hpp"
#include "dgm/experiments.hpp"

namespace {

struct Options {
  std::string config;
  std::string out;
  unsigned seed = 1;
  bool serial = false;
};

dgm::ExperimentConfig load(const Options& opt) {
  dgm::ExperimentConfig cfg = opt.config.empty() ? dgm::ExperimentConfig{} : dgm::load_config(opt.config);
  if (!opt.out.empty()) cfg.out_dir = opt.out;
  if (opt.serial) cfg.execution = dgm::Execution::Serial;
  cfg.seed = opt.seed;
  cfg.validate();
  return cfg;
}

void report(const std::vector<std::filesystem::path>& files) {
  for (const auto& f : files) std::cout << "wrote " << f.string() << '\n';
}

// Ball diagnostics for the fixed-point solver: the empirical step bound and
// the largest |x' - x| / |i(x)| seen along the run.
void report_bounds(const dgm::ExperimentConfig& cfg, const dgm::MethodSpec& m, const dgm::Trajectory& t) {
  const dgm::OdeProblem problem = cfg.make_problem();
  std::vector<dgm::Vector> samples;
  const std::size_t stride = std::max<std::size_t>(1, t.states.size() / 50);
  for (std::size_t k = 0; k < t.states.size(); k += stride) samples.push_back(t.states[k]);
  const double h = cfg.h.value();
  const dgm::BoundEstimates est = dgm::estimate_bounds(m.stepper.dg, problem, samples, 1.0, h, cfg.seed);
  const dgm::StepBound bound = dgm::theoretical_step_bound(est);
  double ratio = 0.0;
  for (std::size_t k = 1; k < t.states.size(); ++k) {
    const double g = dgm::norm(dgm::eval_gradient(problem, t.states[k - 1]));
    if (g > 0.0) ratio = std::max(ratio, dgm::norm(dgm::sub(t.states[k], t.states[k - 1])) / g);
  }
  std::printf("%s: L=%.6g C1=%.6g R'=%.6g H'=%.6g h=%.6g max|x'-x|/|i(x)|=%.6g\n", m.label.c_str(),
              est.lipschitz, est.c1, bound.r_prime, bound.h_prime, h, ratio);
  if (h > bound.h_prime) std::printf("%s: h exceeds the estimated bound H'\n", m.label.c_str());
}

int run_simulate(const Options& opt) {
  const auto cfg = load(opt);
  std::vector<dgm::MethodSpec> methods = cfg.methods;
  if (methods.empty()) methods.push_back(dgm::default_method(dgm::MethodKind::DgLinear));
  for (const auto& m : methods) {
    const dgm::Trajectory t = dgm::simulate(cfg, m);
    report(dgm::write_simulate_csv(cfg, m, t));
    const double i0 = t.integral_values.front();
    double drift = 0.0;
    for (double v : t.integral_values) drift = std::max(drift, std::abs(v - i0));
    std::printf("%s: steps=%ld max|I-I0|=%.3e f_evals=%ld i_evals=%ld\n", m.label.c_str(), t.steps(), drift,
                t.cost.f_evals, t.cost.i_evals());
    if (m.stepper.kind == dgm::MethodKind::DgFixedPoint) report_bounds(cfg, m, t);
  }
  return 0;
}

void print_fit(const dgm::OrderStudy& s) {
  std::printf("reference h=%.3g change=%.3g\n", s.reference.h_ref, s.reference.richardson_change);
  for (const auto& m : s.methods)
    std::printf("%s: slope=%.4f%s%s\n", m.label.c_str(), m.fit.slope, m.fit.reliable ? "" : " (unreliable)",
                m.partial ? " (partial)" : "");
}

int run_order(const Options& opt) {
  const auto cfg = load(opt);
  const auto study = dgm::order_study(cfg);
  report(dgm::write_order_csv(cfg, study));
  print_fit(study);
  return 0;
}

int run_efficiency(const Options& opt) {
  const auto cfg = load(opt);
  const auto study = dgm::efficiency_study(cfg);
  report(dgm::write_efficiency_csv(cfg, study));
  return 0;
}

int run_conserve(const Options& opt) {
  const auto cfg = load(opt);
  const auto study = dgm::conservation_study(cfg);
  report(dgm::write_conservation_csv(cfg, study));
  for (const auto& m : study.methods) std::printf("%s: max rel drift=%.3e\n", m.label.c_str(), m.max_rel_drift);
  return 0;
}

int run_stepcrit(const Options& opt) {
  const auto cfg = load(opt);
  const auto study = dgm::stepsize_criterion_study(cfg);
  report(dgm::write_stepcrit_csv(cfg, study));
  for (const auto& [r, h] : study.thresholds) {
    if (h) std::printf("R=%g: largest accepted h=%.6g\n", r, *h);
    else std::printf("R=%g: no accepted h\n", r);
  }
  return 0;
}

int run_phase(const Options& opt) {
  const auto cfg = load(opt);
  const auto study = dgm::phase_trajectory_export(cfg);
  report(dgm::write_phase_csv(cfg, study));
  for (const auto& r : study.runs)
    if (!r.failure.empty()) std::printf("%s h=%s failed: %s\n", r.label.c_str(), r.h.str().c_str(), r.failure.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete gradient integrators for ODEs with a first integral"};
  app.require_subcommand(1);
  Options opt;

  struct Entry {
    const char* name;
    const char* help;
    int (*fn)(const Options&);
  };
  const Entry entries[] = {
      {"simulate", "integrate one trajectory per configured method", run_simulate},
      {"order", "error against a reference over an h grid, with log-log slope", run_order},
      {"conserve", "integral drift over a long run", run_conserve},
      {"efficiency", "cost counters and wall time over an h grid", run_efficiency},
      {"stepcrit", "single-step denominator and conditioning near a critical point", run_stepcrit},
      {"phase", "trajectories for phase-space plots", run_phase},
  };
  int (*selected)(const Options&) = nullptr;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    sub->add_option("--config", opt.config, "key/value config file")->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "output directory (overrides the config)");
    sub->add_option("--seed", opt.seed, "seed for sampled diagnostics");
    sub->add_flag("--serial", opt.serial, "run sweeps on one thread");
    sub->callback([&selected, fn = e.fn] { selected = fn; });
  }

  CLI11_PARSE(app, argc, argv);
  try {
    return selected(opt);
  } catch (const dgm::Error& e) {
    std::cerr << "error [" << dgm::to_string(e.kind()) << "]: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
