#include "dgm/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "dgm/error.hpp"

namespace dgm {

long StepSize::steps_to(double t_end) const { return std::lround(t_end * den / num); }

std::string StepSize::str() const {
  if (den == 1.0) return format_real(num);
  return format_real(num) + "/" + format_real(den);
}

MethodSpec default_method(MethodKind kind) {
  MethodSpec m;
  m.label = std::string(to_string(kind));
  m.stepper.kind = kind;
  return m;
}

OdeProblem ExperimentConfig::make_problem() const {
  if (problem == "rigid_body_modified") return rigid_body_modified(i1, i2, i3, alpha);
  if (problem == "harmonic_oscillator") return harmonic_oscillator();
  throw Error(ErrorKind::InvalidParameter, "unknown problem '" + problem + "'");
}

Vector ExperimentConfig::initial_state() const {
  if (x0) return *x0;
  if (problem == "harmonic_oscillator") return Vector{1.0, 0.0};
  return rigid_body_initial_state(1.0);
}

void ExperimentConfig::validate() const {
  auto positive = [](const StepSize& s) { return s.num > 0.0 && s.den > 0.0 && std::isfinite(s.value()); };
  if (!positive(h)) throw Error(ErrorKind::InvalidParameter, "h must be positive");
  for (std::size_t k = 0; k < h_grid.size(); ++k) {
    if (!positive(h_grid[k])) throw Error(ErrorKind::InvalidParameter, "h_grid entries must be positive");
    if (k > 0 && !(h_grid[k].value() < h_grid[k - 1].value()))
      throw Error(ErrorKind::InvalidParameter, "h_grid must be strictly decreasing");
  }
  for (const auto& s : phase_h)
    if (!positive(s)) throw Error(ErrorKind::InvalidParameter, "phase_h entries must be positive");
  if (!(t_end > 0.0)) throw Error(ErrorKind::InvalidParameter, "t_end must be positive");
  if (!(t_sample > 0.0) || t_sample > t_end)
    throw Error(ErrorKind::InvalidParameter, "t_sample must lie in (0, t_end]");
  if (!(crit_h_min > 0.0 && crit_h_max > crit_h_min) || crit_points_per_decade < 1)
    throw Error(ErrorKind::InvalidParameter, "step criterion grid is malformed");
  if (radii.empty()) throw Error(ErrorKind::InvalidParameter, "radii must not be empty");
  for (double r : radii)
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::InvalidParameter, "radii must be positive");
  if (!(ref_divisor >= 1.0) || !(ref_tol > 0.0) || ref_refinements < 0)
    throw Error(ErrorKind::InvalidParameter, "reference settings are malformed");
  const Vector x = initial_state();
  if (x.size() != make_problem().dim) throw Error(ErrorKind::InvalidParameter, "x0 has the wrong dimension");
}

// ---------------------------------------------------------------------------

namespace {

Vector rk4_run(const OdeProblem& problem, ConstVec x0, double h, long n) {
  static const ButcherTableau rk4 = rk4_classic();
  Vector x(x0.begin(), x0.end());
  for (long k = 0; k < n; ++k) x = rk_step(rk4, problem, x, h);
  return x;
}

double relative_change(ConstVec a, ConstVec b) {
  const double scale_ref = norm(b);
  const double diff = norm(sub(a, b));
  return scale_ref > 0.0 ? diff / scale_ref : diff;
}

}  // namespace

ReferenceResult reference_solution(const OdeProblem& problem, ConstVec x0, double t_end,
                                   double h_ref, double tol, int max_refinements) {
  if (!(t_end >= 0.0)) throw Error(ErrorKind::InvalidParameter, "reference_solution: t_end must be >= 0");
  if (!(h_ref > 0.0)) throw Error(ErrorKind::InvalidParameter, "reference_solution: h_ref must be positive");
  ReferenceResult res;
  if (t_end == 0.0) {
    res.state.assign(x0.begin(), x0.end());
    return res;
  }
  long n = std::max(1L, static_cast<long>(std::ceil(t_end / h_ref - 1e-9)));
  Vector coarse = rk4_run(problem, x0, t_end / static_cast<double>(n), n);
  for (int r = 0; r <= max_refinements; ++r) {
    n *= 2;
    Vector fine = rk4_run(problem, x0, t_end / static_cast<double>(n), n);
    res.richardson_change = relative_change(coarse, fine);
    res.h_ref = t_end / static_cast<double>(n);
    res.refinements = r;
    if (res.richardson_change <= tol) {
      res.state = std::move(fine);
      return res;
    }
    coarse = std::move(fine);
  }
  throw Error(ErrorKind::ReferenceUnresolved,
              "reference solution did not settle under step halving", res.richardson_change);
}

std::vector<Vector> reference_trajectory(const OdeProblem& problem, ConstVec x0, double h_out,
                                         long n_out, int substeps) {
  if (!(h_out > 0.0) || n_out < 0 || substeps < 1)
    throw Error(ErrorKind::InvalidParameter, "reference_trajectory: malformed grid");
  std::vector<Vector> out;
  out.reserve(n_out + 1);
  out.emplace_back(x0.begin(), x0.end());
  const double h = h_out / substeps;
  for (long k = 0; k < n_out; ++k) out.push_back(rk4_run(problem, out.back(), h, substeps));
  return out;
}

// ---------------------------------------------------------------------------

OrderFit fit_loglog(ConstVec h, ConstVec errors) {
  if (h.size() != errors.size() || h.size() < 2)
    throw Error(ErrorKind::InvalidParameter, "fit_loglog needs at least two (h, error) pairs");
  const std::size_t n = h.size();
  Vector lx(n), ly(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(h[k] > 0.0) || !(errors[k] > 0.0))
      throw Error(ErrorKind::InvalidParameter, "fit_loglog needs positive h and errors");
    lx[k] = std::log10(h[k]);
    ly[k] = std::log10(errors[k]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += lx[k];
    my += ly[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
  }
  if (sxx == 0.0) throw Error(ErrorKind::InvalidParameter, "fit_loglog needs distinct step sizes");

  OrderFit fit;
  fit.h.assign(h.begin(), h.end());
  fit.errors.assign(errors.begin(), errors.end());
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.residuals.resize(n);
  fit.reliable = true;
  for (std::size_t k = 0; k < n; ++k) {
    fit.residuals[k] = ly[k] - (fit.intercept + fit.slope * lx[k]);
    if (std::abs(fit.residuals[k]) > 0.3) fit.reliable = false;
  }
  return fit;
}

namespace {

std::vector<MethodSpec> methods_or(const ExperimentConfig& cfg, std::initializer_list<MethodKind> defaults) {
  if (!cfg.methods.empty()) return cfg.methods;
  std::vector<MethodSpec> out;
  for (MethodKind k : defaults) out.push_back(default_method(k));
  return out;
}

std::vector<StepSize> grid_or_default(const ExperimentConfig& cfg) {
  if (!cfg.h_grid.empty()) return cfg.h_grid;
  return {{0.1, 1.0}, {0.05, 1.0}, {0.025, 1.0}, {0.0125, 1.0}};
}

std::string describe(const std::exception_ptr& e) {
  try {
    std::rethrow_exception(e);
  } catch (const std::exception& ex) {
    return ex.what();
  } catch (...) {
    return "unknown error";
  }
}

OrderStudy run_grid(const ExperimentConfig& cfg, std::size_t min_points) {
  cfg.validate();
  const std::vector<StepSize> grid = grid_or_default(cfg);
  if (grid.size() < min_points)
    throw Error(ErrorKind::InvalidParameter,
                "order study needs at least " + std::to_string(min_points) + " grid points");
  const std::vector<MethodSpec> methods =
      methods_or(cfg, {MethodKind::DgLinear, MethodKind::Projection, MethodKind::Rk});
  const OdeProblem problem = cfg.make_problem();
  const Vector x0 = cfg.initial_state();

  OrderStudy study;
  study.reference = reference_solution(problem, x0, cfg.t_sample, grid.back().value() / cfg.ref_divisor,
                                       cfg.ref_tol, cfg.ref_refinements);

  const std::size_t per_method = grid.size();
  auto task = [&](std::size_t idx) {
    const MethodSpec& m = methods[idx / per_method];
    const StepSize& hs = grid[idx % per_method];
    OrderRun run;
    run.h = hs.value();
    run.steps = hs.steps_to(cfg.t_sample);
    const auto start = std::chrono::steady_clock::now();
    const Trajectory t = integrate(m.stepper, problem, x0, run.h, static_cast<double>(run.steps) * run.h);
    run.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    run.error = norm(sub(t.states.back(), study.reference.state));
    run.cost = t.cost;
    return run;
  };
  const auto slots = run_sweep<OrderRun>(methods.size() * per_method, task, cfg.execution);

  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    MethodOrderResult res;
    res.label = methods[mi].label;
    Vector hs, es;
    for (std::size_t gi = 0; gi < per_method; ++gi) {
      const auto& slot = slots[mi * per_method + gi];
      if (slot.ok()) {
        res.runs.push_back(*slot.value);
        if (*slot.value->error > 0.0) {
          hs.push_back(slot.value->h);
          es.push_back(*slot.value->error);
        }
      } else {
        OrderRun failed;
        failed.h = grid[gi].value();
        failed.steps = grid[gi].steps_to(cfg.t_sample);
        failed.failure = describe(slot.error);
        res.runs.push_back(failed);
        res.partial = true;
      }
    }
    if (hs.size() >= 2) {
      res.fit = fit_loglog(hs, es);
    } else {
      res.partial = true;
      res.fit.slope = std::numeric_limits<double>::quiet_NaN();
    }
    if (hs.size() < per_method) res.partial = true;
    study.methods.push_back(std::move(res));
  }
  return study;
}

}  // namespace

OrderStudy order_study(const ExperimentConfig& cfg) { return run_grid(cfg, 4); }

OrderStudy efficiency_study(const ExperimentConfig& cfg) { return run_grid(cfg, 1); }

// ---------------------------------------------------------------------------

ConservationStudy conservation_study(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::vector<MethodSpec> methods =
      methods_or(cfg, {MethodKind::Rk, MethodKind::Projection, MethodKind::DgLinear});
  const OdeProblem problem = cfg.make_problem();
  const Vector x0 = cfg.initial_state();
  const long n = cfg.h.steps_to(cfg.t_end);
  const double h = cfg.h.value();
  const double i0 = eval_integral(problem, x0);

  const std::vector<Vector> reference =
      reference_trajectory(problem, x0, h, n, static_cast<int>(std::lround(cfg.ref_divisor)));

  auto task = [&](std::size_t idx) {
    ConservationSeries s;
    s.label = methods[idx].label;
    s.trajectory = integrate(methods[idx].stepper, problem, x0, h, static_cast<double>(n) * h);
    const std::size_t nodes = s.trajectory.states.size();
    s.abs_drift.resize(nodes);
    s.solution_error.resize(nodes);
    for (std::size_t k = 0; k < nodes; ++k) {
      s.abs_drift[k] = std::abs(s.trajectory.integral_values[k] - i0);
      s.solution_error[k] = norm(sub(s.trajectory.states[k], reference[k]));
      s.max_rel_drift = std::max(s.max_rel_drift, s.abs_drift[k] / (1.0 + std::abs(i0)));
    }
    return s;
  };
  const auto slots = run_sweep<ConservationSeries>(methods.size(), task, cfg.execution);
  ConservationStudy study;
  for (const auto& slot : slots) study.methods.push_back(slot.get());
  return study;
}

// ---------------------------------------------------------------------------

std::string_view to_string(StepStatus s) noexcept {
  switch (s) {
    case StepStatus::Accepted: return "accepted";
    case StepStatus::Rejected: return "rejected";
    case StepStatus::Critical: return "critical";
    case StepStatus::Singular: return "singular";
  }
  return "unknown";
}

namespace {

Vector log_grid(double lo, double hi, int per_decade) {
  const double decades = std::log10(hi / lo);
  const long count = std::lround(decades * per_decade);
  Vector g(count + 1);
  for (long k = 0; k <= count; ++k) g[k] = lo * std::pow(10.0, static_cast<double>(k) / per_decade);
  return g;
}

const MethodSpec* find_method(const std::vector<MethodSpec>& methods, MethodKind kind) {
  for (const auto& m : methods)
    if (m.stepper.kind == kind) return &m;
  return nullptr;
}

}  // namespace

StepCriterionStudy stepsize_criterion_study(const ExperimentConfig& cfg) {
  cfg.validate();
  const MethodSpec* configured = find_method(cfg.methods, MethodKind::DgLinear);
  const MethodSpec method = configured ? *configured : default_method(MethodKind::DgLinear);
  const DgMethodConfig& dg = method.stepper.dg;
  const OdeProblem problem = cfg.make_problem();
  const Vector base = cfg.initial_state();
  const Vector hs = log_grid(cfg.crit_h_min, cfg.crit_h_max, cfg.crit_points_per_decade);

  auto task = [&](std::size_t idx) {
    StepCriterionRow row;
    row.radius = cfg.radii[idx / hs.size()];
    row.h = hs[idx % hs.size()];
    const Vector x = scale(row.radius, base);
    const Vector grad = eval_gradient(problem, x);
    Vector xp;
    if (dg.critical.is_critical(x, grad)) {
      row.status = StepStatus::Critical;
      xp = dg_step_linearly_implicit(dg, problem, x, row.h).x_new;
    } else {
      const LinearStepSystem sys = linear_step_system(dg, problem, x, row.h);
      row.denom = sys.denom;
      row.denom_ratio = sys.denom / sys.grad_norm2;
      row.cond = condition_number(sys.lhs);
      row.status = sys.denom > dg.skew.denom_floor * sys.grad_norm2 ? StepStatus::Accepted
                                                                    : StepStatus::Rejected;
      try {
        xp = lu_solve(sys.lhs, sys.rhs);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::SingularStep) throw;
        row.status = StepStatus::Singular;
        return row;
      }
    }
    try {
      const ReferenceResult ref = reference_solution(problem, x, row.h, std::min(row.h, 1.0) / cfg.ref_divisor,
                                                     cfg.ref_tol, cfg.ref_refinements);
      row.error = norm(sub(xp, ref.state));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ReferenceUnresolved) throw;
    }
    return row;
  };
  const auto slots = run_sweep<StepCriterionRow>(cfg.radii.size() * hs.size(), task, cfg.execution);

  StepCriterionStudy study;
  for (const auto& slot : slots) study.rows.push_back(slot.get());
  for (std::size_t r = 0; r < cfg.radii.size(); ++r) {
    std::optional<double> largest;
    for (std::size_t k = 0; k < hs.size(); ++k) {
      const auto& row = study.rows[r * hs.size() + k];
      if (row.status != StepStatus::Accepted) break;
      largest = row.h;
    }
    study.thresholds.emplace_back(cfg.radii[r], largest);
  }
  return study;
}

// ---------------------------------------------------------------------------

PhaseStudy phase_trajectory_export(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<MethodSpec> methods = cfg.methods;
  if (methods.empty()) {
    methods.push_back(default_method(MethodKind::Rk));
    MethodSpec dg = default_method(MethodKind::DgLinear);
    dg.stepper.dg.skew.denom_floor = 0.25;
    methods.push_back(dg);
  }
  const std::vector<StepSize> hs =
      cfg.phase_h.empty() ? std::vector<StepSize>{{1.0, 2.0}, {100.0, 92.0}} : cfg.phase_h;
  const OdeProblem problem = cfg.make_problem();
  const Vector x0 = cfg.initial_state();

  auto task = [&](std::size_t idx) {
    PhaseRun run;
    run.label = methods[idx / hs.size()].label;
    run.h = hs[idx % hs.size()];
    const long n = run.h.steps_to(cfg.t_end);
    try {
      run.trajectory = integrate(methods[idx / hs.size()].stepper, problem, x0, run.h.value(),
                                 static_cast<double>(n) * run.h.value());
    } catch (const Error& e) {
      run.failure = e.what();
    }
    return run;
  };
  const auto slots = run_sweep<PhaseRun>(methods.size() * hs.size(), task, cfg.execution);

  PhaseStudy study;
  for (const auto& slot : slots) study.runs.push_back(slot.get());

  // The reference orbit is sampled every 0.05 time units with 10 RK4
  // substeps per sample.
  const double h_out = 0.05;
  const long n_out = std::lround(cfg.t_end / h_out);
  study.reference_orbit = reference_trajectory(problem, x0, h_out, n_out, 10);
  study.reference_times.resize(n_out + 1);
  for (long k = 0; k <= n_out; ++k) study.reference_times[k] = static_cast<double>(k) * h_out;
  return study;
}

Trajectory simulate(const ExperimentConfig& cfg, const MethodSpec& method) {
  cfg.validate();
  const OdeProblem problem = cfg.make_problem();
  const long n = cfg.h.steps_to(cfg.t_end);
  return integrate(method.stepper, problem, cfg.initial_state(), cfg.h.value(),
                   static_cast<double>(n) * cfg.h.value());
}

// ---------------------------------------------------------------------------

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_real(*v) : "nan"; }

class CsvFile {
 public:
  CsvFile(const ExperimentConfig& cfg, const std::string& name, std::vector<std::filesystem::path>& written)
      : path_(cfg.out_dir / name) {
    std::filesystem::create_directories(cfg.out_dir);
    out_.open(path_);
    if (!out_) throw Error(ErrorKind::InvalidParameter, "cannot open " + path_.string() + " for writing");
    written.push_back(path_);
  }

  CsvFile& row(std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto& c : cells) {
      if (!first) out_ << ',';
      out_ << c;
      first = false;
    }
    out_ << '\n';
    return *this;
  }
  std::ofstream& stream() { return out_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

std::string state_header(std::size_t d) {
  std::string s;
  for (std::size_t k = 0; k < d; ++k) s += (k ? ",x" : "x") + std::to_string(k + 1);
  return s;
}

std::string state_cells(ConstVec x) {
  std::string s;
  for (std::size_t k = 0; k < x.size(); ++k) s += (k ? "," : "") + format_real(x[k]);
  return s;
}

std::string fmt_long(long v) { return std::to_string(v); }

}  // namespace

std::vector<std::filesystem::path> write_simulate_csv(const ExperimentConfig& cfg,
                                                      const MethodSpec& method, const Trajectory& t) {
  std::vector<std::filesystem::path> written;
  CsvFile f(cfg, "simulate_" + method.label + ".csv", written);
  const std::size_t d = t.states.front().size();
  f.row({"t", state_header(d), "I", "abs_drift"});
  const double i0 = t.integral_values.front();
  for (std::size_t k = 0; k < t.states.size(); ++k)
    f.row({format_real(t.times[k]), state_cells(t.states[k]), format_real(t.integral_values[k]),
           format_real(std::abs(t.integral_values[k] - i0))});
  return written;
}

std::vector<std::filesystem::path> write_order_csv(const ExperimentConfig& cfg, const OrderStudy& s) {
  std::vector<std::filesystem::path> written;
  for (const auto& m : s.methods) {
    CsvFile f(cfg, "order_" + m.label + ".csv", written);
    f.row({"h", "steps", "error", "log10_h", "log10_error", "fit_residual", "status"});
    std::size_t fit_idx = 0;
    for (const auto& r : m.runs) {
      const bool in_fit = r.error && *r.error > 0.0;
      const std::string residual =
          in_fit && fit_idx < m.fit.residuals.size() ? format_real(m.fit.residuals[fit_idx]) : "nan";
      if (in_fit) ++fit_idx;
      f.row({format_real(r.h), fmt_long(r.steps), opt(r.error), format_real(std::log10(r.h)),
             r.error ? format_real(std::log10(*r.error)) : "nan", residual, r.failure.empty() ? "ok" : "failed"});
    }
  }
  CsvFile summary(cfg, "order_summary.csv", written);
  summary.row({"method", "slope", "intercept", "max_abs_residual", "reliable", "partial", "reference_h",
               "reference_change"});
  for (const auto& m : s.methods) {
    double worst = 0.0;
    for (double r : m.fit.residuals) worst = std::max(worst, std::abs(r));
    summary.row({m.label, format_real(m.fit.slope), format_real(m.fit.intercept), format_real(worst),
                 m.fit.reliable ? "1" : "0", m.partial ? "1" : "0", format_real(s.reference.h_ref),
                 format_real(s.reference.richardson_change)});
  }
  return written;
}

std::vector<std::filesystem::path> write_efficiency_csv(const ExperimentConfig& cfg,
                                                        const OrderStudy& s) {
  std::vector<std::filesystem::path> written;
  for (const auto& m : s.methods) {
    CsvFile f(cfg, "efficiency_" + m.label + ".csv", written);
    f.row({"h", "steps", "error", "wall_seconds", "f_evals", "i_evals", "linear_solves", "newton_iters"});
    for (const auto& r : m.runs)
      f.row({format_real(r.h), fmt_long(r.steps), opt(r.error), format_real(r.wall_seconds),
             fmt_long(r.cost.f_evals), fmt_long(r.cost.i_evals()), fmt_long(r.cost.linear_solves),
             fmt_long(r.cost.newton_iters)});
  }
  return written;
}

std::vector<std::filesystem::path> write_conservation_csv(const ExperimentConfig& cfg,
                                                          const ConservationStudy& s) {
  std::vector<std::filesystem::path> written;
  for (const auto& m : s.methods) {
    CsvFile f(cfg, "conserve_" + m.label + ".csv", written);
    f.row({"t", "I", "abs_drift", "rel_drift", "solution_error"});
    const double i0 = m.trajectory.integral_values.front();
    for (std::size_t k = 0; k < m.trajectory.times.size(); ++k)
      f.row({format_real(m.trajectory.times[k]), format_real(m.trajectory.integral_values[k]),
             format_real(m.abs_drift[k]), format_real(m.abs_drift[k] / (1.0 + std::abs(i0))),
             format_real(m.solution_error[k])});
  }
  return written;
}

std::vector<std::filesystem::path> write_stepcrit_csv(const ExperimentConfig& cfg,
                                                      const StepCriterionStudy& s) {
  std::vector<std::filesystem::path> written;
  CsvFile f(cfg, "stepcrit_dg_linear.csv", written);
  f.row({"R", "h", "status", "denom", "denom_ratio", "cond", "error"});
  for (const auto& r : s.rows)
    f.row({format_real(r.radius), format_real(r.h), std::string(to_string(r.status)), opt(r.denom),
           opt(r.denom_ratio), opt(r.cond), opt(r.error)});
  CsvFile t(cfg, "stepcrit_thresholds.csv", written);
  t.row({"R", "largest_h"});
  for (const auto& [radius, h] : s.thresholds) t.row({format_real(radius), opt(h)});
  return written;
}

std::vector<std::filesystem::path> write_phase_csv(const ExperimentConfig& cfg, const PhaseStudy& s) {
  std::vector<std::filesystem::path> written;
  std::vector<std::string> labels;
  for (const auto& r : s.runs)
    if (std::find(labels.begin(), labels.end(), r.label) == labels.end()) labels.push_back(r.label);
  for (const auto& label : labels) {
    CsvFile f(cfg, "phase_" + label + ".csv", written);
    bool header = false;
    for (const auto& r : s.runs) {
      if (r.label != label || !r.trajectory) continue;
      if (!header) {
        f.row({"h", "t", state_header(r.trajectory->states.front().size())});
        header = true;
      }
      for (std::size_t k = 0; k < r.trajectory->states.size(); ++k)
        f.row({format_real(r.h.value()), format_real(r.trajectory->times[k]),
               state_cells(r.trajectory->states[k])});
    }
  }
  CsvFile ref(cfg, "phase_reference.csv", written);
  ref.row({"t", state_header(s.reference_orbit.front().size())});
  for (std::size_t k = 0; k < s.reference_orbit.size(); ++k)
    ref.row({format_real(s.reference_times[k]), state_cells(s.reference_orbit[k])});
  return written;
}

}  // namespace dgm
