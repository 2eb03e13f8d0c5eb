#pragma once

// Desk-scale versions of the rigid body studies: conservation over long
// times, order of accuracy, cost counters, the single-step size criterion
// near critical points, and phase-space trajectories.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dgm/integrators.hpp"
#include "dgm/problems.hpp"
#include "dgm/sweep.hpp"

namespace dgm {

/// Step size kept as numerator/denominator so values like 100/92 produce
/// exact step counts.
struct StepSize {
  double num = 1.0;
  double den = 1.0;

  double value() const noexcept { return num / den; }
  /// round(t_end / h) computed as round(t_end · den / num).
  long steps_to(double t_end) const;
  std::string str() const;
};

struct MethodSpec {
  std::string label;  // used in file names; defaults to the method name
  Stepper stepper;
};

/// Builds a method with the library defaults for the given kind.
MethodSpec default_method(MethodKind kind);

struct ExperimentConfig {
  // problem block
  std::string problem = "rigid_body_modified";
  double i1 = 2.0, i2 = 1.0, i3 = 2.0 / 3.0, alpha = 1.0;
  std::optional<Vector> x0;  // defaults to (cos 1.1, 0, sin 1.1)

  // method block(s); empty means "the study's default set"
  std::vector<MethodSpec> methods;

  // grid block
  StepSize h{1.0, 2.0};
  std::vector<StepSize> h_grid;  // strictly decreasing
  double t_end = 500.0;
  double t_sample = 100.0;
  Vector radii{1.0, 0.1, 0.01};
  double crit_h_min = 1e-4;
  double crit_h_max = 1e3;
  int crit_points_per_decade = 8;
  std::vector<StepSize> phase_h;

  // reference solution
  double ref_divisor = 100.0;  // h_ref = min(grid h) / ref_divisor
  double ref_tol = 1e-11;
  int ref_refinements = 3;

  // output block
  std::filesystem::path out_dir = "out";
  Execution execution = Execution::Parallel;
  unsigned seed = 1;

  OdeProblem make_problem() const;
  Vector initial_state() const;
  /// Throws InvalidParameter when the grid is not strictly decreasing,
  /// t_sample > t_end, or a step size is not positive.
  void validate() const;
};

// ---------------------------------------------------------------------------
// Reference solutions

struct ReferenceResult {
  Vector state;
  double h_ref = 0.0;
  double richardson_change = 0.0;  // relative change on the last halving
  int refinements = 0;
};

/// Classical RK4 from x0 to t_end with h_ref, halving h_ref until two
/// successive answers agree to `tol` relative; at most `max_refinements`
/// extra halvings, after which ReferenceUnresolved is thrown. The step is
/// adjusted down to t_end / ceil(t_end / h_ref) so the grid lands on t_end.
ReferenceResult reference_solution(const OdeProblem& problem, ConstVec x0, double t_end,
                                   double h_ref, double tol = 1e-11, int max_refinements = 3);

/// RK4 states at times k·h_out, k = 0..n_out, computed with `substeps` RK4
/// steps per output interval. No refinement check.
std::vector<Vector> reference_trajectory(const OdeProblem& problem, ConstVec x0, double h_out,
                                         long n_out, int substeps);

// ---------------------------------------------------------------------------
// Order study

struct OrderFit {
  Vector h;
  Vector errors;
  double slope = 0.0;
  double intercept = 0.0;  // log10 error at h = 1
  Vector residuals;        // per-point deviation in log10 units
  bool reliable = false;   // every |residual| ≤ 0.3
};

/// Least-squares fit of log10(error) against log10(h).
OrderFit fit_loglog(ConstVec h, ConstVec errors);

struct OrderRun {
  double h = 0.0;
  long steps = 0;
  std::optional<double> error;  // empty when the run failed
  std::string failure;
  Cost cost;
  double wall_seconds = 0.0;
};

struct MethodOrderResult {
  std::string label;
  std::vector<OrderRun> runs;
  OrderFit fit;  // over successful runs only
  bool partial = false;
};

struct OrderStudy {
  ReferenceResult reference;
  std::vector<MethodOrderResult> methods;
};

/// Default grid {0.1, 0.05, 0.025, 0.0125}; default methods dg_linear,
/// projection, rk. Needs at least 4 grid points.
OrderStudy order_study(const ExperimentConfig& cfg);

/// Same runs reported as a cost table (efficiency view of the order study).
OrderStudy efficiency_study(const ExperimentConfig& cfg);

// ---------------------------------------------------------------------------
// Conservation study

struct ConservationSeries {
  std::string label;
  Trajectory trajectory;
  Vector abs_drift;       // |I(x_k) − I(x0)|
  Vector solution_error;  // |x_k − reference(t_k)|
  double max_rel_drift = 0.0;
};

struct ConservationStudy {
  std::vector<ConservationSeries> methods;
};

/// Defaults: rk, projection, dg_linear at h = 1/2 up to t_end = 500.
ConservationStudy conservation_study(const ExperimentConfig& cfg);

// ---------------------------------------------------------------------------
// Step-size criterion study

enum class StepStatus { Accepted, Rejected, Critical, Singular };
std::string_view to_string(StepStatus s) noexcept;

struct StepCriterionRow {
  double radius = 0.0;
  double h = 0.0;
  StepStatus status = StepStatus::Accepted;
  std::optional<double> denom;        // î·ĭ
  std::optional<double> denom_ratio;  // î·ĭ / |i(x)|²
  std::optional<double> cond;         // of Id − (h/2) S̃ M
  std::optional<double> error;        // |x′ − reference(h)|
};

struct StepCriterionStudy {
  std::vector<StepCriterionRow> rows;
  /// Per radius: largest grid h such that every grid h′ ≤ h keeps
  /// î·ĭ > floor·|i(x)|². Empty if even the smallest h fails or the point
  /// is critical.
  std::vector<std::pair<double, std::optional<double>>> thresholds;
};

/// Single dg_linear steps from x = R (cos 1.1, 0, sin 1.1) over a log grid
/// of h in [crit_h_min, crit_h_max].
StepCriterionStudy stepsize_criterion_study(const ExperimentConfig& cfg);

// ---------------------------------------------------------------------------
// Phase trajectories

struct PhaseRun {
  std::string label;
  StepSize h;
  std::optional<Trajectory> trajectory;
  std::string failure;
};

struct PhaseStudy {
  std::vector<PhaseRun> runs;
  Vector reference_times;
  std::vector<Vector> reference_orbit;
};

/// Defaults: h ∈ {1/2, 100/92}, t_end = 500, methods rk and dg_linear. The
/// default dg_linear uses denom_floor = 0.25 because at h = 100/92 the
/// denominator ratio dips below one half while staying positive.
PhaseStudy phase_trajectory_export(const ExperimentConfig& cfg);

/// Single-method run used by the `simulate` subcommand.
Trajectory simulate(const ExperimentConfig& cfg, const MethodSpec& method);

// ---------------------------------------------------------------------------
// CSV output (17 significant digits, header row, one file per
// (subcommand, method)). Each returns the files written.

std::vector<std::filesystem::path> write_simulate_csv(const ExperimentConfig& cfg,
                                                      const MethodSpec& method, const Trajectory& t);
std::vector<std::filesystem::path> write_order_csv(const ExperimentConfig& cfg, const OrderStudy& s);
std::vector<std::filesystem::path> write_efficiency_csv(const ExperimentConfig& cfg,
                                                        const OrderStudy& s);
std::vector<std::filesystem::path> write_conservation_csv(const ExperimentConfig& cfg,
                                                          const ConservationStudy& s);
std::vector<std::filesystem::path> write_stepcrit_csv(const ExperimentConfig& cfg,
                                                      const StepCriterionStudy& s);
std::vector<std::filesystem::path> write_phase_csv(const ExperimentConfig& cfg, const PhaseStudy& s);

/// Formats a real with 17 significant digits ("nan"/"inf" for non-finite).
std::string format_real(double v);

}  // namespace dgm
