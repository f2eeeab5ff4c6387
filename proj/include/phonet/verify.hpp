#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "phonet/partition.hpp"
#include "phonet/riccati_net.hpp"

namespace phonet {

// Outcome of the constant-input convergence check: how close the final
// weight vector gets to the equilibrium, and the fitted exponential rate
// against the predicted sqrt(alpha*beta).
struct ConvergenceReport {
    double final_error = 0.0;
    double fitted_rate = 0.0;          // slope of log-error vs time
    double rate_relative_error = 0.0;  // |(-fitted_rate) - sqrt(ab)| / sqrt(ab)
    std::size_t fit_points = 0;        // samples inside the fit window
    std::size_t steps = 0;
    double dt = 0.0;
};

// Outcome of the perturbed-input stability check against the bound
// |v_i(t)| <= C*delta for t >= T, with C = (16/gamma)*sqrt(alpha/beta).
struct StabilityReport {
    double delta_used = 0.0;
    double gamma = 0.0;
    double c_theoretical = 0.0;
    double sup_deviation = 0.0;
    double settle_time = 0.0; // T: first entry of the unperturbed run
                              // into a delta-ball of the fixed point
    bool bound_satisfied = false;
    bool precondition_violated = false; // delta >= gamma/8
};

struct PerturbationSpec {
    enum class Kind { Sinusoidal, SmoothedNoise };
    Kind kind = Kind::Sinusoidal;
    double amplitude = 0.0; // sup-norm bound delta on ||y(t)||_2
    std::uint64_t seed = 0;
};

struct GammaCriterionReport {
    double gamma = 0.0;
    double threshold = 0.0;           // gamma / 8
    double perturbation_scale = 0.0;  // max atom radius
    double delta = 0.0;               // partition min central separation
    bool satisfied = false;
};

struct WindowPairStat {
    WindowKind window_a;
    WindowKind window_b;
    double max_distance = 0.0;  // over the corpus, channels 0..11 only
    double mean_distance = 0.0;
};

struct WindowSensitivityReport {
    std::vector<WindowPairStat> pairs;
};

struct PreconditionViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Continuous perturbation y(t) with ||y(t)||_2 <= spec.amplitude for all t,
// deterministic in the seed.
std::function<Vec15(double)> make_perturbation(const PerturbationSpec& spec);

// Integrates the weight dynamics under constant input x_hat and reports
// final error and fitted exponential rate. The rate is a least-squares
// slope of log-error vs time over the window where error is in
// [1e-6, 1e-1]. m0 defaults to the uniform positive vector.
ConvergenceReport check_theorem1(const PatternVector& x_hat,
                                 const NetworkConfig& config,
                                 std::size_t steps,
                                 std::optional<Vec15> m0 = std::nullopt);

// Integrates twice (with and without the perturbation), measures the
// per-component deviation past the settle time, and checks it against
// C*delta. horizon_steps = 0 picks 10x the settle time. gamma defaults to
// the min component of x_hat when not given.
StabilityReport check_theorem5(const PatternVector& x_hat,
                               const PerturbationSpec& pert,
                               const NetworkConfig& config,
                               std::size_t horizon_steps = 0,
                               std::optional<double> gamma = std::nullopt);

// Compares the partition's empirical perturbation scale (max atom radius)
// against gamma/8.
GammaCriterionReport check_gamma_criterion(const VoronoiPartition& partition,
                                           double gamma);

// For every signal and unordered window pair, the Euclidean distance
// between the extracted patterns restricted to channels 0..11 (below
// 3 kHz). Report only, no verdict.
WindowSensitivityReport
window_sensitivity(const std::vector<std::pair<Signal, std::string>>& corpus,
                   const std::vector<WindowKind>& windows,
                   std::size_t stride = 256);

std::string convergence_report_to_json(const ConvergenceReport& rep);
std::string stability_report_to_json(const StabilityReport& rep);
std::string gamma_criterion_report_to_json(const GammaCriterionReport& rep);
std::string window_report_to_json(const WindowSensitivityReport& rep);

} // namespace phonet
