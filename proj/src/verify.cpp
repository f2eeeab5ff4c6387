#include "phonet/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <json.hpp>

namespace phonet {

std::function<Vec15(double)> make_perturbation(const PerturbationSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    if (spec.kind == PerturbationSpec::Kind::Sinusoidal) {
        Vec15 amp, omega, phase;
        double amp_norm_sq = 0.0;
        for (std::size_t i = 0; i < kPatternDim; ++i) {
            amp[i] = 0.5 + 0.5 * unit(rng);
            omega[i] = 0.5 + 1.5 * unit(rng);
            phase[i] = 2.0 * std::numbers::pi * unit(rng);
            amp_norm_sq += amp[i] * amp[i];
        }
        // ||y(t)||_2 <= ||amp||_2 = amplitude, for all t
        const double scale = spec.amplitude / std::sqrt(amp_norm_sq);
        for (double& a : amp) a *= scale;
        return [amp, omega, phase](double t) {
            PatternVector y;
            for (std::size_t i = 0; i < kPatternDim; ++i)
                y.c[i] = amp[i] * std::sin(omega[i] * t + phase[i]);
            return y.c;
        };
    }

    // Smoothed noise: a low-order random Fourier series per component,
    // scaled so the per-component amplitude bounds have 2-norm = amplitude.
    constexpr std::size_t kTerms = 4;
    const double base = 0.3 + 0.7 * unit(rng);
    std::array<std::array<double, kTerms>, kPatternDim> cos_c{}, sin_c{};
    Vec15 bound{};
    double bound_norm_sq = 0.0;
    for (std::size_t i = 0; i < kPatternDim; ++i) {
        for (std::size_t k = 0; k < kTerms; ++k) {
            cos_c[i][k] = 2.0 * unit(rng) - 1.0;
            sin_c[i][k] = 2.0 * unit(rng) - 1.0;
            bound[i] += std::sqrt(cos_c[i][k] * cos_c[i][k] +
                                  sin_c[i][k] * sin_c[i][k]);
        }
        bound_norm_sq += bound[i] * bound[i];
    }
    const double scale = spec.amplitude / std::sqrt(bound_norm_sq);
    for (std::size_t i = 0; i < kPatternDim; ++i)
        for (std::size_t k = 0; k < kTerms; ++k) {
            cos_c[i][k] *= scale;
            sin_c[i][k] *= scale;
        }
    return [cos_c, sin_c, base](double t) {
        Vec15 y{};
        for (std::size_t i = 0; i < kPatternDim; ++i)
            for (std::size_t k = 0; k < kTerms; ++k) {
                const double w = base * double(k + 1);
                y[i] += cos_c[i][k] * std::cos(w * t) +
                        sin_c[i][k] * std::sin(w * t);
            }
        return y;
    };
}

namespace {

Vec15 uniform_positive() {
    Vec15 m;
    m.fill(1.0 / std::sqrt(double(kPatternDim)));
    return m;
}

} // namespace

ConvergenceReport check_theorem1(const PatternVector& x_hat,
                                 const NetworkConfig& config,
                                 std::size_t steps, std::optional<Vec15> m0) {
    const Vec15 start = m0 ? *m0 : uniform_positive();
    const Vec15 target = fixed_point(x_hat, config.alpha, config.beta);
    const auto traj =
        integrate(start, [&](double) { return x_hat; }, steps, config);

    ConvergenceReport rep;
    rep.steps = steps;
    rep.dt = config.dt;
    rep.final_error = distance(traj.back(), target);

    // least-squares slope of log-error vs time, restricted to the window
    // where the error is clear of both the transient and the fp floor
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const double e = distance(traj[k], target);
        if (e < 1e-6 || e > 1e-1) continue;
        const double t = double(k) * config.dt;
        const double le = std::log(e);
        sx += t;
        sy += le;
        sxx += t * t;
        sxy += t * le;
        ++n;
    }
    rep.fit_points = n;
    const double rate_expected = std::sqrt(config.alpha * config.beta);
    if (n >= 2 && sxx * double(n) - sx * sx > 0.0) {
        rep.fitted_rate = (double(n) * sxy - sx * sy) /
                          (double(n) * sxx - sx * sx);
        rep.rate_relative_error =
            std::abs(-rep.fitted_rate - rate_expected) / rate_expected;
    } else {
        rep.fitted_rate = 0.0;
        rep.rate_relative_error =
            std::numeric_limits<double>::quiet_NaN();
    }
    return rep;
}

StabilityReport check_theorem5(const PatternVector& x_hat,
                               const PerturbationSpec& pert,
                               const NetworkConfig& config,
                               std::size_t horizon_steps,
                               std::optional<double> gamma) {
    StabilityReport rep;
    rep.delta_used = pert.amplitude;
    double min_comp = std::numeric_limits<double>::infinity();
    for (double c : x_hat.c) min_comp = std::min(min_comp, c);
    rep.gamma = gamma ? *gamma : min_comp;
    if (rep.gamma <= 0.0 || min_comp < rep.gamma - 1e-15)
        throw PreconditionViolated("x_hat has a component below gamma");
    rep.precondition_violated = !(pert.amplitude < rep.gamma / 8.0);
    rep.c_theoretical =
        16.0 / rep.gamma * std::sqrt(config.alpha / config.beta);

    const Vec15 m0 = uniform_positive();
    const Vec15 target = fixed_point(x_hat, config.alpha, config.beta);

    // settle time T: first entry of the unperturbed solution into a
    // delta-ball of the fixed point
    constexpr std::size_t kMaxSettleSteps = 2'000'000;
    std::size_t settle_step = 0;
    {
        Vec15 m = m0;
        while (distance(m, target) >= std::max(pert.amplitude, 1e-12)) {
            const Vec15 d = riccati_rhs(m, x_hat, config.alpha, config.beta);
            for (std::size_t i = 0; i < kPatternDim; ++i)
                m[i] += config.dt * d[i];
            if (++settle_step > kMaxSettleSteps)
                throw Divergence("unperturbed run never settled");
        }
    }
    rep.settle_time = double(settle_step) * config.dt;

    const std::size_t total_steps =
        horizon_steps > 0 ? horizon_steps
                          : std::max<std::size_t>(settle_step * 10, 100);

    const auto y = make_perturbation(pert);
    const auto unperturbed =
        integrate(m0, [&](double) { return x_hat; }, total_steps, config);
    const auto perturbed = integrate(
        m0,
        [&](double t) {
            PatternVector x = x_hat;
            const Vec15 p = y(t);
            for (std::size_t i = 0; i < kPatternDim; ++i) x.c[i] += p[i];
            return x;
        },
        total_steps, config);

    for (std::size_t k = settle_step; k <= total_steps; ++k)
        for (std::size_t i = 0; i < kPatternDim; ++i)
            rep.sup_deviation =
                std::max(rep.sup_deviation,
                         std::abs(perturbed[k][i] - unperturbed[k][i]));

    rep.bound_satisfied =
        rep.sup_deviation <= rep.c_theoretical * rep.delta_used;
    return rep;
}

GammaCriterionReport check_gamma_criterion(const VoronoiPartition& partition,
                                           double gamma) {
    const SeparationReport sep = check_separation(partition, gamma);
    GammaCriterionReport rep;
    rep.gamma = gamma;
    rep.threshold = sep.threshold;
    rep.perturbation_scale = sep.perturbation_scale;
    rep.delta = partition.delta;
    rep.satisfied = sep.satisfied;
    return rep;
}

WindowSensitivityReport
window_sensitivity(const std::vector<std::pair<Signal, std::string>>& corpus,
                   const std::vector<WindowKind>& windows,
                   std::size_t stride) {
    if (corpus.empty()) throw EmptyInput("corpus is empty");

    // patterns[w][s]: pattern of signal s under window w
    std::vector<std::vector<PatternVector>> patterns(windows.size());
    for (std::size_t w = 0; w < windows.size(); ++w)
        for (const auto& [signal, label] : corpus) {
            (void)label;
            patterns[w].push_back(
                extract_pattern(signal, {0, signal.samples.size()},
                                windows[w], stride));
        }

    WindowSensitivityReport rep;
    for (std::size_t a = 0; a < windows.size(); ++a)
        for (std::size_t b = a + 1; b < windows.size(); ++b) {
            WindowPairStat stat;
            stat.window_a = windows[a];
            stat.window_b = windows[b];
            double sum = 0.0;
            for (std::size_t s = 0; s < corpus.size(); ++s) {
                double d2 = 0.0;
                for (std::size_t ch = 0; ch < 12; ++ch) {
                    const double d =
                        patterns[a][s].c[ch] - patterns[b][s].c[ch];
                    d2 += d * d;
                }
                const double d = std::sqrt(d2);
                stat.max_distance = std::max(stat.max_distance, d);
                sum += d;
            }
            stat.mean_distance = sum / double(corpus.size());
            rep.pairs.push_back(stat);
        }
    return rep;
}

std::string convergence_report_to_json(const ConvergenceReport& rep) {
    nlohmann::json j = {{"theorem", 1},
                        {"final_error", rep.final_error},
                        {"fitted_rate", rep.fitted_rate},
                        {"rate_relative_error", rep.rate_relative_error},
                        {"fit_points", rep.fit_points},
                        {"steps", rep.steps},
                        {"dt", rep.dt}};
    return j.dump(2);
}

std::string stability_report_to_json(const StabilityReport& rep) {
    nlohmann::json j = {{"theorem", 5},
                        {"delta", rep.delta_used},
                        {"gamma", rep.gamma},
                        {"C", rep.c_theoretical},
                        {"sup_deviation", rep.sup_deviation},
                        {"settle_time", rep.settle_time},
                        {"bound_satisfied", rep.bound_satisfied},
                        {"precondition_violated", rep.precondition_violated}};
    return j.dump(2);
}

std::string gamma_criterion_report_to_json(const GammaCriterionReport& rep) {
    nlohmann::json j = {{"theorem", 3},
                        {"gamma", rep.gamma},
                        {"threshold", rep.threshold},
                        {"perturbation_scale", rep.perturbation_scale},
                        {"delta", rep.delta},
                        {"verdict", rep.satisfied ? "satisfied" : "violated"}};
    return j.dump(2);
}

std::string window_report_to_json(const WindowSensitivityReport& rep) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : rep.pairs)
        pairs.push_back({{"window_a", window_name(p.window_a)},
                         {"window_b", window_name(p.window_b)},
                         {"max_distance", p.max_distance},
                         {"mean_distance", p.mean_distance}});
    return nlohmann::json{{"check", "window_sensitivity"}, {"pairs", pairs}}
        .dump(2);
}

} // namespace phonet
