#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "phonet/features.hpp"
#include "phonet/vec.hpp"

namespace phonet {

struct NetworkConfig {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 0.9e-4; // component floor required of training inputs
    double dt = 0.1;
    std::size_t n_neurons = 8;
};

struct NeuronWeights {
    Vec15 m{};
};

struct Network {
    NetworkConfig config;
    std::vector<NeuronWeights> neurons;
    std::vector<std::optional<std::string>> labels; // set when a neuron wins
};

struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyNetwork : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Divergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GammaViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Right-hand side of the weight dynamics: alpha*x - beta*m*<m,x>.
Vec15 riccati_rhs(const Vec15& m, const PatternVector& x, double alpha,
                  double beta);

// The equilibrium sqrt(alpha/beta) * x_hat of the dynamics under constant
// unit-norm input.
Vec15 fixed_point(const PatternVector& x_hat, double alpha, double beta);

// Explicit Euler from m0; input(t) supplies the (possibly time-varying)
// pattern. Returns the full trajectory, m0 included (steps+1 entries).
// Throws Divergence if any component goes non-finite.
std::vector<Vec15> integrate(const Vec15& m0,
                             const std::function<PatternVector(double)>& input,
                             std::size_t steps, const NetworkConfig& config);

// Nearest neuron by Euclidean distance; ties go to the lowest index.
// Returns (index, distance).
std::pair<std::size_t, double> winner(const Network& network,
                                      const PatternVector& x);

// Neuron output eta = <m, x>.
double output(const Vec15& m, const PatternVector& x);

// All weights at 1/sqrt(15), optionally jittered by up to `jitter`
// per component (seeded), kept strictly positive.
Network init_network(const NetworkConfig& config, std::uint64_t seed = 0,
                     double jitter = 0.0);

// Winner-take-all pass: for each pattern the winning neuron advances one
// Euler step with that pattern as input and inherits its label. Other
// neurons are untouched. Deterministic in stream order.
Network train(Network network,
              const std::vector<std::pair<PatternVector, std::string>>& stream);

// Model file round-trip (JSON, schema {config, neurons:[{m, label}]}).
std::string network_to_json(const Network& network);
Network network_from_json(const std::string& text);

} // namespace phonet
