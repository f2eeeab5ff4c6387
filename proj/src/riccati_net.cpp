#include "phonet/riccati_net.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <json.hpp>

namespace phonet {

Vec15 riccati_rhs(const Vec15& m, const PatternVector& x, double alpha,
                  double beta) {
    const double mx = dot(m, x.c);
    Vec15 d;
    for (std::size_t i = 0; i < kPatternDim; ++i)
        d[i] = alpha * x.c[i] - beta * m[i] * mx;
    return d;
}

Vec15 fixed_point(const PatternVector& x_hat, double alpha, double beta) {
    const double scale = std::sqrt(alpha / beta);
    Vec15 m;
    for (std::size_t i = 0; i < kPatternDim; ++i) m[i] = scale * x_hat.c[i];
    return m;
}

std::vector<Vec15> integrate(const Vec15& m0,
                             const std::function<PatternVector(double)>& input,
                             std::size_t steps, const NetworkConfig& config) {
    if (steps < 1) throw std::invalid_argument("steps must be >= 1");
    std::vector<Vec15> traj;
    traj.reserve(steps + 1);
    traj.push_back(m0);
    Vec15 m = m0;
    for (std::size_t k = 0; k < steps; ++k) {
        const Vec15 d =
            riccati_rhs(m, input(double(k) * config.dt), config.alpha,
                        config.beta);
        for (std::size_t i = 0; i < kPatternDim; ++i) {
            m[i] += config.dt * d[i];
            if (!std::isfinite(m[i]))
                throw Divergence("trajectory diverged at step " +
                                 std::to_string(k) + " (dt too large?)");
        }
        traj.push_back(m);
    }
    return traj;
}

std::pair<std::size_t, double> winner(const Network& network,
                                      const PatternVector& x) {
    if (network.neurons.empty()) throw EmptyNetwork("network has no neurons");
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < network.neurons.size(); ++i) {
        const double d = distance(network.neurons[i].m, x.c);
        if (d < best_dist) {
            best_dist = d;
            best = i;
        }
    }
    return {best, best_dist};
}

double output(const Vec15& m, const PatternVector& x) { return dot(m, x.c); }

Network init_network(const NetworkConfig& config, std::uint64_t seed,
                     double jitter) {
    Network net;
    net.config = config;
    net.neurons.resize(config.n_neurons);
    net.labels.resize(config.n_neurons);
    const double uniform = 1.0 / std::sqrt(double(kPatternDim));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-jitter, jitter);
    for (auto& neuron : net.neurons)
        for (double& w : neuron.m) {
            w = uniform + (jitter > 0.0 ? dist(rng) : 0.0);
            if (w <= 0.0) w = uniform; // keep m(0) strictly positive
        }
    return net;
}

Network train(
    Network network,
    const std::vector<std::pair<PatternVector, std::string>>& stream) {
    for (const auto& [pattern, label] : stream) {
        if (!gamma_floor(pattern, network.config.gamma))
            throw GammaViolation("pattern '" + label +
                                 "' has a component below gamma");
        const auto [idx, rho] = winner(network, pattern);
        (void)rho;
        Vec15& m = network.neurons[idx].m;
        const Vec15 d =
            riccati_rhs(m, pattern, network.config.alpha, network.config.beta);
        for (std::size_t i = 0; i < kPatternDim; ++i) {
            m[i] += network.config.dt * d[i];
            if (!std::isfinite(m[i]))
                throw Divergence("weight update diverged");
        }
        network.labels[idx] = label;
    }
    return network;
}

std::string network_to_json(const Network& network) {
    nlohmann::json j;
    j["config"] = {{"alpha", network.config.alpha},
                   {"beta", network.config.beta},
                   {"gamma", network.config.gamma},
                   {"dt", network.config.dt},
                   {"n_neurons", network.config.n_neurons}};
    j["neurons"] = nlohmann::json::array();
    for (std::size_t i = 0; i < network.neurons.size(); ++i) {
        nlohmann::json n;
        n["m"] = network.neurons[i].m;
        if (network.labels[i])
            n["label"] = *network.labels[i];
        else
            n["label"] = nullptr;
        j["neurons"].push_back(n);
    }
    return j.dump(2);
}

Network network_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    Network net;
    net.config.alpha = j.at("config").at("alpha").get<double>();
    net.config.beta = j.at("config").at("beta").get<double>();
    net.config.gamma = j.at("config").at("gamma").get<double>();
    net.config.dt = j.at("config").at("dt").get<double>();
    net.config.n_neurons = j.at("config").at("n_neurons").get<std::size_t>();
    for (const auto& n : j.at("neurons")) {
        NeuronWeights w;
        const auto& arr = n.at("m");
        if (arr.size() != kPatternDim)
            throw DimensionMismatch("neuron weight vector is not 15-d");
        for (std::size_t i = 0; i < kPatternDim; ++i)
            w.m[i] = arr[i].get<double>();
        net.neurons.push_back(w);
        if (n.at("label").is_null())
            net.labels.emplace_back(std::nullopt);
        else
            net.labels.emplace_back(n.at("label").get<std::string>());
    }
    return net;
}

} // namespace phonet
