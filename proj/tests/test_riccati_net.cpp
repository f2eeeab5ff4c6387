#include <doctest.h>

#include <random>

#include "phonet/riccati_net.hpp"

using namespace phonet;

namespace {

PatternVector random_positive_unit(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.05, 1.0);
    Vec15 v;
    for (double& x : v) x = dist(rng);
    return normalize_unit(v);
}

Vec15 uniform_vec() {
    Vec15 m;
    m.fill(1.0 / std::sqrt(15.0));
    return m;
}

} // namespace

TEST_CASE("riccati_rhs vanishes at the fixed point") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto x = random_positive_unit(seed);
        const double alpha = 0.5 + double(seed % 5), beta = 1.0;
        const auto d = riccati_rhs(fixed_point(x, alpha, beta), x, alpha,
                                   beta);
        for (double v : d) CHECK(std::abs(v) < 1e-14);
    }
}

TEST_CASE("riccati_rhs at m = 0 is alpha * x") {
    const auto x = random_positive_unit(3);
    const auto d = riccati_rhs(Vec15{}, x, 2.5, 1.0);
    for (std::size_t i = 0; i < kPatternDim; ++i)
        CHECK(d[i] == doctest::Approx(2.5 * x.c[i]).epsilon(1e-15));
}

TEST_CASE("riccati_rhs matches the component-wise formula") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        Vec15 m;
        for (double& v : m) v = dist(rng);
        const auto x = random_positive_unit(trial + 50);
        const double alpha = 1.3, beta = 0.8;
        const auto d = riccati_rhs(m, x, alpha, beta);
        double inner = 0.0;
        for (std::size_t j = 0; j < kPatternDim; ++j) inner += m[j] * x.c[j];
        for (std::size_t i = 0; i < kPatternDim; ++i)
            CHECK(std::abs(d[i] - (alpha * x.c[i] - beta * m[i] * inner)) <
                  1e-14);
    }
}

TEST_CASE("fixed_point scaling") {
    PatternVector e1;
    e1.c[0] = 1.0;
    SUBCASE("alpha = beta gives x_hat itself") {
        const auto x = random_positive_unit(1);
        const auto m = fixed_point(x, 0.7, 0.7);
        for (std::size_t i = 0; i < kPatternDim; ++i)
            CHECK(m[i] == doctest::Approx(x.c[i]).epsilon(1e-15));
    }
    SUBCASE("alpha 4, beta 1 doubles e1") {
        const auto m = fixed_point(e1, 4.0, 1.0);
        CHECK(m[0] == doctest::Approx(2.0).epsilon(1e-15));
    }
}

TEST_CASE("integration converges as the paper reports: 150 steps, <5e-7") {
    const auto x = random_positive_unit(12);
    NetworkConfig cfg; // alpha = beta = 1, dt = 0.1
    const auto traj =
        integrate(uniform_vec(), [&](double) { return x; }, 150, cfg);
    CHECK(distance(traj.back(), fixed_point(x, 1.0, 1.0)) < 5e-7);
}

TEST_CASE("a trajectory started at the fixed point stays there") {
    const auto x = random_positive_unit(4);
    NetworkConfig cfg;
    const auto m_star = fixed_point(x, cfg.alpha, cfg.beta);
    const auto traj =
        integrate(m_star, [&](double) { return x; }, 100, cfg);
    for (const auto& m : traj) CHECK(distance(m, m_star) < 1e-12);
}

TEST_CASE("coarse Euler matches a dt/100 reference at the final time") {
    for (const auto [alpha, beta] : {std::pair{1.0, 1.0}, {2.0, 0.5}}) {
        const auto x = random_positive_unit(9);
        NetworkConfig coarse;
        coarse.alpha = alpha;
        coarse.beta = beta;
        coarse.dt = 0.1;
        NetworkConfig fine = coarse;
        fine.dt = coarse.dt / 100.0;
        const auto tc =
            integrate(uniform_vec(), [&](double) { return x; }, 150, coarse);
        const auto tf = integrate(uniform_vec(), [&](double) { return x; },
                                  15000, fine);
        CHECK(distance(tc.back(), tf.back()) < 1e-5);
    }
}

TEST_CASE("integrate flags divergence") {
    const auto x = random_positive_unit(2);
    NetworkConfig cfg;
    cfg.dt = 1e6; // guaranteed overshoot
    Vec15 m0;
    m0.fill(10.0);
    CHECK_THROWS_AS(
        integrate(m0, [&](double) { return x; }, 1000, cfg), Divergence);
}

TEST_CASE("exponential approach at rate sqrt(alpha*beta)") {
    for (const auto [alpha, beta, dt] :
         {std::tuple{1.0, 1.0, 0.1}, {4.0, 1.0, 0.05}, {0.5, 2.0, 0.1}}) {
        const auto x = random_positive_unit(33);
        NetworkConfig cfg;
        cfg.alpha = alpha;
        cfg.beta = beta;
        cfg.dt = dt;
        const auto m_star = fixed_point(x, alpha, beta);
        const std::size_t steps = std::size_t(30.0 / std::sqrt(alpha * beta) /
                                              dt);
        const auto traj =
            integrate(uniform_vec(), [&](double) { return x; }, steps, cfg);
        // least-squares slope of log error over the clean mid-range
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        std::size_t n = 0;
        for (std::size_t k = 0; k < traj.size(); ++k) {
            const double e = distance(traj[k], m_star);
            if (e < 1e-6 || e > 1e-1) continue;
            const double t = double(k) * dt, le = std::log(e);
            sx += t;
            sy += le;
            sxx += t * t;
            sxy += t * le;
            ++n;
        }
        REQUIRE(n >= 10);
        const double slope =
            (double(n) * sxy - sx * sy) / (double(n) * sxx - sx * sx);
        CHECK(std::abs(-slope - std::sqrt(alpha * beta)) /
                  std::sqrt(alpha * beta) <
              0.10);
    }
}

TEST_CASE("positive weights stay positive under the gamma floor") {
    for (double alpha : {0.5, 1.0, 2.0})
        for (double beta : {0.5, 1.0, 2.0})
            for (double dt : {0.01, 0.05, 0.1}) {
                const auto x = random_positive_unit(55);
                NetworkConfig cfg;
                cfg.alpha = alpha;
                cfg.beta = beta;
                cfg.dt = dt;
                const auto traj = integrate(
                    uniform_vec(), [&](double) { return x; }, 300, cfg);
                for (const auto& m : traj)
                    for (double v : m) CHECK(v > 0.0);
            }
}

TEST_CASE("winner selection") {
    NetworkConfig cfg;
    cfg.n_neurons = 2;
    Network net = init_network(cfg);
    net.neurons[0].m = Vec15{};
    net.neurons[0].m[0] = 1.0;
    net.neurons[1].m = Vec15{};
    net.neurons[1].m[1] = 1.0;

    PatternVector e1;
    e1.c[0] = 1.0;

    SUBCASE("exact match wins with zero distance") {
        const auto [idx, rho] = winner(net, e1);
        CHECK(idx == 0);
        CHECK(rho == 0.0);
    }
    SUBCASE("equidistant input goes to the lower index") {
        PatternVector mid = normalize_unit([] {
            Vec15 v{};
            v[0] = 1.0;
            v[1] = 1.0;
            return v;
        }());
        CHECK(winner(net, mid).first == 0);
    }
    SUBCASE("empty network throws") {
        Network empty;
        CHECK_THROWS_AS(winner(empty, e1), EmptyNetwork);
    }
}

TEST_CASE("winner matches an exhaustive scan") {
    std::mt19937_64 rng(64);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    NetworkConfig cfg;
    cfg.n_neurons = 12;
    Network net = init_network(cfg);
    for (auto& n : net.neurons)
        for (double& v : n.m) v = dist(rng);
    for (int trial = 0; trial < 50; ++trial) {
        const auto x = random_positive_unit(trial + 500);
        std::size_t best = 0;
        for (std::size_t i = 1; i < net.neurons.size(); ++i)
            if (distance(net.neurons[i].m, x.c) <
                distance(net.neurons[best].m, x.c))
                best = i;
        CHECK(winner(net, x).first == best);
    }
}

TEST_CASE("output inner product and winner duality") {
    PatternVector x = random_positive_unit(8);
    SUBCASE("unit self-product is 1") {
        CHECK(output(x.c, x) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("orthogonal vectors give 0") {
        Vec15 m{};
        m[0] = 1.0;
        PatternVector y;
        y.c[1] = 1.0;
        CHECK(output(m, y) == 0.0);
    }
    SUBCASE("argmax output = argmin distance for unit-norm weights") {
        NetworkConfig cfg;
        cfg.n_neurons = 6;
        Network net = init_network(cfg);
        for (std::size_t i = 0; i < 6; ++i)
            net.neurons[i].m = random_positive_unit(900 + i).c;
        for (int trial = 0; trial < 30; ++trial) {
            const auto probe = random_positive_unit(trial + 700);
            std::size_t best_eta = 0;
            for (std::size_t i = 1; i < 6; ++i)
                if (output(net.neurons[i].m, probe) >
                    output(net.neurons[best_eta].m, probe))
                    best_eta = i;
            CHECK(winner(net, probe).first == best_eta);
        }
    }
}

TEST_CASE("train with an empty stream leaves the network unchanged") {
    NetworkConfig cfg;
    const Network before = init_network(cfg, 1, 1e-3);
    const Network after = train(before, {});
    for (std::size_t i = 0; i < before.neurons.size(); ++i)
        CHECK(before.neurons[i].m == after.neurons[i].m);
}

TEST_CASE("a single repeated phoneme drives one neuron to its fixed point") {
    NetworkConfig cfg;
    cfg.n_neurons = 1;
    const auto x = random_positive_unit(13);
    REQUIRE(gamma_floor(x, cfg.gamma));
    std::vector<std::pair<PatternVector, std::string>> stream(
        150, {x, "ph"});
    const Network net = train(init_network(cfg), stream);
    CHECK(distance(net.neurons[0].m, fixed_point(x, cfg.alpha, cfg.beta)) <
          5e-7);
    REQUIRE(net.labels[0].has_value());
    CHECK(*net.labels[0] == "ph");
}

TEST_CASE("train rejects patterns below the gamma floor") {
    NetworkConfig cfg;
    PatternVector bad;
    bad.c.fill(1.0 / std::sqrt(15.0));
    bad.c[3] = 0.0;
    CHECK_THROWS_AS(train(init_network(cfg), {{bad, "bad"}}), GammaViolation);
}

TEST_CASE("training is deterministic in the stream") {
    NetworkConfig cfg;
    cfg.n_neurons = 4;
    std::vector<std::pair<PatternVector, std::string>> stream;
    for (int i = 0; i < 40; ++i)
        stream.emplace_back(random_positive_unit(i % 3 + 20),
                            std::to_string(i % 3));
    const Network a = train(init_network(cfg, 5, 1e-3), stream);
    const Network b = train(init_network(cfg, 5, 1e-3), stream);
    for (std::size_t i = 0; i < a.neurons.size(); ++i)
        CHECK(a.neurons[i].m == b.neurons[i].m);
}

TEST_CASE("model JSON round-trips") {
    NetworkConfig cfg;
    cfg.alpha = 1.5;
    cfg.n_neurons = 3;
    Network net = init_network(cfg, 7, 1e-3);
    net.labels[1] = "a";
    const Network back = network_from_json(network_to_json(net));
    CHECK(back.config.alpha == net.config.alpha);
    CHECK(back.config.n_neurons == net.config.n_neurons);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(back.neurons[i].m == net.neurons[i].m);
        CHECK(back.labels[i] == net.labels[i]);
    }
}
