#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "phonet/partition.hpp"

using namespace phonet;

namespace {

PatternVector unit_axis(std::size_t i) {
    PatternVector p;
    p.c[i] = 1.0;
    return p;
}

PatternVector random_unit(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.01, 1.0);
    Vec15 v;
    for (double& x : v) x = dist(rng);
    return normalize_unit(v);
}

} // namespace

TEST_CASE("central_vector of a singleton is the member, radius 0") {
    const auto x = random_unit(1);
    const auto [c, r] = central_vector({x});
    CHECK(c.c == x.c);
    CHECK(r == 0.0);
}

TEST_CASE("central_vector rejects an empty member list") {
    CHECK_THROWS_AS(central_vector({}), EmptyAtom);
}

TEST_CASE("central_vector picks the geometric middle of three") {
    const auto e1 = unit_axis(0), e2 = unit_axis(1);
    const auto mid = normalize_unit([] {
        Vec15 v{};
        v[0] = 1.0;
        v[1] = 1.0;
        return v;
    }());
    const auto [c, r] = central_vector({e1, e2, mid});
    // mid is sqrt(2 - sqrt(2)) ~ 0.765 from either axis vector, while the
    // axis vectors sit sqrt(2) apart, so mid minimizes the distance sum.
    CHECK(c.c == mid.c);
    CHECK(r == doctest::Approx(std::sqrt(2.0 - std::sqrt(2.0)))
                   .epsilon(1e-12));
}

TEST_CASE("central_vector agrees with the brute-force medoid") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<PatternVector> members;
        const std::size_t n = 2 + rng() % 19;
        for (std::size_t i = 0; i < n; ++i)
            members.push_back(random_unit(rng()));
        const auto [c, r] = central_vector(members);
        const auto [bi, br] = oracle::brute_medoid(members);
        CHECK(c.c == members[bi].c);
        CHECK(r == br);
    }
}

TEST_CASE("build_partition on two axis-aligned classes") {
    std::vector<std::pair<PatternVector, std::string>> data = {
        {unit_axis(0), "p"}, {unit_axis(1), "q"}, {unit_axis(0), "p"}};
    const auto part = build_partition(data);
    REQUIRE(part.atoms.size() == 2);
    CHECK(part.atoms[0].label == "p"); // first-appearance order
    CHECK(part.atoms[1].label == "q");
    CHECK(part.atoms[0].members.size() == 2);
    CHECK(part.delta == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(part.atoms[0].radius == 0.0);
}

TEST_CASE("build_partition needs at least two classes") {
    CHECK_THROWS_AS(build_partition({{unit_axis(0), "only"}}), SingleClass);
    CHECK_THROWS_AS(build_partition({}), SingleClass);
}

TEST_CASE("delta matches the brute-force minimum over random partitions") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n_classes = 2 + rng() % 9;
        std::vector<std::pair<PatternVector, std::string>> data;
        for (std::size_t c = 0; c < n_classes; ++c) {
            const std::size_t n = 1 + rng() % 5;
            for (std::size_t i = 0; i < n; ++i)
                data.emplace_back(random_unit(rng()),
                                  "c" + std::to_string(c));
        }
        const auto part = build_partition(data);
        std::vector<PatternVector> centrals;
        for (const auto& a : part.atoms) centrals.push_back(a.central);
        CHECK(part.delta == oracle::brute_delta(centrals));
        for (const auto& a : part.atoms)
            for (const auto& m : a.members)
                CHECK(distance(m.c, a.central.c) <= a.radius);
    }
}

TEST_CASE("check_separation compares the max radius with gamma/8") {
    std::vector<std::pair<PatternVector, std::string>> data = {
        {unit_axis(0), "p"}, {unit_axis(1), "q"}};
    auto part = build_partition(data);

    SUBCASE("zero-radius atoms satisfy any positive gamma") {
        const auto rep = check_separation(part, 0.9e-4);
        CHECK(rep.threshold == doctest::Approx(1.125e-5).epsilon(1e-15));
        CHECK(rep.perturbation_scale == 0.0);
        CHECK(rep.satisfied);
        CHECK_FALSE(rep.overlap_warning);
    }
    SUBCASE("an inflated radius violates the criterion") {
        part.atoms[0].radius = 1e-3;
        const auto rep = check_separation(part, 0.9e-4);
        CHECK(rep.perturbation_scale == 1e-3);
        CHECK_FALSE(rep.satisfied);
    }
    SUBCASE("radius beyond delta raises the overlap warning") {
        part.atoms[0].radius = 2.0;
        const auto rep = check_separation(part, 0.9e-4);
        CHECK(rep.overlap_warning);
    }
}

TEST_CASE("recognize") {
    std::vector<std::pair<PatternVector, std::string>> data;
    for (int i = 0; i < 3; ++i) {
        data.emplace_back(normalize_unit([&] {
                              Vec15 v{};
                              v[0] = 1.0;
                              v[1] = 0.01 * i;
                              return v;
                          }()),
                          "p");
        data.emplace_back(normalize_unit([&] {
                              Vec15 v{};
                              v[5] = 1.0;
                              v[6] = 0.01 * i;
                              return v;
                          }()),
                          "q");
    }
    const auto part = build_partition(data);

    SUBCASE("a central vector recognizes itself with rho 0") {
        const auto res = recognize(part, part.atoms[0].central);
        const auto* hit = std::get_if<Recognized>(&res);
        REQUIRE(hit != nullptr);
        CHECK(hit->label == "p");
        CHECK(hit->rho == 0.0);
        CHECK(hit->atom_index == 0);
    }
    SUBCASE("every member lands in its own atom") {
        for (const auto& [x, label] : data) {
            const auto res = recognize(part, x);
            const auto* hit = std::get_if<Recognized>(&res);
            REQUIRE(hit != nullptr);
            CHECK(hit->label == label);
        }
    }
    SUBCASE("a distant point is unrecognized with the nearest atom noted") {
        const auto res = recognize(part, unit_axis(12));
        const auto* miss = std::get_if<Unrecognized>(&res);
        REQUIRE(miss != nullptr);
        CHECK(miss->rho > part.atoms[miss->nearest_atom].radius);
    }
}

TEST_CASE("recognize_via_network") {
    std::vector<std::pair<PatternVector, std::string>> data = {
        {unit_axis(0), "p"}, {unit_axis(5), "q"}};
    const auto part = build_partition(data);

    NetworkConfig cfg;
    cfg.n_neurons = 2;
    Network net = init_network(cfg);
    net.neurons[0].m = part.atoms[0].central.c;
    net.neurons[1].m = part.atoms[1].central.c;
    net.labels[0] = "p";
    net.labels[1] = "q";

    SUBCASE("weights equal to centrals reproduce plain recognition") {
        for (const auto& [x, label] : data) {
            const auto res = recognize_via_network(net, part, x);
            const auto* hit = std::get_if<Recognized>(&res);
            REQUIRE(hit != nullptr);
            CHECK(hit->label == label);
            CHECK(hit->rho == 0.0);
        }
    }
    SUBCASE("a winner far from every central is unassignable") {
        net.neurons[0].m = unit_axis(10).c;
        net.neurons[1].m = unit_axis(11).c;
        CHECK_THROWS_AS(recognize_via_network(net, part, unit_axis(10)),
                        UnassignableNeuron);
    }
}

TEST_CASE("partition JSON round-trips") {
    std::vector<std::pair<PatternVector, std::string>> data = {
        {unit_axis(0), "p"}, {random_unit(9), "q"}, {random_unit(10), "q"}};
    const auto part = build_partition(data);
    const auto back = partition_from_json(partition_to_json(part));
    CHECK(back.delta == part.delta);
    REQUIRE(back.atoms.size() == part.atoms.size());
    for (std::size_t i = 0; i < part.atoms.size(); ++i) {
        CHECK(back.atoms[i].label == part.atoms[i].label);
        CHECK(back.atoms[i].central.c == part.atoms[i].central.c);
        CHECK(back.atoms[i].radius == part.atoms[i].radius);
        CHECK(back.atoms[i].members.size() == part.atoms[i].members.size());
    }
}
