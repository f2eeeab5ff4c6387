#include "phonet/partition.hpp"

#include <limits>
#include <map>

#include <json.hpp>

namespace phonet {

std::pair<PatternVector, double>
central_vector(const std::vector<PatternVector>& members) {
    if (members.empty()) throw EmptyAtom("atom has no members");

    std::size_t best = 0;
    double best_sum = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < members.size(); ++i) {
        double sum = 0.0;
        for (const auto& other : members)
            sum += distance(members[i].c, other.c);
        if (sum < best_sum) {
            best_sum = sum;
            best = i;
        }
    }

    double radius = 0.0;
    for (const auto& other : members)
        radius = std::max(radius, distance(members[best].c, other.c));
    return {members[best], radius};
}

VoronoiPartition
build_partition(const std::vector<std::pair<PatternVector, std::string>>&
                    labeled_patterns) {
    if (labeled_patterns.empty()) throw EmptyAtom("no labeled patterns");

    std::vector<std::string> order;
    std::map<std::string, std::vector<PatternVector>> by_label;
    for (const auto& [pattern, label] : labeled_patterns) {
        if (!by_label.count(label)) order.push_back(label);
        by_label[label].push_back(pattern);
    }
    if (order.size() < 2)
        throw SingleClass("delta needs at least two distinct labels");

    VoronoiPartition part;
    for (const auto& label : order) {
        PhonemeAtom atom;
        atom.label = label;
        atom.members = by_label[label];
        std::tie(atom.central, atom.radius) = central_vector(atom.members);
        part.atoms.push_back(std::move(atom));
    }

    part.delta = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < part.atoms.size(); ++k)
        for (std::size_t l = k + 1; l < part.atoms.size(); ++l)
            part.delta = std::min(
                part.delta,
                distance(part.atoms[k].central.c, part.atoms[l].central.c));
    return part;
}

SeparationReport check_separation(const VoronoiPartition& partition,
                                  double gamma) {
    if (gamma <= 0.0) throw std::invalid_argument("gamma must be positive");
    SeparationReport rep;
    for (const auto& atom : partition.atoms)
        rep.perturbation_scale = std::max(rep.perturbation_scale, atom.radius);
    rep.threshold = gamma / 8.0;
    rep.satisfied = rep.perturbation_scale < rep.threshold;
    rep.overlap_warning = rep.perturbation_scale > partition.delta;
    return rep;
}

namespace {

std::pair<std::size_t, double> nearest_atom(const VoronoiPartition& partition,
                                            const Vec15& point) {
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < partition.atoms.size(); ++k) {
        const double d = distance(partition.atoms[k].central.c, point);
        if (d < best_dist) {
            best_dist = d;
            best = k;
        }
    }
    return {best, best_dist};
}

} // namespace

RecognitionResult recognize(const VoronoiPartition& partition,
                            const PatternVector& x) {
    const auto [k, rho] = nearest_atom(partition, x.c);
    if (rho <= partition.atoms[k].radius)
        return Recognized{partition.atoms[k].label, rho, k};
    return Unrecognized{rho, k};
}

RecognitionResult recognize_via_network(const Network& network,
                                        const VoronoiPartition& partition,
                                        const PatternVector& x) {
    const auto [idx, rho] = winner(network, x);
    const Vec15& weights = network.neurons[idx].m;
    const auto [k, central_dist] = nearest_atom(partition, weights);
    if (central_dist > partition.delta / 2.0)
        throw UnassignableNeuron(
            "winning neuron " + std::to_string(idx) + " is " +
            std::to_string(central_dist) +
            " from the nearest central, beyond delta/2 = " +
            std::to_string(partition.delta / 2.0));
    if (rho <= partition.atoms[k].radius)
        return Recognized{partition.atoms[k].label, rho, k};
    return Unrecognized{rho, k};
}

std::string partition_to_json(const VoronoiPartition& partition) {
    nlohmann::json j;
    j["atoms"] = nlohmann::json::array();
    for (const auto& atom : partition.atoms) {
        nlohmann::json a;
        a["label"] = atom.label;
        a["central"] = atom.central.c;
        a["radius"] = atom.radius;
        a["members"] = nlohmann::json::array();
        for (const auto& m : atom.members) a["members"].push_back(m.c);
        j["atoms"].push_back(a);
    }
    j["delta"] = partition.delta;
    return j.dump(2);
}

VoronoiPartition partition_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    VoronoiPartition part;
    for (const auto& a : j.at("atoms")) {
        PhonemeAtom atom;
        atom.label = a.at("label").get<std::string>();
        for (std::size_t i = 0; i < kPatternDim; ++i)
            atom.central.c[i] = a.at("central")[i].get<double>();
        atom.radius = a.at("radius").get<double>();
        for (const auto& m : a.at("members")) {
            PatternVector p;
            for (std::size_t i = 0; i < kPatternDim; ++i)
                p.c[i] = m[i].get<double>();
            atom.members.push_back(p);
        }
        part.atoms.push_back(std::move(atom));
    }
    part.delta = j.at("delta").get<double>();
    return part;
}

} // namespace phonet
