#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "phonet/features.hpp"
#include "phonet/riccati_net.hpp"

namespace phonet {

// One phoneme class: its member patterns, the medoid central vector,
// and the characteristic radius (max member distance from the central).
struct PhonemeAtom {
    std::string label;
    std::vector<PatternVector> members;
    PatternVector central;
    double radius = 0.0;
};

// Atoms plus the minimum pairwise distance delta between central vectors.
struct VoronoiPartition {
    std::vector<PhonemeAtom> atoms;
    double delta = 0.0;
};

struct Recognized {
    std::string label;
    double rho = 0.0;
    std::size_t atom_index = 0;
};
struct Unrecognized {
    double rho = 0.0;
    std::size_t nearest_atom = 0;
};
using RecognitionResult = std::variant<Recognized, Unrecognized>;

struct EmptyAtom : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingleClass : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnassignableNeuron : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Separation verdict of check_separation.
struct SeparationReport {
    double perturbation_scale = 0.0; // max atom radius
    double threshold = 0.0;          // gamma / 8
    bool satisfied = false;
    bool overlap_warning = false; // perturbation exceeds inter-central delta
};

// Medoid of the members (min total distance to all members, ties to the
// lowest index) and the max distance from it.
std::pair<PatternVector, double>
central_vector(const std::vector<PatternVector>& members);

// One atom per label; delta = min pairwise central distance. Atom order
// follows first appearance of each label in the input.
VoronoiPartition
build_partition(const std::vector<std::pair<PatternVector, std::string>>&
                    labeled_patterns);

// Checks the stability criterion: max atom radius (the empirical
// perturbation scale) against gamma/8, with an overlap warning when the
// perturbation exceeds the inter-central separation.
SeparationReport check_separation(const VoronoiPartition& partition,
                                  double gamma);

// Nearest-central recognition: Recognized iff the distance rho to the
// nearest central is within that atom's radius.
RecognitionResult recognize(const VoronoiPartition& partition,
                            const PatternVector& x);

// Network-mediated recognition: the winning neuron's weights pick the atom
// (nearest central, must be within delta/2), and rho is measured from the
// input to those weights.
RecognitionResult recognize_via_network(const Network& network,
                                        const VoronoiPartition& partition,
                                        const PatternVector& x);

std::string partition_to_json(const VoronoiPartition& partition);
VoronoiPartition partition_from_json(const std::string& text);

} // namespace phonet
