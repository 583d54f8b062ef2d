#pragma once
// Neighborhood censuses, total-variation distance between them, empirical
// approximation checks, and the stitch procedure that repairs a partial
// labeled graph into a genuine Schreier graph.
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sg/graph.hpp"
#include "sg/rational.hpp"

namespace sg {

// Empirical distribution of radius-r canonical keys over a graph's vertices.
struct LocalStatistics {
    int radius = 0;
    std::map<std::string, Rat> census;  // canonical key -> frequency, sums to 1
    long long sample_size = 0;
};

LocalStatistics local_statistics(const SchreierGraph& g, int r);

// (1/2) sum over the key union of |f1 - f2|. Throws on radius mismatch.
Rat tv_distance(const LocalStatistics& s1, const LocalStatistics& s2);

struct ApproximationCheck {
    bool pass = true;
    std::string worst_key;  // key with the largest frequency discrepancy
    Rat worst_gap = 0;
};

// Pass iff every key's discrepancy against the reference is < epsilon,
// counting keys present on one side only.
ApproximationCheck check_approximation(const SchreierGraph& g, const LocalStatistics& reference,
                                       const Rat& epsilon);

// Push a census down to a smaller radius by restricting every key's ball.
LocalStatistics restrict_census(const LocalStatistics& s, int r);

struct StitchReport {
    long long removed = 0;    // input vertices absent from the output
    long long repaired = 0;   // survivors that lost an edge to the deletion pass
    long long loops_added = 0;
    long long chords_added = 0;
    long long dropped_disconnected = 0;  // subset of `removed`: cut off from the root
    std::vector<int> vertex_map;         // input id -> output id, -1 when removed
    std::vector<int> touched;            // input ids incident to any added edge, sorted
};

// Repair procedure: delete vertices whose labels are half-present (an image
// without the matching preimage or vice versa), then fix the survivors'
// absences in place — a loop where a generator is absent on both sides, a
// closing edge from the end of each maximal generator path back to its
// start. Keeps the root's component. Throws AnalysisError when nothing
// survives.
std::pair<SchreierGraph, StitchReport> stitch(const PartialLabeledGraph& candidate);

// Remove ceil(fraction * n * V) out-entries (with their incoming records)
// chosen by seeded draw. Fuzz-input generator for stitch.
PartialLabeledGraph damage(const SchreierGraph& g, double fraction, std::uint64_t seed);

}  // namespace sg
