#pragma once
// Neighborhood functionals: binary fields cut out by local predicates,
// r-ball densities, relative thinness, r-contractions, the Lipschitz
// statistic, translate closures, and lopsidedness.
#include <functional>
#include <string>
#include <vector>

#include "sg/graph.hpp"
#include "sg/rational.hpp"

namespace sg {

// Membership rule depending only on the radius-r0 canonical key.
struct CylinderPredicate {
    int radius = 0;
    std::string name;
    std::function<bool(const NeighborhoodKey&)> accept;
};

CylinderPredicate predicate_true();
CylinderPredicate predicate_a_loop();             // radius 1
CylinderPredicate predicate_k_cycle(int k);       // radius max(1, k/2)
CylinderPredicate predicate_key(const std::string& key);  // literal key match

// Registry used by the CLI: "true", "a-loop", "k-cycle:<k>", "key:<hex>".
CylinderPredicate make_predicate(const std::string& name);

// One bit per vertex of a finite graph.
struct BinaryField {
    SchreierGraph graph;
    std::vector<std::uint8_t> bits;
};

// bit(x) = pred(canonical key of the radius-r0 ball at x).
BinaryField field_from_predicate(const SchreierGraph& g, const CylinderPredicate& pred);

// Fraction of the r-ball around x carrying a 1 bit. Exact.
Rat rho(const BinaryField& field, int x, int r);

// Average of rho over all vertices. Exact.
Rat mean_rho(const BinaryField& field, int r);

// Relative thinness: sum over the r-ball around x of reciprocal r-ball
// sizes. Exact; averages to 1 over any finite graph.
Rat tau(const SchreierGraph& g, int x, int r);

// Thinness at the root of a ball oracle (reads the radius-2r ball).
Rat tau_at_root(const BallSource& source, int r);

// Average of tau over a nonempty vertex subset.
Rat mean_tau_on(const SchreierGraph& g, const std::vector<int>& subset, int r);

// Unlabeled simple graph (for contractions).
struct PlainGraph {
    int vertex_count = 0;
    std::vector<std::vector<int>> adj;  // sorted, loop-free, symmetric
};

// x ~ y iff 0 < d(x,y) <= r; degree(x) = |ball_r(x)| - 1.
PlainGraph contract(const SchreierGraph& g, int r);

// Max over adjacent pairs of tau_r(x)/tau_r(y); >= 1. Needs a non-loop edge.
Rat lipschitz_ratio(const SchreierGraph& g, int r);

// Vertices within graph distance k of the subset (monotone in k).
std::vector<int> translate_closure(const SchreierGraph& g, const std::vector<int>& subset, int k);

// Mean over the subset of (neighbors inside)/(neighbors outside); infinite
// when some member has inside-neighbors but none outside; 0/0 counts 0.
struct Lopsidedness {
    bool infinite = false;
    Rat value = 0;
};
Lopsidedness lopsidedness(const PlainGraph& g, const std::vector<int>& subset);

// mean_rho for r = 0..r_max; entry 0 is the measure of the 1-set.
std::vector<Rat> density_profile(const BinaryField& field, int r_max);

// |ball_r(x)| for every vertex (helper shared by the functionals).
std::vector<long long> ball_sizes(const SchreierGraph& g, int r);

}  // namespace sg
