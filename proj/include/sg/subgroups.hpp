#pragma once
// Producing graphs and ball oracles from subgroup data: folded cores with
// hanging-tree completion, coset enumeration, lattice/torus families, random
// permutation models, and the complete-bipartite thinness gadget.
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sg/graph.hpp"
#include "sg/rational.hpp"
#include "sg/words.hpp"

namespace sg {

// Folded subgroup graph: no vertex carries two equal-labeled edges in the
// same direction; every edge lies on a generator path from the root
// (vertex 0 after compaction).
struct StallingsCore {
    PartialLabeledGraph graph;  // root = 0
};

StallingsCore stallings_core(int n, const std::vector<ReducedWord>& gens);

// Ball oracle for the full subgroup graph: the core plus a (2n-1)-branching
// hanging tree at every missing edge slot.
std::unique_ptr<BallSource> ball_source_from_core(StallingsCore core,
                                                  long long vertex_budget = kDefaultVertexBudget);

// Enumerates cosets of <gens> by tracing each generator from the root
// (merging on closure) and then defining cosets for missing images until the
// table is total. Throws BudgetError when more than max_cosets cosets would
// be defined — a budget outcome, not a verdict of infinite index.
SchreierGraph coset_enumerate(int n, const std::vector<ReducedWord>& gens, long long max_cosets);

// (Z/N)^d with coordinate-shift generators (d = rank). With flips, each
// a-chain (axis-0 cycle) independently reverses orientation with probability
// 1/2 (one `rng() & 1` draw of std::mt19937_64(flip_seed) per chain, chains
// in ascending order of transverse coordinates).
SchreierGraph torus_graph(int d, int N, std::optional<std::uint64_t> flip_seed = std::nullopt);

// Infinite Z^d ball oracle (root at the origin), optional a-chain flips
// drawn from a per-chain hash of (flip_seed, transverse coordinates).
std::unique_ptr<BallSource> lattice_source(int d, std::optional<std::uint64_t> flip_seed =
                                                      std::nullopt,
                                           long long vertex_budget = kDefaultVertexBudget);

// n uniform permutations (Fisher-Yates, j = rng() % (i+1), rng =
// std::mt19937_64(seed)), redrawn until connected (at most 1000 tries).
SchreierGraph random_schreier(int n, int V, std::uint64_t seed);

// Closed-form thinness statistics of the complete bipartite graph on parts
// of size 2^N and N.
struct BipartiteThinness {
    Rat tau_on_X;
    Rat tau_on_Y;
    Rat mu_X;
};
BipartiteThinness bipartite_thinness(int N);

// Declarative subgroup input (JSON in the CLI).
struct SubgroupSpec {
    enum class Kind { Generators, Lattice, Trivial, Full, Random };
    Kind kind = Kind::Trivial;
    int rank = 2;                           // generators/trivial/full/random
    std::vector<ReducedWord> words;         // generators
    int d = 2;                              // lattice dimension (= rank)
    std::optional<int> N;                   // lattice: finite torus side
    std::optional<std::uint64_t> flip_seed; // lattice
    int V = 1;                              // random
    std::uint64_t seed = 0;                 // random
};

// Parses {"n":2,"kind":"generators","words":["a","bb","baB"]},
// {"kind":"lattice","d":2,"N":20,"flip_seed":7},
// {"kind":"trivial","n":2}, {"kind":"full","n":2},
// {"kind":"random","n":2,"V":50,"seed":1}. Throws ParseError.
SubgroupSpec parse_subgroup_spec(const std::string& json_text);

std::unique_ptr<BallSource> source_from_spec(const SubgroupSpec& spec,
                                             long long vertex_budget = kDefaultVertexBudget);

// Materializes the finite graph a spec denotes. Throws std::invalid_argument
// for inherently infinite specs (trivial, lattice without N), BudgetError on
// caps.
SchreierGraph finite_graph_from_spec(const SubgroupSpec& spec, long long vertex_budget,
                                     long long max_cosets);

}  // namespace sg
