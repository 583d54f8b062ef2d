#pragma once
// Labeled-permutation graph model: n permutations of a vertex set with a
// root. Validation, ball extraction, canonical neighborhood keys, geodesic
// spanning trees, root-loop reading, k-cycle detection, and the abstract
// ball-oracle interface for graphs too large to materialize.
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sg/errors.hpp"
#include "sg/words.hpp"

namespace sg {

inline constexpr long long kDefaultVertexBudget = 10'000'000;

// Edge-labeled graph of n permutations: perms[i][v] is the endpoint of the
// a_{i+1}-edge out of v. Each color contributes exactly one outgoing and one
// incoming edge per vertex, so the graph is 2n-regular (loops count twice).
// Connected from the root by construction.
struct SchreierGraph {
    int rank = 0;
    int vertex_count = 0;
    int root = 0;
    std::vector<std::vector<int>> perms;      // perms[g][v], g in [0,n)
    std::vector<std::vector<int>> inv_perms;  // inverse tables, derived

    SchreierGraph() = default;
    // Validates bijectivity and connectivity; throws std::invalid_argument.
    SchreierGraph(int rank_, std::vector<std::vector<int>> perms_, int root_);

    // Endpoint of the slot-s edge out of v (slot order a out, a in, b out, ...).
    int step(int v, int slot) const {
        const Letter l = slot_letter(slot);
        return l.inverse ? inv_perms[l.gen - 1][v] : perms[l.gen - 1][v];
    }
    int act(int v, const Letter& l) const;
    // Endpoint of the path reading w from v; act(v, e) = v.
    int act(int v, const ReducedWord& w) const;
    SchreierGraph rerooted(int new_root) const;
};

// A graph whose edge maps may have holes (-1 = absent). Present entries keep
// out/in tables mutually consistent; vertices need not satisfy the
// one-in-one-out-per-color condition.
struct PartialLabeledGraph {
    int rank = 0;
    int vertex_count = 0;
    std::optional<int> root;
    std::vector<std::vector<int>> out;  // out[g][v] or -1
    std::vector<std::vector<int>> in;   // in[g][v] or -1, derived from out

    PartialLabeledGraph() = default;
    // Builds in-tables; throws std::invalid_argument if some color has two
    // out-edges into one vertex (inconsistent labeling).
    PartialLabeledGraph(int rank_, std::vector<std::vector<int>> out_, std::optional<int> root_);

    static PartialLabeledGraph from_graph(const SchreierGraph& g);
    int step(int v, int slot) const {
        return slot % 2 ? in[slot / 2][v] : out[slot / 2][v];
    }
};

// One defect found by validate.
struct Violation {
    enum class Kind { MissingImage, DuplicateImage, Disconnected };
    Kind kind;
    int vertex;  // for DuplicateImage: the vertex two edges point at
    int gen;     // 0-based generator index; -1 for Disconnected
    bool incoming;
    std::string describe() const;
};

// Empty result iff the tables are total, each color is a bijection, and the
// graph is connected (from the root when one is given).
std::vector<Violation> validate(const PartialLabeledGraph& g);

// Upgrade a defect-free partial graph to a SchreierGraph.
SchreierGraph complete_graph(const PartialLabeledGraph& g);

// Induced neighborhood of radius `radius` around a center vertex. Local
// vertex 0 is the center; local numbering follows the deterministic BFS
// (slot order) used for canonical keys. Radius-0 views carry no edges, so
// every radius-0 neighborhood is a bare rooted point.
struct BallView {
    int rank = 0;
    int radius = 0;
    std::vector<int> dist;              // distance from center, per local vertex
    std::vector<std::vector<int>> out;  // induced edges, -1 absent
    std::vector<std::vector<int>> in;
    std::vector<std::int64_t> source_id;  // provenance of each local vertex

    int vertex_count() const { return static_cast<int>(dist.size()); }
    int step(int v, int slot) const {
        return slot % 2 ? in[slot / 2][v] : out[slot / 2][v];
    }
};

// Canonical identifier of a rooted labeled neighborhood: equal strings iff
// the views are isomorphic by a root- and label-preserving map.
struct NeighborhoodKey {
    std::string key;
    int radius = 0;
    bool operator==(const NeighborhoodKey&) const = default;
};

BallView ball_of(const SchreierGraph& g, int center, int radius);
BallView ball_of(const PartialLabeledGraph& g, int center, int radius);

// Renumbers by deterministic BFS from the center and serializes the tables.
NeighborhoodKey canonical_key(const BallView& ball);

// Inverse of canonical_key's serialization (center becomes vertex 0).
BallView decode_key(const std::string& key);

// Induced sub-view on distance <= r vertices, re-canonicalized.
BallView restrict_ball(const BallView& ball, int r);

std::string key_hex(const std::string& key);
std::string key_unhex(const std::string& hex);

// Spanning tree realizing graph distance from the root: for every vertex,
// the tree path has length d(root, v). Tie-breaks follow the fixed slot
// order, so the tree is deterministic.
struct GeodesicTree {
    int root = 0;
    std::vector<int> parent;        // -1 at root
    std::vector<Letter> letter;     // label of the edge parent -> v
    std::vector<int> dist;
    std::vector<int> bfs_order;     // vertices in discovery order
};

GeodesicTree geodesic_spanning_tree(const SchreierGraph& g);
GeodesicTree geodesic_spanning_tree(const BallView& ball);

// Word read along the tree path root -> v.
ReducedWord tree_word(const SchreierGraph& g, const GeodesicTree& t, int v);

// One word per non-tree directed edge (u, a, v): path(root,u) a path(v,root).
// Every output fixes the root; count = (n-1)V + 1.
std::vector<ReducedWord> fundamental_group_generators(const SchreierGraph& g,
                                                      const GeodesicTree& t);

// True iff the view's center lies on a simple closed path of exactly k edges
// (a loop is a 1-cycle, a pair of distinct parallel edges a 2-cycle).
bool center_on_k_cycle(const BallView& ball, int k);

// Abstract oracle producing root-centered neighborhoods of any radius.
// Implementations enforce a vertex budget (balls grow like (2n-1)^r).
class BallSource {
  public:
    virtual ~BallSource() = default;
    virtual int rank() const = 0;
    virtual BallView ball(int radius) const = 0;
    virtual std::unique_ptr<class Walker> make_walker() const = 0;
};

// Streaming random-walk position over a source's graph.
class Walker {
  public:
    virtual ~Walker() = default;
    virtual void reset() = 0;
    virtual void step(int slot) = 0;
    virtual bool at_root() const = 0;
};

// Source backed by a finite, fully materialized graph.
class FiniteGraphSource : public BallSource {
  public:
    explicit FiniteGraphSource(SchreierGraph g) : graph_(std::move(g)) {}
    int rank() const override { return graph_.rank; }
    BallView ball(int radius) const override { return ball_of(graph_, graph_.root, radius); }
    std::unique_ptr<Walker> make_walker() const override;
    const SchreierGraph& graph() const { return graph_; }

  private:
    SchreierGraph graph_;
};

// |sphere(r)| around the source root for r = 0..r_max.
std::vector<long long> sphere_sizes(const BallSource& source, int r_max);

// Graph distances from one vertex (all finite: the graph is connected).
std::vector<int> bfs_distances(const SchreierGraph& g, int from);

bool detect_k_cycle(const BallSource& source, int k);

}  // namespace sg
