#include "sg/graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace sg {

static void check_vertex_range(int v, int V, const char* what) {
    if (v < 0 || v >= V) throw std::invalid_argument(std::string(what) + " out of range");
}

SchreierGraph::SchreierGraph(int rank_, std::vector<std::vector<int>> perms_, int root_)
    : rank(rank_), root(root_), perms(std::move(perms_)) {
    if (rank < 1 || rank > kMaxRank) throw std::invalid_argument("bad rank");
    if (static_cast<int>(perms.size()) != rank)
        throw std::invalid_argument("need one permutation per generator");
    vertex_count = perms.empty() ? 0 : static_cast<int>(perms[0].size());
    if (vertex_count < 1) throw std::invalid_argument("graph needs at least one vertex");
    check_vertex_range(root, vertex_count, "root");
    inv_perms.assign(rank, std::vector<int>(vertex_count, -1));
    for (int g = 0; g < rank; ++g) {
        if (static_cast<int>(perms[g].size()) != vertex_count)
            throw std::invalid_argument("permutation length mismatch");
        for (int v = 0; v < vertex_count; ++v) {
            int w = perms[g][v];
            check_vertex_range(w, vertex_count, "permutation image");
            if (inv_perms[g][w] != -1)
                throw std::invalid_argument("color " + std::to_string(g + 1) +
                                            " is not a bijection");
            inv_perms[g][w] = v;
        }
    }
    // Connectivity from the root over both edge directions.
    std::vector<char> seen(vertex_count, 0);
    std::deque<int> q{root};
    seen[root] = 1;
    int reached = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int s = 0; s < 2 * rank; ++s) {
            int w = step(v, s);
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                q.push_back(w);
            }
        }
    }
    if (reached != vertex_count) throw std::invalid_argument("graph is not connected");
}

int SchreierGraph::act(int v, const Letter& l) const {
    if (l.gen < 1 || l.gen > rank) throw std::invalid_argument("letter outside rank");
    check_vertex_range(v, vertex_count, "vertex");
    return step(v, letter_slot(l));
}

int SchreierGraph::act(int v, const ReducedWord& w) const {
    if (w.rank != rank) throw std::invalid_argument("word rank mismatch");
    check_vertex_range(v, vertex_count, "vertex");
    for (const Letter& l : w.letters) v = step(v, letter_slot(l));
    return v;
}

SchreierGraph SchreierGraph::rerooted(int new_root) const {
    SchreierGraph g = *this;
    check_vertex_range(new_root, vertex_count, "root");
    g.root = new_root;
    return g;
}

PartialLabeledGraph::PartialLabeledGraph(int rank_, std::vector<std::vector<int>> out_,
                                         std::optional<int> root_)
    : rank(rank_), root(root_), out(std::move(out_)) {
    if (rank < 1 || rank > kMaxRank) throw std::invalid_argument("bad rank");
    if (static_cast<int>(out.size()) != rank)
        throw std::invalid_argument("need one edge map per generator");
    vertex_count = out.empty() ? 0 : static_cast<int>(out[0].size());
    if (vertex_count < 1) throw std::invalid_argument("graph needs at least one vertex");
    if (root) check_vertex_range(*root, vertex_count, "root");
    in.assign(rank, std::vector<int>(vertex_count, -1));
    for (int g = 0; g < rank; ++g) {
        if (static_cast<int>(out[g].size()) != vertex_count)
            throw std::invalid_argument("edge map length mismatch");
        for (int v = 0; v < vertex_count; ++v) {
            int w = out[g][v];
            if (w == -1) continue;
            check_vertex_range(w, vertex_count, "edge image");
            if (in[g][w] != -1)
                throw std::invalid_argument("color " + std::to_string(g + 1) +
                                            " has two edges into vertex " + std::to_string(w));
            in[g][w] = v;
        }
    }
}

PartialLabeledGraph PartialLabeledGraph::from_graph(const SchreierGraph& g) {
    return PartialLabeledGraph(g.rank, g.perms, g.root);
}

std::string Violation::describe() const {
    switch (kind) {
        case Kind::MissingImage:
            return "vertex " + std::to_string(vertex) + ": generator " + std::to_string(gen + 1) +
                   (incoming ? " has no incoming edge" : " has no outgoing edge");
        case Kind::DuplicateImage:
            return "vertex " + std::to_string(vertex) + ": generator " + std::to_string(gen + 1) +
                   " has two incoming edges";
        case Kind::Disconnected:
            return "vertex " + std::to_string(vertex) + ": not reachable from the root";
    }
    return "";
}

std::vector<Violation> validate(const PartialLabeledGraph& g) {
    std::vector<Violation> v;
    for (int gen = 0; gen < g.rank; ++gen)
        for (int x = 0; x < g.vertex_count; ++x) {
            if (g.out[gen][x] == -1)
                v.push_back({Violation::Kind::MissingImage, x, gen, false});
            if (g.in[gen][x] == -1)
                v.push_back({Violation::Kind::MissingImage, x, gen, true});
        }
    // Connectivity over present edges, from the root if given, else from 0.
    int start = g.root.value_or(0);
    std::vector<char> seen(g.vertex_count, 0);
    std::deque<int> q{start};
    seen[start] = 1;
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        for (int s = 0; s < 2 * g.rank; ++s) {
            int w = g.step(x, s);
            if (w != -1 && !seen[w]) {
                seen[w] = 1;
                q.push_back(w);
            }
        }
    }
    for (int x = 0; x < g.vertex_count; ++x)
        if (!seen[x]) v.push_back({Violation::Kind::Disconnected, x, -1, false});
    return v;
}

SchreierGraph complete_graph(const PartialLabeledGraph& g) {
    auto violations = validate(g);
    if (!violations.empty())
        throw std::invalid_argument("graph is incomplete: " + violations.front().describe());
    return SchreierGraph(g.rank, g.out, g.root.value_or(0));
}

// Deterministic BFS ball extraction shared by graph kinds. stepfn(v, slot)
// returns a neighbor id or -1. Local numbering is the canonical BFS order.
template <typename StepFn>
static BallView extract_ball(int rank, int vertex_count, int center, int radius, StepFn stepfn) {
    if (radius < 0) throw std::invalid_argument("negative radius");
    BallView b;
    b.rank = rank;
    b.radius = radius;
    std::vector<int> local(vertex_count, -1);
    std::vector<int> order;
    local[center] = 0;
    order.push_back(center);
    b.dist.push_back(0);
    for (std::size_t head = 0; head < order.size(); ++head) {
        int v = order[head];
        int d = b.dist[head];
        if (d == radius) break;  // BFS order: all later vertices are at full depth
        for (int s = 0; s < 2 * rank; ++s) {
            int w = stepfn(v, s);
            if (w < 0 || local[w] != -1) continue;
            local[w] = static_cast<int>(order.size());
            order.push_back(w);
            b.dist.push_back(d + 1);
        }
    }
    int V = static_cast<int>(order.size());
    b.out.assign(rank, std::vector<int>(V, -1));
    b.in.assign(rank, std::vector<int>(V, -1));
    if (radius > 0) {
        for (int u = 0; u < V; ++u)
            for (int g = 0; g < rank; ++g) {
                int w = stepfn(order[u], 2 * g);
                if (w >= 0 && local[w] != -1) {
                    b.out[g][u] = local[w];
                    b.in[g][local[w]] = u;
                }
            }
    }
    b.source_id.reserve(V);
    for (int v : order) b.source_id.push_back(v);
    return b;
}

BallView ball_of(const SchreierGraph& g, int center, int radius) {
    check_vertex_range(center, g.vertex_count, "center");
    return extract_ball(g.rank, g.vertex_count, center, radius,
                        [&](int v, int s) { return g.step(v, s); });
}

BallView ball_of(const PartialLabeledGraph& g, int center, int radius) {
    check_vertex_range(center, g.vertex_count, "center");
    return extract_ball(g.rank, g.vertex_count, center, radius,
                        [&](int v, int s) { return g.step(v, s); });
}

// Canonical renumbering of an arbitrary connected view: BFS from the center
// visiting slots in the fixed letter order. Labeled traversal is
// deterministic, so isomorphic views produce identical numberings.
static std::vector<int> canonical_order(const BallView& ball) {
    int V = ball.vertex_count();
    std::vector<int> pos(V, -1);
    std::vector<int> order;
    pos[0] = 0;
    order.push_back(0);
    for (std::size_t head = 0; head < order.size(); ++head) {
        int v = order[head];
        for (int s = 0; s < 2 * ball.rank; ++s) {
            int w = ball.step(v, s);
            if (w < 0 || pos[w] != -1) continue;
            pos[w] = static_cast<int>(order.size());
            order.push_back(w);
        }
    }
    if (static_cast<int>(order.size()) != V)
        throw std::invalid_argument("neighborhood view is not connected");
    return order;
}

NeighborhoodKey canonical_key(const BallView& ball) {
    std::vector<int> order = canonical_order(ball);
    int V = ball.vertex_count();
    std::vector<int> pos(V);
    for (int i = 0; i < V; ++i) pos[order[i]] = i;
    std::string s = std::to_string(ball.rank) + ":" + std::to_string(V) + "|";
    for (int g = 0; g < ball.rank; ++g) {
        if (g) s += ";";
        for (int u = 0; u < V; ++u) {
            if (u) s += ",";
            int w = ball.out[g][order[u]];
            s += (w == -1) ? "x" : std::to_string(pos[w]);
        }
    }
    return {s, ball.radius};
}

BallView decode_key(const std::string& key) {
    auto bad = [&](const char* why) { return ParseError(std::string("bad key: ") + why); };
    auto colon = key.find(':');
    auto bar = key.find('|');
    if (colon == std::string::npos || bar == std::string::npos || bar < colon) throw bad("shape");
    int rank = 0, V = 0;
    try {
        rank = std::stoi(key.substr(0, colon));
        V = std::stoi(key.substr(colon + 1, bar - colon - 1));
    } catch (const std::exception&) {
        throw bad("header");
    }
    if (rank < 1 || rank > kMaxRank || V < 1) throw bad("header range");
    std::vector<std::vector<int>> out(rank, std::vector<int>(V, -1));
    int g = 0, u = 0;
    std::size_t i = bar + 1;
    while (i < key.size()) {
        std::size_t j = key.find_first_of(",;", i);
        std::string tok = key.substr(i, (j == std::string::npos ? key.size() : j) - i);
        if (g >= rank || u >= V) throw bad("too many entries");
        if (tok != "x") {
            int w;
            try {
                w = std::stoi(tok);
            } catch (const std::exception&) {
                throw bad("entry");
            }
            if (w < 0 || w >= V) throw bad("entry range");
            out[g][u] = w;
        }
        ++u;
        if (j == std::string::npos) {
            i = key.size();
        } else {
            if (key[j] == ';') {
                if (u != V) throw bad("row length");
                ++g;
                u = 0;
            }
            i = j + 1;
        }
    }
    if (g != rank - 1 || u != V) throw bad("table shape");
    PartialLabeledGraph p(rank, std::move(out), 0);
    BallView b = ball_of(p, 0, V);  // radius V reaches everything
    if (b.vertex_count() != V) throw bad("not connected");
    b.radius = *std::max_element(b.dist.begin(), b.dist.end());
    return b;
}

BallView restrict_ball(const BallView& ball, int r) {
    if (r < 0 || r > ball.radius) throw std::invalid_argument("restriction radius out of range");
    BallView sub = extract_ball(ball.rank, ball.vertex_count(), 0, r, [&](int v, int s) {
        int w = ball.step(v, s);
        return (w >= 0 && ball.dist[w] <= r) ? w : -1;
    });
    for (auto& id : sub.source_id) id = ball.source_id[id];
    return sub;
}

std::string key_hex(const std::string& key) {
    static const char* digits = "0123456789abcdef";
    std::string h;
    h.reserve(2 * key.size());
    for (unsigned char c : key) {
        h += digits[c >> 4];
        h += digits[c & 15];
    }
    return h;
}

std::string key_unhex(const std::string& hex) {
    auto val = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw ParseError("bad hex digit in key");
    };
    if (hex.size() % 2) throw ParseError("odd hex length");
    std::string s;
    s.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2)
        s += static_cast<char>(val(hex[i]) * 16 + val(hex[i + 1]));
    return s;
}

template <typename StepFn>
static GeodesicTree bfs_tree(int rank, int V, int root, StepFn stepfn) {
    GeodesicTree t;
    t.root = root;
    t.parent.assign(V, -1);
    t.letter.assign(V, Letter{});
    t.dist.assign(V, -1);
    t.dist[root] = 0;
    t.bfs_order.push_back(root);
    for (std::size_t head = 0; head < t.bfs_order.size(); ++head) {
        int v = t.bfs_order[head];
        for (int s = 0; s < 2 * rank; ++s) {
            int w = stepfn(v, s);
            if (w < 0 || t.dist[w] != -1) continue;
            t.dist[w] = t.dist[v] + 1;
            t.parent[w] = v;
            t.letter[w] = slot_letter(s);
            t.bfs_order.push_back(w);
        }
    }
    return t;
}

GeodesicTree geodesic_spanning_tree(const SchreierGraph& g) {
    return bfs_tree(g.rank, g.vertex_count, g.root, [&](int v, int s) { return g.step(v, s); });
}

GeodesicTree geodesic_spanning_tree(const BallView& ball) {
    return bfs_tree(ball.rank, ball.vertex_count(), 0,
                    [&](int v, int s) { return ball.step(v, s); });
}

ReducedWord tree_word(const SchreierGraph& g, const GeodesicTree& t, int v) {
    std::vector<Letter> letters;
    for (int x = v; x != t.root; x = t.parent[x]) letters.push_back(t.letter[x]);
    std::reverse(letters.begin(), letters.end());
    return reduce(g.rank, letters);
}

std::vector<ReducedWord> fundamental_group_generators(const SchreierGraph& g,
                                                      const GeodesicTree& t) {
    // Mark directed edges (u, g, perms[g][u]) used by the tree.
    std::vector<std::vector<char>> used(g.rank, std::vector<char>(g.vertex_count, 0));
    for (int v : t.bfs_order) {
        if (v == t.root) continue;
        const Letter& l = t.letter[v];
        if (!l.inverse)
            used[l.gen - 1][t.parent[v]] = 1;
        else
            used[l.gen - 1][v] = 1;
    }
    std::vector<ReducedWord> gens;
    for (int gen = 0; gen < g.rank; ++gen)
        for (int u = 0; u < g.vertex_count; ++u) {
            if (used[gen][u]) continue;
            int w = g.perms[gen][u];
            ReducedWord lw;
            lw.rank = g.rank;
            lw.letters.push_back({gen + 1, false});
            gens.push_back(concat(concat(tree_word(g, t, u), lw), inverse(tree_word(g, t, w))));
        }
    return gens;
}

static bool cycle_dfs(const BallView& b, int v, int depth, int k, int prev_slot,
                      std::vector<char>& visited) {
    for (int s = 0; s < 2 * b.rank; ++s) {
        if (depth > 0 && s == inverse_slot(prev_slot)) continue;  // no edge backtracking
        int w = b.step(v, s);
        if (w < 0) continue;
        if (depth == k - 1) {
            if (w == 0) return true;
            continue;
        }
        if (w == 0 || visited[w]) continue;  // polygon vertices are distinct
        visited[w] = 1;
        if (cycle_dfs(b, w, depth + 1, k, s, visited)) return true;
        visited[w] = 0;
    }
    return false;
}

bool center_on_k_cycle(const BallView& ball, int k) {
    if (k < 1) throw std::invalid_argument("cycle length must be positive");
    std::vector<char> visited(ball.vertex_count(), 0);
    return cycle_dfs(ball, 0, 0, k, -1, visited);
}

namespace {
class FiniteWalker : public Walker {
  public:
    explicit FiniteWalker(const SchreierGraph& g) : g_(&g), pos_(g.root) {}
    void reset() override { pos_ = g_->root; }
    void step(int slot) override { pos_ = g_->step(pos_, slot); }
    bool at_root() const override { return pos_ == g_->root; }

  private:
    const SchreierGraph* g_;
    int pos_;
};
}  // namespace

std::unique_ptr<Walker> FiniteGraphSource::make_walker() const {
    return std::make_unique<FiniteWalker>(graph_);
}

std::vector<long long> sphere_sizes(const BallSource& source, int r_max) {
    if (r_max < 0) throw std::invalid_argument("negative radius");
    BallView b = source.ball(r_max);
    std::vector<long long> out(r_max + 1, 0);
    for (int d : b.dist) ++out[d];
    return out;
}

bool detect_k_cycle(const BallSource& source, int k) {
    if (k < 1) throw std::invalid_argument("cycle length must be positive");
    return center_on_k_cycle(source.ball(std::max(1, k / 2)), k);
}

std::vector<int> bfs_distances(const SchreierGraph& g, int from) {
    check_vertex_range(from, g.vertex_count, "vertex");
    std::vector<int> dist(g.vertex_count, -1);
    std::deque<int> q{from};
    dist[from] = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int s = 0; s < 2 * g.rank; ++s) {
            int w = g.step(v, s);
            if (dist[w] == -1) {
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
        }
    }
    return dist;
}

}  // namespace sg
