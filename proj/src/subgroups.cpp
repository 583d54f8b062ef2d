#include "sg/subgroups.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <unordered_map>

#include <json.hpp>

namespace sg {

namespace {

// Partial labeled graph under construction: union-find vertices plus
// edge tables that fold (merge endpoints) whenever two equal-labeled edges
// would share a source or target. Merge queue keeps lowest ids as
// representatives, processed first-in-first-out.
class Folder {
  public:
    explicit Folder(int rank) : n_(rank) {}

    int new_vertex() {
        parent_.push_back(static_cast<int>(parent_.size()));
        out_.resize(n_);
        in_.resize(n_);
        for (int g = 0; g < n_; ++g) {
            out_[g].push_back(-1);
            in_[g].push_back(-1);
        }
        return static_cast<int>(parent_.size()) - 1;
    }

    int find(int v) {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }

    // Adds the directed g-edge u -> w, folding as needed.
    void add_edge(int u, int g, int w) {
        attach(u, g, w);
        drain();
    }

    // Canonical out/in images, -1 when absent.
    int out_of(int u, int g) {
        u = find(u);
        int w = out_[g][u];
        if (w == -1) return -1;
        w = find(w);
        out_[g][u] = w;
        return w;
    }
    int in_of(int w, int g) {
        w = find(w);
        int u = in_[g][w];
        if (u == -1) return -1;
        u = find(u);
        in_[g][w] = u;
        return u;
    }

    bool live(int v) { return find(v) == v; }
    int size() const { return static_cast<int>(parent_.size()); }
    int rank() const { return n_; }

    // Renumbers live vertices by BFS (slot order) from `root` and emits the
    // folded tables. All live vertices are assumed reachable.
    PartialLabeledGraph compact(int root) {
        root = find(root);
        std::vector<int> local(parent_.size(), -1);
        std::vector<int> order{root};
        local[root] = 0;
        for (std::size_t head = 0; head < order.size(); ++head) {
            int v = order[head];
            for (int s = 0; s < 2 * n_; ++s) {
                int w = s % 2 ? in_of(v, s / 2) : out_of(v, s / 2);
                if (w != -1 && local[w] == -1) {
                    local[w] = static_cast<int>(order.size());
                    order.push_back(w);
                }
            }
        }
        int V = static_cast<int>(order.size());
        std::vector<std::vector<int>> out(n_, std::vector<int>(V, -1));
        for (int u = 0; u < V; ++u)
            for (int g = 0; g < n_; ++g) {
                int w = out_of(order[u], g);
                if (w != -1) out[g][u] = local[w];
            }
        return PartialLabeledGraph(n_, std::move(out), 0);
    }

  private:
    void attach(int u, int g, int w) {
        u = find(u);
        w = find(w);
        int cur = out_[g][u];
        if (cur != -1) {
            cur = find(cur);
            out_[g][u] = cur;
            if (cur != w) {
                merges_.emplace_back(cur, w);
                return;
            }
            // cur == w: fall through so a missing mirror entry gets repaired.
        }
        int src = in_[g][w];
        if (src != -1) {
            src = find(src);
            in_[g][w] = src;
            if (src != u) {
                merges_.emplace_back(src, u);
                return;
            }
        }
        out_[g][u] = w;
        in_[g][w] = u;
    }

    void drain() {
        while (!merges_.empty()) {
            auto [a, b] = merges_.front();
            merges_.pop_front();
            a = find(a);
            b = find(b);
            if (a == b) continue;
            if (a > b) std::swap(a, b);
            parent_[b] = a;
            for (int g = 0; g < n_; ++g) {
                int w = out_[g][b];
                out_[g][b] = -1;
                if (w != -1) attach(a, g, find(w));
                int u = in_[g][b];
                in_[g][b] = -1;
                if (u != -1) attach(find(u), g, a);
            }
        }
    }

    int n_;
    std::vector<int> parent_;
    std::vector<std::vector<int>> out_, in_;
    std::deque<std::pair<int, int>> merges_;
};

// Adds the edge realizing letter l traversed u -> v.
void add_letter_edge(Folder& f, int u, const Letter& l, int v) {
    if (l.inverse)
        f.add_edge(v, l.gen - 1, u);
    else
        f.add_edge(u, l.gen - 1, v);
}

// Builds the petal graph of the generators and folds it.
Folder fold_generators(int n, const std::vector<ReducedWord>& gens) {
    Folder f(n);
    int root = f.new_vertex();
    for (const ReducedWord& w : gens) {
        if (w.rank != n) throw std::invalid_argument("generator rank mismatch");
        int cur = root;
        for (int i = 0; i < w.length(); ++i) {
            const Letter& l = w.letters[i];
            int next = (i + 1 == w.length()) ? f.find(root) : f.new_vertex();
            add_letter_edge(f, cur, l, next);
            cur = f.find(next);
        }
    }
    return f;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

StallingsCore stallings_core(int n, const std::vector<ReducedWord>& gens) {
    if (gens.empty()) throw std::invalid_argument("need at least one generator word");
    Folder f = fold_generators(n, gens);
    return StallingsCore{f.compact(0)};
}

SchreierGraph coset_enumerate(int n, const std::vector<ReducedWord>& gens, long long max_cosets) {
    if (max_cosets < 1) throw std::invalid_argument("max_cosets must be positive");
    Folder f(n);
    long long defined = 1;
    int root = f.new_vertex();
    auto define = [&]() {
        if (++defined > max_cosets) throw BudgetError("coset budget exceeded");
        return f.new_vertex();
    };
    for (const ReducedWord& w : gens) {
        if (w.rank != n) throw std::invalid_argument("generator rank mismatch");
        int cur = f.find(root);
        for (int i = 0; i < w.length(); ++i) {
            const Letter& l = w.letters[i];
            if (i + 1 == w.length()) {
                add_letter_edge(f, cur, l, f.find(root));
                break;
            }
            int next = l.inverse ? f.in_of(cur, l.gen - 1) : f.out_of(cur, l.gen - 1);
            if (next == -1) {
                next = define();
                add_letter_edge(f, cur, l, next);
            }
            cur = f.find(next);
        }
    }
    // Fill remaining holes; slots of live vertices only ever gain entries,
    // so one monotone sweep reaches a total table (or the budget).
    for (int v = 0; v < f.size(); ++v) {
        if (!f.live(v)) continue;
        for (int g = 0; g < n; ++g) {
            if (f.out_of(v, g) == -1) {
                int w = define();
                f.add_edge(f.find(v), g, w);
            }
            if (!f.live(v)) break;  // a fold absorbed v; its slots moved
            if (f.in_of(v, g) == -1) {
                int w = define();
                f.add_edge(w, g, f.find(v));
            }
            if (!f.live(v)) break;
        }
    }
    PartialLabeledGraph p = f.compact(0);
    return complete_graph(p);
}

namespace {

// Shared lazy-BFS ball extraction for implicitly defined graphs. Identity is
// an opaque 64-bit id; resolve(id, slot) always names a neighbor (the
// lattice and core-completion graphs are total).
template <typename ResolveFn>
BallView lazy_ball(int rank, std::int64_t root_id, int radius, long long budget,
                   ResolveFn resolve) {
    BallView b;
    b.rank = rank;
    b.radius = radius;
    std::unordered_map<std::int64_t, int> local;
    std::vector<std::int64_t> order{root_id};
    local[root_id] = 0;
    b.dist.push_back(0);
    for (std::size_t head = 0; head < order.size(); ++head) {
        std::int64_t vid = order[head];
        int d = b.dist[head];
        if (d == radius) break;
        for (int s = 0; s < 2 * rank; ++s) {
            std::int64_t wid = resolve(vid, s);
            auto it = local.find(wid);
            if (it == local.end()) {
                if (static_cast<long long>(order.size()) >= budget)
                    throw BudgetError("vertex budget exceeded");
                local.emplace(wid, static_cast<int>(order.size()));
                order.push_back(wid);
                b.dist.push_back(d + 1);
            }
        }
    }
    int V = static_cast<int>(order.size());
    b.out.assign(rank, std::vector<int>(V, -1));
    b.in.assign(rank, std::vector<int>(V, -1));
    if (radius > 0) {
        // Full induced pass: covers edges between two full-depth vertices.
        for (int u = 0; u < V; ++u)
            for (int g = 0; g < rank; ++g) {
                std::int64_t wid = resolve(order[u], 2 * g);
                auto it = local.find(wid);
                if (it == local.end()) continue;
                b.out[g][u] = it->second;
                b.in[g][it->second] = u;
            }
    }
    b.source_id = std::move(order);
    return b;
}

// --- Core completion -------------------------------------------------------

// Tree nodes hanging off the core get synthetic negative ids; each ball()
// call materializes its own nodes deterministically in BFS order.
class CoreCompletionSource : public BallSource {
  public:
    CoreCompletionSource(StallingsCore core, long long budget)
        : core_(std::move(core)), budget_(budget) {}

    int rank() const override { return core_.graph.rank; }

    BallView ball(int radius) const override {
        // Synthetic node bookkeeping local to this call: id -> (origin slot,
        // neighbor ids per slot).
        struct TreeNode {
            std::int64_t parent;
            int parent_slot;  // slot leading back to the parent
            std::vector<std::int64_t> child;
        };
        std::vector<TreeNode> nodes;
        const PartialLabeledGraph& g = core_.graph;
        int n = g.rank;
        auto resolve = [&](std::int64_t vid, int s) -> std::int64_t {
            if (vid >= 0) {
                int w = g.step(static_cast<int>(vid), s);
                if (w != -1) return w;
                // First use of a missing slot sprouts a tree child; remember
                // it so the edge resolves identically from both sides.
                auto key = vid * 2 * n + s;
                auto it = sprouts_.find(key);
                if (it != sprouts_.end()) return it->second;
                std::int64_t id = -static_cast<std::int64_t>(nodes.size()) - 1;
                nodes.push_back({vid, inverse_slot(s), std::vector<std::int64_t>(2 * n, 0)});
                sprouts_.emplace(key, id);
                return id;
            }
            std::size_t idx = static_cast<std::size_t>(-vid - 1);
            if (s == nodes[idx].parent_slot) return nodes[idx].parent;
            std::int64_t child = nodes[idx].child[s];
            if (child == 0) {
                child = -static_cast<std::int64_t>(nodes.size()) - 1;
                nodes.push_back({vid, inverse_slot(s), std::vector<std::int64_t>(2 * n, 0)});
                nodes[idx].child[s] = child;
            }
            return child;
        };
        sprouts_.clear();
        return lazy_ball(n, 0, radius, budget_, resolve);
    }

    std::unique_ptr<Walker> make_walker() const override;

    const StallingsCore& core() const { return core_; }

  private:
    StallingsCore core_;
    long long budget_;
    mutable std::unordered_map<std::int64_t, std::int64_t> sprouts_;
};

class CoreWalker : public Walker {
  public:
    explicit CoreWalker(const PartialLabeledGraph& g) : g_(&g) { reset(); }

    void reset() override {
        pos_core_ = 0;
        pos_tree_ = -1;
    }

    void step(int slot) override {
        if (pos_tree_ == -1) {
            int w = g_->step(pos_core_, slot);
            if (w != -1) {
                pos_core_ = w;
                return;
            }
            pos_tree_ = enter_tree(pos_core_, slot);
            return;
        }
        if (slot == tree_[pos_tree_].parent_slot) {
            int pt = tree_[pos_tree_].parent_tree;
            if (pt == -1) pos_core_ = tree_[pos_tree_].parent_core;
            pos_tree_ = pt;
            return;
        }
        int child = tree_[pos_tree_].child[slot];
        if (child == -1) {
            child = static_cast<int>(tree_.size());
            tree_[pos_tree_].child[slot] = child;
            tree_.push_back(
                {pos_tree_, 0, inverse_slot(slot), std::vector<int>(2 * g_->rank, -1)});
        }
        pos_tree_ = child;
    }

    bool at_root() const override { return pos_tree_ == -1 && pos_core_ == 0; }

  private:
    struct TreeNode {
        int parent_tree;  // -1 when the parent is a core vertex
        int parent_core;
        int parent_slot;
        std::vector<int> child;
    };

    int enter_tree(int core_v, int slot) {
        auto key = static_cast<std::int64_t>(core_v) * 2 * g_->rank + slot;
        auto it = roots_.find(key);
        if (it != roots_.end()) return it->second;
        int id = static_cast<int>(tree_.size());
        tree_.push_back({-1, core_v, inverse_slot(slot), std::vector<int>(2 * g_->rank, -1)});
        roots_.emplace(key, id);
        return id;
    }

    const PartialLabeledGraph* g_;
    int pos_core_ = 0;
    int pos_tree_ = -1;  // -1 = on the core
    std::vector<TreeNode> tree_;
    std::unordered_map<std::int64_t, int> roots_;
};

std::unique_ptr<Walker> CoreCompletionSource::make_walker() const {
    return std::make_unique<CoreWalker>(core_.graph);
}

// --- Lattices ---------------------------------------------------------------

// Whether the axis-0 chain through the given transverse coordinates runs
// backwards. Stable hash protocol so every ball of every radius agrees.
bool lattice_flip(std::uint64_t seed, const std::vector<long long>& c) {
    std::uint64_t h = splitmix64(seed);
    for (std::size_t i = 1; i < c.size(); ++i)
        h = splitmix64(h ^ static_cast<std::uint64_t>(c[i] + 0x4000000));
    return h & 1;
}

class LatticeSource : public BallSource {
  public:
    LatticeSource(int d, std::optional<std::uint64_t> flip_seed, long long budget)
        : d_(d), flip_seed_(flip_seed), budget_(budget) {
        if (d != 2 && d != 3) throw std::invalid_argument("lattice dimension must be 2 or 3");
    }

    int rank() const override { return d_; }

    BallView ball(int radius) const override {
        // Coordinates packed into one id: 21 bits per axis, offset to stay
        // positive. Radii are far below the 2^20 coordinate range.
        auto pack = [&](const std::vector<long long>& c) {
            std::int64_t id = 0;
            for (int i = 0; i < d_; ++i) id |= ((c[i] + (1 << 20)) & 0x1fffff) << (21 * i);
            return id;
        };
        auto unpack = [&](std::int64_t id) {
            std::vector<long long> c(d_);
            for (int i = 0; i < d_; ++i) c[i] = ((id >> (21 * i)) & 0x1fffff) - (1 << 20);
            return c;
        };
        auto resolve = [&](std::int64_t vid, int s) -> std::int64_t {
            std::vector<long long> c = unpack(vid);
            int axis = s / 2;
            long long dir = (s % 2) ? -1 : 1;
            if (axis == 0 && flip_seed_ && lattice_flip(*flip_seed_, c)) dir = -dir;
            c[axis] += dir;
            return pack(c);
        };
        std::vector<long long> origin(d_, 0);
        return lazy_ball(d_, pack(origin), radius, budget_, resolve);
    }

    std::unique_ptr<Walker> make_walker() const override;

  private:
    friend class LatticeWalker;
    int d_;
    std::optional<std::uint64_t> flip_seed_;
    long long budget_;
};

class LatticeWalker : public Walker {
  public:
    LatticeWalker(int d, std::optional<std::uint64_t> flip_seed)
        : d_(d), flip_seed_(flip_seed), c_(d, 0) {}
    void reset() override { std::fill(c_.begin(), c_.end(), 0); }
    void step(int slot) override {
        int axis = slot / 2;
        long long dir = (slot % 2) ? -1 : 1;
        if (axis == 0 && flip_seed_ && lattice_flip(*flip_seed_, c_)) dir = -dir;
        c_[axis] += dir;
    }
    bool at_root() const override {
        return std::all_of(c_.begin(), c_.end(), [](long long x) { return x == 0; });
    }

  private:
    int d_;
    std::optional<std::uint64_t> flip_seed_;
    std::vector<long long> c_;
};

std::unique_ptr<Walker> LatticeSource::make_walker() const {
    return std::make_unique<LatticeWalker>(d_, flip_seed_);
}

}  // namespace

std::unique_ptr<BallSource> ball_source_from_core(StallingsCore core, long long vertex_budget) {
    return std::make_unique<CoreCompletionSource>(std::move(core), vertex_budget);
}

std::unique_ptr<BallSource> lattice_source(int d, std::optional<std::uint64_t> flip_seed,
                                           long long vertex_budget) {
    return std::make_unique<LatticeSource>(d, flip_seed, vertex_budget);
}

SchreierGraph torus_graph(int d, int N, std::optional<std::uint64_t> flip_seed) {
    if (d != 2 && d != 3) throw std::invalid_argument("torus dimension must be 2 or 3");
    if (N < 1) throw std::invalid_argument("torus side must be positive");
    long long V = 1;
    for (int i = 0; i < d; ++i) V *= N;
    // Chains along axis 0, one flip draw per chain, transverse coordinates
    // ascending (lexicographic with the last axis slowest).
    long long chains = V / N;
    std::vector<char> flip(chains, 0);
    if (flip_seed) {
        std::mt19937_64 rng(*flip_seed);
        for (long long t = 0; t < chains; ++t) flip[t] = static_cast<char>(rng() & 1);
    }
    std::vector<std::vector<int>> perms(d, std::vector<int>(V));
    for (long long v = 0; v < V; ++v) {
        long long rest = v;
        std::vector<long long> c(d);
        for (int i = 0; i < d; ++i) {
            c[i] = rest % N;
            rest /= N;
        }
        long long chain = v / N;  // transverse index: coordinates above axis 0
        for (int axis = 0; axis < d; ++axis) {
            long long dir = (axis == 0 && flip[chain]) ? -1 : 1;
            long long cc = (c[axis] + dir + N) % N;
            long long w = v + (cc - c[axis]) * [&] {
                long long stride = 1;
                for (int i = 0; i < axis; ++i) stride *= N;
                return stride;
            }();
            perms[axis][v] = static_cast<int>(w);
        }
    }
    return SchreierGraph(d, std::move(perms), 0);
}

SchreierGraph random_schreier(int n, int V, std::uint64_t seed) {
    if (V < 1) throw std::invalid_argument("vertex count must be positive");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<std::vector<int>> perms(n, std::vector<int>(V));
        for (int g = 0; g < n; ++g) {
            auto& p = perms[g];
            for (int i = 0; i < V; ++i) p[i] = i;
            for (int i = V - 1; i > 0; --i) {
                int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
                std::swap(p[i], p[j]);
            }
        }
        try {
            return SchreierGraph(n, std::move(perms), 0);
        } catch (const std::invalid_argument&) {
            continue;  // disconnected draw; redraw
        }
    }
    throw std::runtime_error("no connected draw in 1000 attempts");
}

BipartiteThinness bipartite_thinness(int N) {
    if (N < 1) throw std::invalid_argument("N must be positive");
    Int p2 = Int(1) << N;
    BipartiteThinness t;
    t.tau_on_X = Rat(1, Int(1 + N)) + Rat(Int(N), 1 + p2);
    t.tau_on_Y = Rat(Int(1), 1 + p2) + Rat(p2, Int(1 + N));
    t.mu_X = Rat(p2, p2 + N);
    return t;
}

SubgroupSpec parse_subgroup_spec(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad subgroup JSON: ") + e.what());
    }
    try {
        SubgroupSpec s;
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "generators") {
            s.kind = SubgroupSpec::Kind::Generators;
            s.rank = j.at("n").get<int>();
            for (const auto& w : j.at("words")) s.words.push_back(parse_word(s.rank, w.get<std::string>()));
            if (s.words.empty()) throw ParseError("generators kind needs nonempty words");
        } else if (kind == "lattice") {
            s.kind = SubgroupSpec::Kind::Lattice;
            s.d = j.at("d").get<int>();
            if (s.d != 2 && s.d != 3) throw ParseError("lattice dimension must be 2 or 3");
            s.rank = s.d;
            if (j.contains("N")) s.N = j.at("N").get<int>();
            if (j.contains("flip_seed")) s.flip_seed = j.at("flip_seed").get<std::uint64_t>();
        } else if (kind == "trivial") {
            s.kind = SubgroupSpec::Kind::Trivial;
            if (j.contains("n")) s.rank = j.at("n").get<int>();
        } else if (kind == "full") {
            s.kind = SubgroupSpec::Kind::Full;
            if (j.contains("n")) s.rank = j.at("n").get<int>();
        } else if (kind == "random") {
            s.kind = SubgroupSpec::Kind::Random;
            s.rank = j.at("n").get<int>();
            s.V = j.at("V").get<int>();
            s.seed = j.at("seed").get<std::uint64_t>();
        } else {
            throw ParseError("unknown subgroup kind '" + kind + "'");
        }
        if (s.rank < 1 || s.rank > kMaxRank) throw ParseError("rank out of range");
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad subgroup JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("bad subgroup JSON: ") + e.what());
    }
}

static SchreierGraph one_vertex_graph(int n) {
    return SchreierGraph(n, std::vector<std::vector<int>>(n, std::vector<int>(1, 0)), 0);
}

std::unique_ptr<BallSource> source_from_spec(const SubgroupSpec& spec, long long vertex_budget) {
    switch (spec.kind) {
        case SubgroupSpec::Kind::Generators:
            return ball_source_from_core(stallings_core(spec.rank, spec.words), vertex_budget);
        case SubgroupSpec::Kind::Lattice:
            if (spec.N) {
                SchreierGraph t = torus_graph(spec.d, *spec.N, spec.flip_seed);
                if (t.vertex_count > vertex_budget) throw BudgetError("vertex budget exceeded");
                return std::make_unique<FiniteGraphSource>(std::move(t));
            }
            return lattice_source(spec.d, spec.flip_seed, vertex_budget);
        case SubgroupSpec::Kind::Trivial: {
            std::vector<std::vector<int>> out(spec.rank, std::vector<int>(1, -1));
            StallingsCore core{PartialLabeledGraph(spec.rank, std::move(out), 0)};
            return ball_source_from_core(std::move(core), vertex_budget);
        }
        case SubgroupSpec::Kind::Full:
            return std::make_unique<FiniteGraphSource>(one_vertex_graph(spec.rank));
        case SubgroupSpec::Kind::Random:
            if (spec.V > vertex_budget) throw BudgetError("vertex budget exceeded");
            return std::make_unique<FiniteGraphSource>(
                random_schreier(spec.rank, spec.V, spec.seed));
    }
    throw std::invalid_argument("unhandled spec kind");
}

SchreierGraph finite_graph_from_spec(const SubgroupSpec& spec, long long vertex_budget,
                                     long long max_cosets) {
    switch (spec.kind) {
        case SubgroupSpec::Kind::Generators:
            return coset_enumerate(spec.rank, spec.words, max_cosets);
        case SubgroupSpec::Kind::Lattice: {
            if (!spec.N)
                throw std::invalid_argument("lattice without N is infinite; no finite graph");
            SchreierGraph t = torus_graph(spec.d, *spec.N, spec.flip_seed);
            if (t.vertex_count > vertex_budget) throw BudgetError("vertex budget exceeded");
            return t;
        }
        case SubgroupSpec::Kind::Trivial:
            throw std::invalid_argument("trivial subgroup graph is infinite; no finite graph");
        case SubgroupSpec::Kind::Full:
            return one_vertex_graph(spec.rank);
        case SubgroupSpec::Kind::Random:
            if (spec.V > vertex_budget) throw BudgetError("vertex budget exceeded");
            return random_schreier(spec.rank, spec.V, spec.seed);
    }
    throw std::invalid_argument("unhandled spec kind");
}

}  // namespace sg
