#include "sg/density.hpp"

#include <algorithm>
#include <map>

namespace sg {

namespace {

// Vertices within distance r of x, by bounded BFS.
std::vector<int> ball_members(const SchreierGraph& g, int x, int r) {
    std::vector<int> dist(g.vertex_count, -1);
    std::vector<int> order{x};
    dist[x] = 0;
    for (std::size_t head = 0; head < order.size(); ++head) {
        int v = order[head];
        if (dist[v] == r) break;
        for (int s = 0; s < 2 * g.rank; ++s) {
            int w = g.step(v, s);
            if (dist[w] == -1) {
                dist[w] = dist[v] + 1;
                order.push_back(w);
            }
        }
    }
    return order;
}

// Exact sum of 1/sizes[y] over members, grouped by size.
Rat reciprocal_sum(const std::vector<int>& members, const std::vector<long long>& sizes) {
    std::map<long long, long long> hist;
    for (int y : members) ++hist[sizes[y]];
    Rat total = 0;
    for (auto& [size, count] : hist) total += Rat(Int(count), Int(size));
    return total;
}

}  // namespace

std::vector<long long> ball_sizes(const SchreierGraph& g, int r) {
    std::vector<long long> sizes(g.vertex_count);
    for (int x = 0; x < g.vertex_count; ++x)
        sizes[x] = static_cast<long long>(ball_members(g, x, r).size());
    return sizes;
}

CylinderPredicate predicate_true() {
    return {0, "true", [](const NeighborhoodKey&) { return true; }};
}

CylinderPredicate predicate_a_loop() {
    return {1, "a-loop", [](const NeighborhoodKey& k) {
                BallView b = decode_key(k.key);
                return b.out[0][0] == 0;
            }};
}

CylinderPredicate predicate_k_cycle(int k) {
    if (k < 1) throw std::invalid_argument("cycle length must be positive");
    return {std::max(1, k / 2), "k-cycle:" + std::to_string(k), [k](const NeighborhoodKey& nk) {
                return center_on_k_cycle(decode_key(nk.key), k);
            }};
}

CylinderPredicate predicate_key(const std::string& key) {
    BallView b = decode_key(key);  // validates; radius = eccentricity of the center
    return {b.radius, "key:" + key_hex(key),
            [key](const NeighborhoodKey& nk) { return nk.key == key; }};
}

CylinderPredicate make_predicate(const std::string& name) {
    if (name == "true") return predicate_true();
    if (name == "a-loop") return predicate_a_loop();
    if (name.rfind("k-cycle:", 0) == 0) {
        try {
            return predicate_k_cycle(std::stoi(name.substr(8)));
        } catch (const std::invalid_argument&) {
            throw ParseError("bad k-cycle predicate '" + name + "'");
        } catch (const std::out_of_range&) {
            throw ParseError("bad k-cycle predicate '" + name + "'");
        }
    }
    if (name.rfind("key:", 0) == 0) return predicate_key(key_unhex(name.substr(4)));
    throw ParseError("unknown predicate '" + name + "'");
}

BinaryField field_from_predicate(const SchreierGraph& g, const CylinderPredicate& pred) {
    BinaryField f{g, std::vector<std::uint8_t>(g.vertex_count, 0)};
    for (int x = 0; x < g.vertex_count; ++x)
        f.bits[x] = pred.accept(canonical_key(ball_of(g, x, pred.radius))) ? 1 : 0;
    return f;
}

Rat rho(const BinaryField& field, int x, int r) {
    if (r < 0) throw std::invalid_argument("negative radius");
    std::vector<int> members = ball_members(field.graph, x, r);
    long long ones = 0;
    for (int y : members) ones += field.bits[y];
    return Rat(Int(ones), Int(static_cast<long long>(members.size())));
}

Rat mean_rho(const BinaryField& field, int r) {
    Rat total = 0;
    for (int x = 0; x < field.graph.vertex_count; ++x) total += rho(field, x, r);
    return total / field.graph.vertex_count;
}

Rat tau(const SchreierGraph& g, int x, int r) {
    if (r < 0) throw std::invalid_argument("negative radius");
    std::vector<int> members = ball_members(g, x, r);
    std::vector<long long> sizes(g.vertex_count, 0);
    for (int y : members) sizes[y] = static_cast<long long>(ball_members(g, y, r).size());
    return reciprocal_sum(members, sizes);
}

Rat tau_at_root(const BallSource& source, int r) {
    if (r < 0) throw std::invalid_argument("negative radius");
    BallView b = source.ball(2 * r);
    // Advance a bounded BFS inside the double ball for each inner vertex;
    // distance-r paths from distance-<=r starts never leave it.
    int V = b.vertex_count();
    auto local_ball_size = [&](int y) {
        std::vector<int> dist(V, -1);
        std::vector<int> order{y};
        dist[y] = 0;
        for (std::size_t head = 0; head < order.size(); ++head) {
            int v = order[head];
            if (dist[v] == r) break;
            for (int s = 0; s < 2 * b.rank; ++s) {
                int w = b.step(v, s);
                if (w >= 0 && dist[w] == -1) {
                    dist[w] = dist[v] + 1;
                    order.push_back(w);
                }
            }
        }
        return static_cast<long long>(order.size());
    };
    std::map<long long, long long> hist;
    for (int y = 0; y < V; ++y)
        if (b.dist[y] <= r) ++hist[local_ball_size(y)];
    Rat total = 0;
    for (auto& [size, count] : hist) total += Rat(Int(count), Int(size));
    return total;
}

Rat mean_tau_on(const SchreierGraph& g, const std::vector<int>& subset, int r) {
    if (subset.empty()) throw std::invalid_argument("empty subset");
    std::vector<long long> sizes = ball_sizes(g, r);
    Rat total = 0;
    for (int x : subset) total += reciprocal_sum(ball_members(g, x, r), sizes);
    return total / static_cast<long long>(subset.size());
}

PlainGraph contract(const SchreierGraph& g, int r) {
    if (r < 1) throw std::invalid_argument("contraction radius must be >= 1");
    PlainGraph p;
    p.vertex_count = g.vertex_count;
    p.adj.resize(g.vertex_count);
    for (int x = 0; x < g.vertex_count; ++x) {
        std::vector<int> members = ball_members(g, x, r);
        std::sort(members.begin(), members.end());
        for (int y : members)
            if (y != x) p.adj[x].push_back(y);
    }
    return p;
}

Rat lipschitz_ratio(const SchreierGraph& g, int r) {
    std::vector<long long> sizes = ball_sizes(g, r);
    std::vector<Rat> tau_of(g.vertex_count);
    for (int x = 0; x < g.vertex_count; ++x)
        tau_of[x] = reciprocal_sum(ball_members(g, x, r), sizes);
    Rat best = 0;
    bool any = false;
    for (int x = 0; x < g.vertex_count; ++x)
        for (int gen = 0; gen < g.rank; ++gen) {
            int y = g.perms[gen][x];
            if (y == x) continue;
            any = true;
            best = std::max(best, Rat(tau_of[x] / tau_of[y]));
            best = std::max(best, Rat(tau_of[y] / tau_of[x]));
        }
    if (!any) throw std::invalid_argument("graph has no non-loop edges");
    return best;
}

std::vector<int> translate_closure(const SchreierGraph& g, const std::vector<int>& subset,
                                   int k) {
    if (k < 0) throw std::invalid_argument("negative word length");
    std::vector<int> dist(g.vertex_count, -1);
    std::vector<int> order;
    for (int x : subset)
        if (dist[x] == -1) {
            dist[x] = 0;
            order.push_back(x);
        }
    for (std::size_t head = 0; head < order.size(); ++head) {
        int v = order[head];
        if (dist[v] == k) break;
        for (int s = 0; s < 2 * g.rank; ++s) {
            int w = g.step(v, s);
            if (dist[w] == -1) {
                dist[w] = dist[v] + 1;
                order.push_back(w);
            }
        }
    }
    std::sort(order.begin(), order.end());
    return order;
}

Lopsidedness lopsidedness(const PlainGraph& g, const std::vector<int>& subset) {
    if (subset.empty()) throw std::invalid_argument("empty subset");
    std::vector<char> inside(g.vertex_count, 0);
    for (int x : subset) inside[x] = 1;
    Lopsidedness result;
    Rat total = 0;
    for (int x : subset) {
        long long in_deg = 0, out_deg = 0;
        for (int y : g.adj[x]) (inside[y] ? in_deg : out_deg)++;
        if (out_deg == 0) {
            if (in_deg > 0) {
                result.infinite = true;
                return result;
            }
            continue;  // isolated on both sides: contributes 0
        }
        total += Rat(Int(in_deg), Int(out_deg));
    }
    result.value = total / static_cast<long long>(subset.size());
    return result;
}

std::vector<Rat> density_profile(const BinaryField& field, int r_max) {
    if (r_max < 0) throw std::invalid_argument("negative radius");
    std::vector<Rat> out;
    out.reserve(r_max + 1);
    for (int r = 0; r <= r_max; ++r) out.push_back(mean_rho(field, r));
    return out;
}

}  // namespace sg
