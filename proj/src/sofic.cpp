#include "sg/sofic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace sg {

LocalStatistics local_statistics(const SchreierGraph& g, int r) {
    if (r < 0) throw std::invalid_argument("negative radius");
    LocalStatistics s;
    s.radius = r;
    s.sample_size = g.vertex_count;
    std::map<std::string, long long> counts;
    for (int x = 0; x < g.vertex_count; ++x) ++counts[canonical_key(ball_of(g, x, r)).key];
    for (auto& [key, count] : counts)
        s.census.emplace(key, Rat(Int(count), Int(g.vertex_count)));
    return s;
}

Rat tv_distance(const LocalStatistics& s1, const LocalStatistics& s2) {
    if (s1.radius != s2.radius) throw std::invalid_argument("census radius mismatch");
    Rat total = 0;
    auto it1 = s1.census.begin();
    auto it2 = s2.census.begin();
    while (it1 != s1.census.end() || it2 != s2.census.end()) {
        if (it2 == s2.census.end() || (it1 != s1.census.end() && it1->first < it2->first)) {
            total += it1->second;
            ++it1;
        } else if (it1 == s1.census.end() || it2->first < it1->first) {
            total += it2->second;
            ++it2;
        } else {
            total += abs(it1->second - it2->second);
            ++it1;
            ++it2;
        }
    }
    return total / 2;
}

ApproximationCheck check_approximation(const SchreierGraph& g, const LocalStatistics& reference,
                                       const Rat& epsilon) {
    LocalStatistics mine = local_statistics(g, reference.radius);
    ApproximationCheck result;
    auto consider = [&result](const std::string& key, const Rat& gap) {
        if (gap > result.worst_gap || result.worst_key.empty()) {
            result.worst_gap = gap;
            result.worst_key = key;
        }
    };
    for (auto& [key, freq] : mine.census) {
        auto it = reference.census.find(key);
        consider(key, it == reference.census.end() ? freq : abs(freq - it->second));
    }
    for (auto& [key, freq] : reference.census)
        if (!mine.census.count(key)) consider(key, freq);
    result.pass = result.worst_gap < epsilon;
    return result;
}

LocalStatistics restrict_census(const LocalStatistics& s, int r) {
    if (r < 0 || r > s.radius) throw std::invalid_argument("restriction radius out of range");
    LocalStatistics out;
    out.radius = r;
    out.sample_size = s.sample_size;
    for (auto& [key, freq] : s.census) {
        BallView ball = decode_key(key);
        ball.radius = s.radius;  // decoded radius is the eccentricity, not the census radius
        out.census[canonical_key(restrict_ball(ball, r)).key] += freq;
    }
    return out;
}

std::pair<SchreierGraph, StitchReport> stitch(const PartialLabeledGraph& candidate) {
    const int n = candidate.rank;
    const int V = candidate.vertex_count;
    std::vector<std::vector<int>> out = candidate.out;
    std::vector<std::vector<int>> in = candidate.in;
    StitchReport report;
    report.vertex_map.assign(V, -1);

    // Deletion pass: a vertex is defective when some generator has an image
    // without the matching preimage, or vice versa.
    std::vector<char> dead(V, 0);
    for (int v = 0; v < V; ++v)
        for (int g = 0; g < n && !dead[v]; ++g)
            if ((out[g][v] == -1) != (in[g][v] == -1)) dead[v] = 1;
    long long deleted = std::count(dead.begin(), dead.end(), char(1));

    std::vector<char> lost_edge(V, 0);
    for (int v = 0; v < V; ++v) {
        if (!dead[v]) continue;
        for (int g = 0; g < n; ++g) {
            if (int w = out[g][v]; w != -1) {
                out[g][v] = -1;
                in[g][w] = -1;
                if (!dead[w]) lost_edge[w] = 1;
            }
            if (int u = in[g][v]; u != -1) {
                in[g][v] = -1;
                out[g][u] = -1;
                if (!dead[u]) lost_edge[u] = 1;
            }
        }
    }
    report.repaired = std::count(lost_edge.begin(), lost_edge.end(), char(1));

    std::vector<char> touched(V, 0);
    // Loops where a generator is absent on both sides.
    for (int v = 0; v < V; ++v) {
        if (dead[v]) continue;
        for (int g = 0; g < n; ++g)
            if (out[g][v] == -1 && in[g][v] == -1) {
                out[g][v] = v;
                in[g][v] = v;
                ++report.loops_added;
                touched[v] = 1;
            }
    }
    // Close each maximal generator path into a cycle: from a vertex missing
    // its image, walk back to the path's start and add the closing edge.
    for (int g = 0; g < n; ++g)
        for (int v = 0; v < V; ++v) {
            if (dead[v] || out[g][v] != -1) continue;
            int start = v;
            while (in[g][start] != -1) start = in[g][start];
            out[g][v] = start;
            in[g][start] = v;
            ++report.chords_added;
            touched[v] = 1;
            touched[start] = 1;
        }

    // Keep the root's component (lowest surviving id when the root is gone).
    int root = -1;
    if (candidate.root && !dead[*candidate.root]) root = *candidate.root;
    for (int v = 0; v < V && root == -1; ++v)
        if (!dead[v]) root = v;
    if (root == -1) throw AnalysisError("stitch removed every vertex");

    std::vector<char> reach(V, 0);
    std::vector<int> queue{root};
    reach[root] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        for (int g = 0; g < n; ++g)
            for (int w : {out[g][v], in[g][v]})
                if (!reach[w]) {
                    reach[w] = 1;
                    queue.push_back(w);
                }
    }

    int kept = 0;
    for (int v = 0; v < V; ++v)
        if (reach[v]) report.vertex_map[v] = kept++;
    for (int v = 0; v < V; ++v) {
        if (!dead[v] && !reach[v]) ++report.dropped_disconnected;
        if (reach[v] && touched[v]) report.touched.push_back(v);
    }
    report.removed = deleted + report.dropped_disconnected;

    std::vector<std::vector<int>> perms(n, std::vector<int>(kept));
    for (int v = 0; v < V; ++v) {
        if (!reach[v]) continue;
        for (int g = 0; g < n; ++g) perms[g][report.vertex_map[v]] = report.vertex_map[out[g][v]];
    }
    return {SchreierGraph(n, std::move(perms), report.vertex_map[root]), std::move(report)};
}

PartialLabeledGraph damage(const SchreierGraph& g, double fraction, std::uint64_t seed) {
    if (fraction < 0.0 || fraction > 1.0) throw std::invalid_argument("fraction out of [0,1]");
    const long long total = static_cast<long long>(g.rank) * g.vertex_count;
    double x = fraction * static_cast<double>(total);
    long long near = std::llround(x);
    long long m = std::abs(x - static_cast<double>(near)) < 1e-9
                      ? near
                      : static_cast<long long>(std::ceil(x));
    m = std::clamp(m, 0LL, total);

    std::vector<long long> entries(total);
    std::iota(entries.begin(), entries.end(), 0LL);
    std::mt19937_64 rng(seed);
    for (long long i = 0; i < m; ++i)
        std::swap(entries[i], entries[i + static_cast<long long>(rng() % (total - i))]);

    std::vector<std::vector<int>> out(g.rank);
    for (int gen = 0; gen < g.rank; ++gen) out[gen] = g.perms[gen];
    for (long long i = 0; i < m; ++i)
        out[entries[i] / g.vertex_count][entries[i] % g.vertex_count] = -1;
    return PartialLabeledGraph(g.rank, std::move(out), g.root);
}

}  // namespace sg
