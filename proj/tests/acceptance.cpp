// Acceptance gates for the library: twelve end-to-end checks, one line each.
// Exact identities are asserted with zero tolerance (rational arithmetic);
// floating checks carry explicit tolerances pinned next to the assertion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "sg/boundary.hpp"
#include "sg/density.hpp"
#include "sg/graph.hpp"
#include "sg/rational.hpp"
#include "sg/sofic.hpp"
#include "sg/subgroups.hpp"
#include "sg/words.hpp"

using namespace sg;

namespace {

#define REQUIRE(cond, msg)                                                      \
    do {                                                                        \
        if (!(cond)) {                                                          \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << msg \
                      << "\n";                                                  \
            std::exit(1);                                                       \
        }                                                                       \
    } while (0)

SchreierGraph index2() { return SchreierGraph(2, {{0, 1}, {1, 0}}, 0); }

std::unique_ptr<BallSource> core_source(int n, const std::vector<std::string>& gens) {
    if (gens.empty()) {
        std::vector<std::vector<int>> out(n, std::vector<int>{-1});
        return ball_source_from_core(StallingsCore{PartialLabeledGraph(n, out, 0)});
    }
    std::vector<ReducedWord> ws;
    for (const auto& s : gens) ws.push_back(parse_word(n, s));
    return ball_source_from_core(stallings_core(n, ws));
}

// 1. The uniform average of relative thinness is exactly 1 on every finite
//    graph: 200 random graphs, n in {2,3}, V <= 200, r in 1..5.
void check_mean_thinness() {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(rng() % 2);
        int V = 1 + static_cast<int>(rng() % 200);
        SchreierGraph g = random_schreier(n, V, rng());
        int r = 1 + static_cast<int>(rng() % 5);
        std::vector<int> all(V);
        for (int i = 0; i < V; ++i) all[i] = i;
        REQUIRE(mean_tau_on(g, all, r) == Rat(1),
                "mean thinness != 1 (n=" << n << " V=" << V << " r=" << r << ")");
    }
}

// 2. Density/thinness duality, exactly: mean rho over the graph equals the
//    per-vertex thinness summed over the marked set, divided by V.
void check_density_duality() {
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(rng() % 2);
        int V = 1 + static_cast<int>(rng() % 200);
        SchreierGraph g = random_schreier(n, V, rng());
        int r = 1 + static_cast<int>(rng() % 5);
        BinaryField f{g, std::vector<std::uint8_t>(V)};
        for (auto& b : f.bits) b = rng() & 1;
        Rat sum = 0;
        for (int x = 0; x < V; ++x)
            if (f.bits[x]) sum += tau(g, x, r);
        REQUIRE(mean_rho(f, r) == sum / V,
                "duality broken (n=" << n << " V=" << V << " r=" << r << ")");
    }
}

// 3. Thinness is Lipschitz along edges with constant (2n-1)^2 + 1.
void check_lipschitz_bound() {
    std::mt19937_64 rng(303);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(rng() % 2);
        int V = 2 + static_cast<int>(rng() % 199);
        SchreierGraph g = random_schreier(n, V, rng());
        int r = 1 + static_cast<int>(rng() % 5);
        Rat bound((2 * n - 1) * (2 * n - 1) + 1);
        Rat got = lipschitz_ratio(g, r);
        REQUIRE(got <= bound, "thinness ratio " << rat_str(got) << " exceeds "
                                                << rat_str(bound) << " (n=" << n
                                                << " V=" << V << " r=" << r << ")");
    }
}

// 4. Sphere-count ratios against the free group never increase, for every
//    built-in source and 50 random finite graphs, r <= 12.
void check_monotone_ratios() {
    std::vector<std::unique_ptr<BallSource>> sources;
    sources.push_back(core_source(2, {}));
    sources.push_back(core_source(2, {"a"}));
    sources.push_back(core_source(2, {"a", "bb"}));
    sources.push_back(core_source(2, {"abAB"}));
    sources.push_back(std::make_unique<FiniteGraphSource>(index2()));
    sources.push_back(lattice_source(2));
    sources.push_back(lattice_source(3));
    sources.push_back(lattice_source(2, std::uint64_t{7}));
    sources.push_back(std::make_unique<FiniteGraphSource>(torus_graph(2, 20)));
    sources.push_back(std::make_unique<FiniteGraphSource>(torus_graph(2, 20, 7)));
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + static_cast<int>(rng() % 2);
        sources.push_back(std::make_unique<FiniteGraphSource>(
            random_schreier(n, 1 + static_cast<int>(rng() % 150), rng())));
    }
    for (std::size_t i = 0; i < sources.size(); ++i) {
        RatioSequence seq = boundary_ratios(*sources[i], 12);  // throws on increase
        for (int r = 0; r < 12; ++r)
            REQUIRE(seq.values[r + 1] <= seq.values[r],
                    "ratio increased at source " << i << " r=" << r + 1);
    }
}

// 5. Exact boundary-measure values for the reference subgroups.
void check_reference_measures() {
    RatioSequence cyc = boundary_ratios(*core_source(2, {"a"}), 12);
    for (int r = 1; r <= 12; ++r)
        REQUIRE(cyc.values[r] == Rat(1, 2), "<a> ratio at r=" << r << " is not 1/2");

    RatioSequence ab2 = boundary_ratios(*core_source(2, {"a", "bb"}), 12);
    REQUIRE(ab2.values[1] == Rat(1, 4), "<a,b^2> ratio at r=1 is not 1/4");
    for (int r = 2; r <= 12; ++r)
        REQUIRE(ab2.values[r] == Rat(1, 6), "<a,b^2> ratio at r=" << r << " is not 1/6");

    RatioSequence tree = boundary_ratios(*core_source(2, {}), 12);
    for (int r = 0; r <= 12; ++r)
        REQUIRE(tree.values[r] == Rat(1), "trivial-subgroup ratio at r=" << r << " is not 1");

    RatioSequence idx = boundary_ratios(FiniteGraphSource(index2()), 12);
    REQUIRE(idx.values[1] == Rat(1, 4), "index-2 ratio at r=1 is not 1/4");
    for (int r = 2; r <= 12; ++r)
        REQUIRE(idx.values[r] == Rat(0), "index-2 ratio at r=" << r << " is not 0");
}

// Non-backtracking enumeration oracle: extend reduced letter sequences one
// letter at a time, acting on the graph, and count arrivals at the root.
void brute_closed_paths(const SchreierGraph& g, int v, int last_slot, int depth, int max_depth,
                        std::vector<long long>& hits) {
    if (v == g.root && depth > 0) ++hits[depth];
    if (depth == max_depth) return;
    for (int s = 0; s < 2 * g.rank; ++s) {
        if (last_slot >= 0 && s == inverse_slot(last_slot)) continue;
        brute_closed_paths(g, g.step(v, s), s, depth + 1, max_depth, hits);
    }
}

// 6. The closed-path transfer count equals brute-force reduced-word
//    enumeration on every graph with V <= 30, up to length 8.
void check_cogrowth_oracle() {
    std::vector<SchreierGraph> corpus;
    corpus.push_back(index2());
    corpus.push_back(SchreierGraph(2, {{0}, {0}}, 0));
    corpus.push_back(torus_graph(2, 5));
    corpus.push_back(torus_graph(3, 3));
    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + static_cast<int>(rng() % 2);
        corpus.push_back(random_schreier(n, 1 + static_cast<int>(rng() % 30), rng()));
    }
    for (const SchreierGraph& g : corpus) {
        CogrowthSeries s = cogrowth_series(FiniteGraphSource(g), 8);
        std::vector<long long> hits(9, 0);
        brute_closed_paths(g, g.root, -1, 0, 8, hits);
        hits[0] = 1;
        for (int r = 0; r <= 8; ++r)
            REQUIRE(s.counts[r] == Int(hits[r]),
                    "count mismatch at r=" << r << " (V=" << g.vertex_count << ")");
    }
    REQUIRE(cogrowth_series(*lattice_source(2), 4).counts[4] == 8,
            "planar lattice closed 4-paths != 8");
    REQUIRE(cogrowth_series(FiniteGraphSource(index2()), 2).counts[2] == 4,
            "index-2 closed 2-paths != 4");
}

// 7. Growth of the subgroup inside the free group: flipped-torus family
//    estimates clear sqrt(3) - 0.05 at r=10 for ten seeds; <a> stays below
//    sqrt(3) and classifies as having positive dissipative part.
void check_cogrowth_families() {
    const double floor_est = std::sqrt(3.0) - 0.05;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SchreierGraph t = torus_graph(2, 20, seed);
        CogrowthSeries s = cogrowth_series(FiniteGraphSource(t), 10);
        REQUIRE(s.root_estimates[10] >= floor_est,
                "torus seed " << seed << " estimate " << s.root_estimates[10]
                              << " below " << floor_est);
    }
    CogrowthSeries cyc = cogrowth_series(*core_source(2, {"a"}), 12);
    REQUIRE(cyc.root_estimates[12] < std::sqrt(3.0), "<a> estimate not below sqrt(3)");
    Classification cls = classify_conservativity(*core_source(2, {"a"}), 12);
    REQUIRE(cls.label == "dissipative-part-positive",
            "<a> classified as " << cls.label);
}

// 8. Cycle-density recurrence algebra: characteristic roots match the pinned
//    values to 1e-6 and the dominant root stays below (2n-1)^l on the grid.
void check_growth_bound() {
    GrowthBound g = growth_bound({2, 2, Rat(1, 2), 1, 10});
    REQUIRE(std::abs(g.t_plus - 2.596291) < 1e-6, "dominant root " << g.t_plus);
    REQUIRE(std::abs(g.t_minus - (-0.096291)) < 1e-6, "subdominant root " << g.t_minus);
    REQUIRE(std::abs(g.dominant_decay - 0.865430) < 1e-6, "decay " << g.dominant_decay);
    for (int n : {2, 3})
        for (int ell : {1, 2, 3})
            for (Rat eps : {Rat(1, 10), Rat(1, 2), Rat(1)}) {
                GrowthBound b = growth_bound({n, 2 * ell, eps, 1, 8});
                double growth = std::pow(2 * n - 1, ell);
                REQUIRE(b.t_plus < growth,
                        "dominant root not below (2n-1)^l at n=" << n << " l=" << ell);
                REQUIRE(b.dominant_decay < 1.0, "decay not below 1");
            }
}

// 9. Stitch soundness: 200 damaged graphs repair to valid graphs, and any
//    vertex whose 2-ball avoided every removed/touched vertex keeps its key.
void check_stitch_soundness() {
    std::mt19937_64 rng(909);
    for (int trial = 0; trial < 200; ++trial) {
        int V = 20 + static_cast<int>(rng() % 181);
        SchreierGraph g = random_schreier(2, V, rng());
        double fraction = (rng() % 21) / 100.0;
        PartialLabeledGraph dam = damage(g, fraction, rng());
        auto [fixed, rep] = stitch(dam);
        REQUIRE(validate(PartialLabeledGraph::from_graph(fixed)).empty(),
                "stitched graph fails validation (V=" << V << ")");
        REQUIRE(rep.removed + fixed.vertex_count == g.vertex_count, "vertex accounting off");
        std::vector<char> dirty(V, 0);
        for (int v = 0; v < V; ++v)
            if (rep.vertex_map[v] == -1) dirty[v] = 1;
        for (int v : rep.touched) dirty[v] = 1;
        for (int v = 0; v < V; ++v) {
            if (rep.vertex_map[v] == -1) continue;
            BallView around = ball_of(g, v, 2);
            bool clean = true;
            for (std::int64_t src : around.source_id)
                if (dirty[static_cast<int>(src)]) clean = false;
            if (!clean) continue;
            REQUIRE(canonical_key(around) ==
                        canonical_key(ball_of(fixed, rep.vertex_map[v], 2)),
                    "untouched vertex " << v << " changed its 2-ball (V=" << V << ")");
        }
    }
}

// 10. Complete-bipartite gadget: exact closed forms, monotone separation,
//     and a side ratio beyond the Lipschitz constant by N=7 — no contracted
//     relabeling can realize it.
void check_bipartite_gadget() {
    BipartiteThinness b2 = bipartite_thinness(2);
    REQUIRE(b2.tau_on_X == Rat(11, 15), "tau on X at N=2 is " << rat_str(b2.tau_on_X));
    REQUIRE(b2.tau_on_Y == Rat(23, 15), "tau on Y at N=2 is " << rat_str(b2.tau_on_Y));
    for (int N = 2; N <= 20; ++N) {
        BipartiteThinness cur = bipartite_thinness(N);
        BipartiteThinness prev = bipartite_thinness(N - 1);
        REQUIRE(cur.tau_on_X < prev.tau_on_X, "tau on X not decreasing at N=" << N);
        REQUIRE(cur.tau_on_Y > prev.tau_on_Y, "tau on Y not increasing at N=" << N);
    }
    BipartiteThinness b7 = bipartite_thinness(7);
    REQUIRE(b7.tau_on_Y / b7.tau_on_X > Rat(10), "side ratio at N=7 not above 10");
}

// 11. Random-walk heuristic labels the square and cubic torus families on
//     opposite sides of the dichotomy (steps 1e5, trials 200, seed 7).
void check_walk_dichotomy() {
    FiniteGraphSource square(torus_graph(2, 100));
    WalkStats s2 = srw_return_stats(square, 100000, 200, 7);
    REQUIRE(s2.label == "recurrent-like",
            "square torus labeled " << s2.label << " (frequency " << s2.frequency << ")");
    FiniteGraphSource cubic(torus_graph(3, 100));
    WalkStats s3 = srw_return_stats(cubic, 100000, 200, 7);
    REQUIRE(s3.label == "transient-like",
            "cubic torus labeled " << s3.label << " (frequency " << s3.frequency << ")");
}

// 12. Censuses are projectively consistent: restricting the radius-(r+1)
//     census reproduces the radius-r census exactly, r+1 <= 4.
void check_census_consistency() {
    std::vector<SchreierGraph> corpus;
    corpus.push_back(index2());
    corpus.push_back(torus_graph(2, 6));
    corpus.push_back(torus_graph(2, 5, 3));
    corpus.push_back(torus_graph(3, 3));
    std::mt19937_64 rng(1212);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 2 + static_cast<int>(rng() % 2);
        corpus.push_back(random_schreier(n, 2 + static_cast<int>(rng() % 99), rng()));
    }
    for (const SchreierGraph& g : corpus)
        for (int r = 0; r + 1 <= 4; ++r) {
            LocalStatistics direct = local_statistics(g, r);
            LocalStatistics pushed = restrict_census(local_statistics(g, r + 1), r);
            REQUIRE(tv_distance(direct, pushed) == Rat(0),
                    "census push-down mismatch at r=" << r << " (V=" << g.vertex_count
                                                      << ")");
        }
}

void run(int number, const char* what, void (*fn)()) {
    auto start = std::chrono::steady_clock::now();
    fn();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[PASS] %2d %-58s %6.1fs\n", number, what, secs);
    std::fflush(stdout);
}

}  // namespace

int main() {
    run(1, "mean relative thinness is exactly 1", check_mean_thinness);
    run(2, "density/thinness duality holds exactly", check_density_duality);
    run(3, "thinness is Lipschitz with constant (2n-1)^2+1", check_lipschitz_bound);
    run(4, "sphere ratios against the free group never increase", check_monotone_ratios);
    run(5, "reference subgroups hit their exact ratio values", check_reference_measures);
    run(6, "closed-path transfer counts match brute enumeration", check_cogrowth_oracle);
    run(7, "cogrowth estimates separate torus family from <a>", check_cogrowth_families);
    run(8, "growth-bound roots match pinned values and stay dominated", check_growth_bound);
    run(9, "damage/stitch round trips validate and stay local", check_stitch_soundness);
    run(10, "bipartite gadget breaks the Lipschitz constant by N=7", check_bipartite_gadget);
    run(11, "walk heuristic separates square and cubic tori", check_walk_dichotomy);
    run(12, "censuses restrict consistently across radii", check_census_consistency);
    std::printf("all 12 acceptance checks passed\n");
    return 0;
}
