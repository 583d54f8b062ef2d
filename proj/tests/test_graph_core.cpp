#include <algorithm>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "sg/errors.hpp"
#include "sg/graph.hpp"
#include "sg/sgf.hpp"
#include "sg/subgroups.hpp"
#include "sg/words.hpp"

using namespace sg;

namespace {

// a fixes both vertices, b swaps them: the index-2 subgroup <a, b^2, bab^-1>.
SchreierGraph index2() { return SchreierGraph(2, {{0, 1}, {1, 0}}, 0); }

SchreierGraph single_vertex(int n) {
    return SchreierGraph(n, std::vector<std::vector<int>>(n, std::vector<int>{0}), 0);
}

std::unique_ptr<BallSource> core_source(int n, const std::vector<std::string>& gens) {
    if (gens.empty()) {  // trivial subgroup: edgeless core, the 2n-regular tree
        std::vector<std::vector<int>> out(n, std::vector<int>{-1});
        return ball_source_from_core(StallingsCore{PartialLabeledGraph(n, out, 0)});
    }
    std::vector<ReducedWord> ws;
    for (const auto& s : gens) ws.push_back(parse_word(n, s));
    return ball_source_from_core(stallings_core(n, ws));
}

// Relabel vertices by a random permutation (keeps the rooted labeled
// isomorphism type).
SchreierGraph relabel(const SchreierGraph& g, std::mt19937_64& rng) {
    std::vector<int> to_new(g.vertex_count);
    for (int i = 0; i < g.vertex_count; ++i) to_new[i] = i;
    for (int i = g.vertex_count - 1; i > 0; --i)
        std::swap(to_new[i], to_new[rng() % (i + 1)]);
    std::vector<std::vector<int>> perms(g.rank, std::vector<int>(g.vertex_count));
    for (int ggen = 0; ggen < g.rank; ++ggen)
        for (int v = 0; v < g.vertex_count; ++v)
            perms[ggen][to_new[v]] = to_new[g.perms[ggen][v]];
    return SchreierGraph(g.rank, perms, to_new[g.root]);
}

}  // namespace

TEST_CASE("construction validates input") {
    CHECK_THROWS_AS(SchreierGraph(2, {{0, 0}, {1, 0}}, 0), std::invalid_argument);  // not a bijection
    CHECK_THROWS_AS(SchreierGraph(2, {{0, 1}, {1, 0}}, 5), std::invalid_argument);  // bad root
    // two components: a and b both fix everything, V=2
    CHECK_THROWS_AS(SchreierGraph(2, {{0, 1}, {0, 1}}, 0), std::invalid_argument);
    CHECK_NOTHROW(index2());
}

TEST_CASE("act follows labeled edges") {
    SchreierGraph g = index2();
    CHECK(g.act(0, parse_word(2, "b")) == 1);
    CHECK(g.act(0, parse_word(2, "e")) == 0);
    CHECK(g.act(0, parse_word(2, "bab")) == 0);  // a fixes both vertices, b^2 closes
    CHECK(g.act(1, parse_word(2, "B")) == 0);

    // act(act(v, w1), w2) == act(v, w1 w2), and act(., w) is a bijection
    std::mt19937_64 rng(11);
    SchreierGraph h = random_schreier(2, 17, 3);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Letter> l1, l2;
        for (int i = 0; i < 6; ++i) {
            l1.push_back(slot_letter(static_cast<int>(rng() % 4)));
            l2.push_back(slot_letter(static_cast<int>(rng() % 4)));
        }
        ReducedWord w1 = reduce(2, l1);
        ReducedWord w2 = reduce(2, l2);
        int v = static_cast<int>(rng() % h.vertex_count);
        CHECK(h.act(h.act(v, w1), w2) == h.act(v, concat(w1, w2)));
    }
    std::set<int> image;
    ReducedWord w = parse_word(2, "abAB");
    for (int v = 0; v < h.vertex_count; ++v) image.insert(h.act(v, w));
    CHECK(static_cast<int>(image.size()) == h.vertex_count);

    ReducedWord wrong_rank = parse_word(3, "c");
    CHECK_THROWS_AS(g.act(0, wrong_rank), std::invalid_argument);
}

TEST_CASE("rerooting shifts the base point") {
    SchreierGraph g = index2();
    SchreierGraph h = g.rerooted(1);
    CHECK(h.root == 1);
    CHECK(h.act(1, parse_word(2, "b")) == 0);
    CHECK_THROWS_AS(g.rerooted(2), std::invalid_argument);
}

TEST_CASE("validate reports defects") {
    // valid index-2 graph -> ok
    CHECK(validate(PartialLabeledGraph::from_graph(index2())).empty());
    // single vertex, all loops -> ok
    CHECK(validate(PartialLabeledGraph::from_graph(single_vertex(2))).empty());

    // V=3, a: 0->1->2, vertex 2 missing its a-image
    PartialLabeledGraph p(2, {{1, 2, -1}, {0, 1, 2}}, 0);
    auto viols = validate(p);
    REQUIRE(!viols.empty());
    bool found = false;
    for (const auto& v : viols)
        if (v.kind == Violation::Kind::MissingImage && v.vertex == 2 && v.gen == 0 &&
            !v.incoming)
            found = true;
    CHECK(found);
    CHECK(!viols[0].describe().empty());

    // rootless partial graphs are validated for global connectivity
    PartialLabeledGraph two_parts(1, {{0, 1}}, std::nullopt);
    auto dis = validate(two_parts);
    REQUIRE(!dis.empty());
    CHECK(dis[0].kind == Violation::Kind::Disconnected);

    // complete_graph round-trips a defect-free table
    SchreierGraph back = complete_graph(PartialLabeledGraph::from_graph(index2()));
    CHECK(back.vertex_count == 2);
    CHECK(back.perms == index2().perms);
}

TEST_CASE("balls have exact sizes") {
    auto tree = core_source(2, {});            // trivial subgroup: the 4-regular tree
    auto cyclic = core_source(2, {"a"});       // <a> <= F_2

    CHECK(tree->ball(0).vertex_count() == 1);
    CHECK(tree->ball(2).vertex_count() == 17);  // 1 + 4 + 12
    CHECK(cyclic->ball(1).vertex_count() == 3); // root + b, b^-1; a loops at root

    BallView b = cyclic->ball(1);
    CHECK(b.out[0][0] == 0);  // a-loop at the root
    CHECK(b.radius == 1);
    CHECK(b.dist[0] == 0);

    // radius-0 views carry no edges
    BallView pt = tree->ball(0);
    CHECK(pt.out.empty() == false);
    CHECK(pt.out[0][0] == -1);
    CHECK(pt.in[0][0] == -1);
}

TEST_CASE("sphere sizes match hand counts") {
    auto tree = core_source(2, {});
    auto cyclic = core_source(2, {"a"});
    FiniteGraphSource idx2(index2());

    CHECK(sphere_sizes(*tree, 3) == std::vector<long long>{1, 4, 12, 36});
    CHECK(sphere_sizes(*cyclic, 3) == std::vector<long long>{1, 2, 6, 18});
    CHECK(sphere_sizes(idx2, 3) == std::vector<long long>{1, 1, 0, 0});

    // partial sums of spheres give ball sizes
    auto sp = sphere_sizes(*tree, 6);
    long long total = 0;
    for (int r = 0; r <= 6; ++r) {
        total += sp[r];
        CHECK(total == static_cast<long long>(tree->ball(r).vertex_count()));
    }
}

TEST_CASE("canonical keys are relabeling-invariant") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + static_cast<int>(rng() % 2);
        int V = 2 + static_cast<int>(rng() % 30);
        SchreierGraph g = random_schreier(n, V, rng());
        SchreierGraph h1 = relabel(g, rng);
        SchreierGraph h2 = relabel(g, rng);
        int r = static_cast<int>(rng() % 4);
        NeighborhoodKey k1 = canonical_key(ball_of(h1, h1.root, r));
        NeighborhoodKey k2 = canonical_key(ball_of(h2, h2.root, r));
        CHECK(k1 == k2);
    }
}

TEST_CASE("canonical keys separate different neighborhoods") {
    auto tree = core_source(2, {});
    auto cyclic = core_source(2, {"a"});
    // the a-loop at the root changes the table
    CHECK(canonical_key(tree->ball(1)).key != canonical_key(cyclic->ball(1)).key);

    // two different vertices of a vertex-transitive torus look identical
    SchreierGraph t = torus_graph(2, 5);
    CHECK(canonical_key(ball_of(t, 3, 2)) == canonical_key(ball_of(t, 17, 2)));

    // key round-trips through hex and through decode_key
    NeighborhoodKey k = canonical_key(cyclic->ball(2));
    CHECK(key_unhex(key_hex(k.key)) == k.key);
    CHECK(canonical_key(decode_key(k.key)).key == k.key);
}

TEST_CASE("restricting a larger ball is projectively consistent") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        SchreierGraph g = random_schreier(2, 2 + static_cast<int>(rng() % 40), rng());
        int r = static_cast<int>(rng() % 3);
        BallView big = ball_of(g, g.root, r + 1);
        NeighborhoodKey direct = canonical_key(ball_of(g, g.root, r));
        NeighborhoodKey via = canonical_key(restrict_ball(big, r));
        CHECK(direct == via);
        CHECK(via.radius == r);
    }
    // also across a lazy source: the tree
    auto tree = core_source(2, {});
    CHECK(canonical_key(restrict_ball(tree->ball(4), 2)) == canonical_key(tree->ball(2)));
}

TEST_CASE("geodesic trees realize graph distance") {
    // index-2 graph: tree edge root --b--> other
    SchreierGraph g = index2();
    GeodesicTree t = geodesic_spanning_tree(g);
    CHECK(t.root == 0);
    CHECK(t.parent[1] == 0);
    CHECK(t.letter[1].gen == 2);  // b
    CHECK(!t.letter[1].inverse);
    CHECK(t.dist == std::vector<int>{0, 1});
    CHECK(word_str(tree_word(g, t, 1)) == "b");

    // torus (Z/5)^2: tree distances match BFS distances
    SchreierGraph torus = torus_graph(2, 5);
    GeodesicTree tt = geodesic_spanning_tree(torus);
    std::vector<int> ref = bfs_distances(torus, torus.root);
    CHECK(tt.dist == ref);
    for (int v = 0; v < torus.vertex_count; ++v) {
        ReducedWord path = tree_word(torus, tt, v);
        CHECK(static_cast<int>(path.letters.size()) == ref[v]);
        CHECK(torus.act(torus.root, path) == v);
    }

    // a tree input yields itself: depth-3 completion ball of <a, b^2>
    auto src = core_source(2, {"a", "bb"});
    GeodesicTree bt = geodesic_spanning_tree(src->ball(3));
    for (std::size_t v = 0; v < bt.dist.size(); ++v)
        CHECK(bt.dist[v] == src->ball(3).dist[v]);
}

TEST_CASE("fundamental group generators fix the root") {
    // single vertex, n=2: generators {a, b}
    SchreierGraph one = single_vertex(2);
    auto gens1 = fundamental_group_generators(one, geodesic_spanning_tree(one));
    REQUIRE(gens1.size() == 2);
    std::set<std::string> names;
    for (const auto& w : gens1) names.insert(word_str(w));
    CHECK(names == std::set<std::string>{"a", "b"});

    // index-2 graph: 3 generators, {a, bab^-1, b^2} after reduction
    SchreierGraph g = index2();
    auto gens2 = fundamental_group_generators(g, geodesic_spanning_tree(g));
    REQUIRE(gens2.size() == 3);
    std::set<std::string> got;
    for (const auto& w : gens2) {
        CHECK(g.act(g.root, w) == g.root);
        got.insert(word_str(w));
    }
    CHECK(got == std::set<std::string>{"a", "baB", "bb"});

    // torus (Z/2)^2 has V=4: rank (n-1)V + 1 = 5
    SchreierGraph t22 = torus_graph(2, 2);
    CHECK(fundamental_group_generators(t22, geodesic_spanning_tree(t22)).size() == 5);

    // randomized: count and root-fixing
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(rng() % 2);
        int V = 1 + static_cast<int>(rng() % 50);
        SchreierGraph h = random_schreier(n, V, rng());
        auto gens = fundamental_group_generators(h, geodesic_spanning_tree(h));
        CHECK(static_cast<int>(gens.size()) == (n - 1) * V + 1);
        for (const auto& w : gens) CHECK(h.act(h.root, w) == h.root);
    }
}

TEST_CASE("k-cycle detection at the root") {
    auto tree = core_source(2, {});
    for (int k = 1; k <= 6; ++k) CHECK(!detect_k_cycle(*tree, k));

    auto cyclic = core_source(2, {"a"});
    CHECK(detect_k_cycle(*cyclic, 1));   // a-loop
    CHECK(!detect_k_cycle(*cyclic, 2));

    auto lattice = lattice_source(2);
    CHECK(detect_k_cycle(*lattice, 4));  // commutator square
    CHECK(!detect_k_cycle(*lattice, 3));

    // pair of distinct parallel edges: V=2, both generators swap
    SchreierGraph par(2, {{1, 0}, {1, 0}}, 0);
    FiniteGraphSource ps(par);
    CHECK(detect_k_cycle(ps, 2));
    CHECK(!detect_k_cycle(ps, 1));

    // center_on_k_cycle agrees with the source-level call
    CHECK(center_on_k_cycle(cyclic->ball(1), 1));
    CHECK(!center_on_k_cycle(tree->ball(2), 4));
}

TEST_CASE("walkers track the root") {
    auto cyclic = core_source(2, {"a"});
    auto w = cyclic->make_walker();
    CHECK(w->at_root());
    w->step(0);  // a fixes the root coset
    CHECK(w->at_root());
    w->step(2);  // b leaves
    CHECK(!w->at_root());
    w->step(3);  // b^-1 returns
    CHECK(w->at_root());
    w->reset();
    CHECK(w->at_root());
}

TEST_CASE("sgf round-trips graphs bit-exactly") {
    SchreierGraph g = random_schreier(2, 9, 42);
    std::string text = write_sgf(g);
    SgfData d = parse_sgf(text);
    REQUIRE(d.complete());
    CHECK(d.graph->perms == g.perms);
    CHECK(d.graph->root == g.root);
    CHECK(write_sgf(*d.graph) == text);

    // partial graphs keep their holes; field line round-trips
    PartialLabeledGraph p(2, {{1, 2, -1}, {0, 1, 2}}, 0);
    std::vector<std::uint8_t> bits{1, 0, 1};
    std::string ptext = write_sgf(p, &bits);
    SgfData pd = parse_sgf(ptext);
    CHECK(!pd.complete());
    CHECK(pd.partial.out == p.out);
    REQUIRE(pd.field_bits.has_value());
    CHECK(*pd.field_bits == bits);
    CHECK(write_sgf(pd.partial, &*pd.field_bits) == ptext);

    // comments are skipped
    SgfData c = parse_sgf("# comment\nschreier 1 1 0\n0\n");
    CHECK(c.complete());
}

TEST_CASE("sgf parse errors carry positions") {
    CHECK_THROWS_AS(parse_sgf(""), ParseError);
    CHECK_THROWS_AS(parse_sgf("schreier 2 2\n"), ParseError);           // missing root
    CHECK_THROWS_AS(parse_sgf("schreier 1 2 0\n0 x\n"), ParseError);    // non-integer
    CHECK_THROWS_AS(parse_sgf("schreier 1 2 0\n0\n"), ParseError);      // short row
    CHECK_THROWS_AS(parse_sgf("schreier 1 2 5\n1 0\n"), ParseError);    // root out of range
    CHECK_THROWS_AS(parse_sgf("schreier 1 2 0\n0 0\n"), ParseError);    // duplicate image
    try {
        parse_sgf("schreier 1 2 0\n0 x\n");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}
