#include <doctest.h>

#include <random>
#include <stdexcept>

#include "cdag/graph.hpp"
#include "helpers.hpp"

using namespace cdag;
using namespace testutil;

TEST_CASE("vertices are stored sorted and deduplicated") {
    MixedGraph g({mv("B.1"), mv("A.2"), mv("A.1"), mv("A.2")}, {}, {});
    REQUIRE(g.vertexCount() == 3);
    CHECK(g.vertices()[0] == mv("A.1"));
    CHECK(g.vertices()[1] == mv("A.2"));
    CHECK(g.vertices()[2] == mv("B.1"));
    CHECK(g.indexOf(mv("A.2")) == 1);
    CHECK(g.indexOf(mv("C.1")) == -1);
}

TEST_CASE("edge construction validates endpoints") {
    CHECK_THROWS_AS(makeGraph({"A.1"}, {{"A.1", "B.1"}}), std::invalid_argument);
    CHECK_THROWS_AS(makeGraph({"A.1", "B.1"}, {{"A.1", "A.1"}}), std::invalid_argument);
    CHECK_THROWS_AS(makeGraph({"A.1", "B.1"}, {}, {{"B.1", "B.1"}}), std::invalid_argument);
}

TEST_CASE("edge queries and canonical edge listing") {
    auto g = makeGraph({"A.1", "B.1", "C.1"}, {{"B.1", "A.1"}, {"A.1", "C.1"}}, {{"C.1", "B.1"}});
    CHECK(g.hasDirected(mv("B.1"), mv("A.1")));
    CHECK_FALSE(g.hasDirected(mv("A.1"), mv("B.1")));
    CHECK(g.hasBidirected(mv("B.1"), mv("C.1")));
    CHECK(g.hasBidirected(mv("C.1"), mv("B.1")));
    CHECK(g.directedCount() == 2);
    CHECK(g.bidirectedCount() == 1);
    auto dir = g.directedEdges();
    REQUIRE(dir.size() == 2);
    CHECK(dir[0] == Edge{mv("A.1"), mv("C.1")});
    CHECK(dir[1] == Edge{mv("B.1"), mv("A.1")});
    auto bi = g.bidirectedEdges();
    REQUIRE(bi.size() == 1);
    CHECK(bi[0] == Edge{mv("B.1"), mv("C.1")});
}

TEST_CASE("acyclicity ignores bidirected edges") {
    CHECK(isAcyclic(makeGraph({"A.1", "A.2", "B.1"}, {{"A.1", "B.1"}, {"B.1", "A.2"}})));
    CHECK_FALSE(isAcyclic(makeGraph({"A.1", "B.1"}, {{"A.1", "B.1"}, {"B.1", "A.1"}})));
    CHECK(isAcyclic(makeGraph({"A.1", "B.1"}, {}, {{"A.1", "B.1"}})));
    CHECK(isAcyclic(MixedGraph({}, {}, {})));
    CHECK_FALSE(isAcyclic(makeGraph({"A.1", "B.1", "C.1"},
                                    {{"A.1", "B.1"}, {"B.1", "C.1"}, {"C.1", "A.1"}})));
}

TEST_CASE("Admg construction rejects directed cycles") {
    CHECK_NOTHROW(Admg(makeGraph({"A.1", "B.1"}, {{"A.1", "B.1"}}, {{"A.1", "B.1"}})));
    CHECK_THROWS_AS(Admg(makeGraph({"A.1", "B.1"}, {{"A.1", "B.1"}, {"B.1", "A.1"}})),
                    std::invalid_argument);
}

namespace {

// 15-vertex ADMG used by several fixtures below.
MixedGraph pipelineGraph() {
    return makeGraph(
        {"X.1", "X.2", "X.3", "A.1", "B.1", "B.2", "B.3", "B.4", "C.1", "D.1", "D.2", "Y.1",
         "Y.2", "Y.3", "Y.4"},
        {{"C.1", "B.4"},
         {"A.1", "X.2"},
         {"C.1", "Y.2"},
         {"B.2", "X.3"},
         {"B.1", "D.2"},
         {"D.1", "B.3"},
         {"X.2", "B.3"},
         {"D.2", "B.3"},
         {"D.2", "B.2"},
         {"B.2", "A.1"},
         {"B.1", "A.1"},
         {"B.1", "D.1"},
         {"D.1", "Y.2"},
         {"D.1", "Y.3"},
         {"B.3", "C.1"}},
        {{"D.2", "C.1"}});
}

MixedGraph counterexampleGraph() {
    return makeGraph(
        {"X.1", "Y.1", "Z1.1", "Z2.1", "A.1", "A.2", "A.3"},
        {{"Y.1", "Z1.1"},
         {"Z1.1", "X.1"},
         {"X.1", "A.2"},
         {"A.2", "Z2.1"},
         {"Z2.1", "A.3"},
         {"A.1", "A.2"},
         {"A.1", "Y.1"}});
}

}  // namespace

TEST_CASE("ancestors are reflexive and follow directed paths backwards") {
    auto g = pipelineGraph();
    CHECK(ancestors(g, {}) == VertexSet{});
    CHECK(ancestors(g, vs({"X.1"})) == vs({"X.1"}));
    CHECK(ancestors(g, vs({"C.1"})) ==
          vs({"A.1", "B.1", "B.2", "B.3", "C.1", "D.1", "D.2", "X.2"}));
    CHECK(ancestors(g, vs({"C.1"})) == naiveAncestors(g, vs({"C.1"})));
    CHECK_THROWS_AS(ancestors(g, vs({"Q.1"})), std::invalid_argument);
}

TEST_CASE("ancestors grow monotonically with the seed set") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = randomAdmg(rng, 7, 0.3, 0.2);
        VertexSet a, b, unused;
        randomDisjointSets(rng, g, a, b, unused);
        VertexSet both = a;
        both.insert(b.begin(), b.end());
        auto ancA = ancestors(g, a);
        auto ancBoth = ancestors(g, both);
        for (const auto& v : ancA) CHECK(ancBoth.count(v) == 1);
        CHECK(ancBoth == naiveAncestors(g, both));
    }
}

TEST_CASE("mutilation removes heads into over and tails out of under") {
    auto g = makeGraph({"A.1", "B.1", "C.1", "D.1"}, {{"A.1", "B.1"}, {"B.1", "C.1"}},
                       {{"A.1", "B.1"}, {"C.1", "D.1"}});

    auto over = mutilate(g, vs({"B.1"}), {});
    CHECK(over.directedEdges() == std::vector<Edge>{{mv("B.1"), mv("C.1")}});
    CHECK(over.bidirectedEdges() == std::vector<Edge>{{mv("C.1"), mv("D.1")}});

    auto under = mutilate(g, {}, vs({"B.1"}));
    CHECK(under.directedEdges() == std::vector<Edge>{{mv("A.1"), mv("B.1")}});
    CHECK(under.bidirectedCount() == 2);

    CHECK(mutilate(g, {}, {}) == g);
    CHECK(under.vertices() == g.vertices());
}

TEST_CASE("mutilation is idempotent") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = randomAdmg(rng, 6, 0.4, 0.3);
        VertexSet over, under, unused;
        randomDisjointSets(rng, g, over, under, unused);
        auto once = mutilate(g, over, under);
        CHECK(mutilate(once, over, under) == once);
    }
}

TEST_CASE("d-separation on the textbook primitives") {
    Admg chain(makeGraph({"M.1", "X.1", "Y.1"}, {{"X.1", "M.1"}, {"M.1", "Y.1"}}));
    CHECK_FALSE(dSeparated(chain, vs({"X.1"}), vs({"Y.1"}), {}));
    CHECK(dSeparated(chain, vs({"X.1"}), vs({"Y.1"}), vs({"M.1"})));

    Admg fork(makeGraph({"M.1", "X.1", "Y.1"}, {{"M.1", "X.1"}, {"M.1", "Y.1"}}));
    CHECK_FALSE(dSeparated(fork, vs({"X.1"}), vs({"Y.1"}), {}));
    CHECK(dSeparated(fork, vs({"X.1"}), vs({"Y.1"}), vs({"M.1"})));

    Admg collider(makeGraph({"C.1", "D.1", "X.1", "Y.1"},
                            {{"X.1", "C.1"}, {"Y.1", "C.1"}, {"C.1", "D.1"}}));
    CHECK(dSeparated(collider, vs({"X.1"}), vs({"Y.1"}), {}));
    CHECK_FALSE(dSeparated(collider, vs({"X.1"}), vs({"Y.1"}), vs({"C.1"})));
    CHECK_FALSE(dSeparated(collider, vs({"X.1"}), vs({"Y.1"}), vs({"D.1"})));

    Admg confounded(makeGraph({"X.1", "Y.1"}, {}, {{"X.1", "Y.1"}}));
    CHECK_FALSE(dSeparated(confounded, vs({"X.1"}), vs({"Y.1"}), {}));

    Admg spider(makeGraph({"M.1", "X.1", "Y.1"}, {}, {{"X.1", "M.1"}, {"M.1", "Y.1"}}));
    CHECK(dSeparated(spider, vs({"X.1"}), vs({"Y.1"}), {}));
    CHECK_FALSE(dSeparated(spider, vs({"X.1"}), vs({"Y.1"}), vs({"M.1"})));
}

TEST_CASE("d-separation handles empty and overlapping query sets") {
    Admg g(makeGraph({"X.1", "Y.1"}, {{"X.1", "Y.1"}}));
    CHECK(dSeparated(g, {}, vs({"Y.1"}), {}));
    CHECK(dSeparated(g, vs({"X.1"}), {}, {}));
    CHECK_THROWS_AS(dSeparated(g, vs({"X.1"}), vs({"X.1"}), {}), std::invalid_argument);
    CHECK_THROWS_AS(dSeparated(g, vs({"X.1"}), vs({"Y.1"}), vs({"Y.1"})), std::invalid_argument);
}

TEST_CASE("the counterexample graph leaves X and Y dependent given both Z blocks") {
    Admg g(counterexampleGraph());
    CHECK_FALSE(dSeparated(g, vs({"X.1"}), vs({"Y.1"}), vs({"Z1.1", "Z2.1"})));
    // Collider A.2 is opened through its descendant Z2.1; conditioning away
    // that descendant closes the path again.
    CHECK(dSeparated(g, vs({"X.1"}), vs({"Y.1"}), vs({"Z1.1"})));
}

TEST_CASE("d-separation is symmetric in x and y") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 150; ++trial) {
        auto g = randomAdmg(rng, 7, 0.35, 0.25);
        VertexSet x, y, z;
        randomDisjointSets(rng, g, x, y, z);
        Admg a(g);
        CHECK(dSeparated(a, x, y, z) == dSeparated(a, y, x, z));
    }
}

TEST_CASE("d-separation agrees with exhaustive path enumeration") {
    std::mt19937_64 rng(424242);
    int connectedSeen = 0, separatedSeen = 0;
    for (int trial = 0; trial < 300; ++trial) {
        int n = 3 + static_cast<int>(rng() % 6);
        auto g = randomAdmg(rng, n, 0.35, 0.2);
        Admg a(g);
        for (int q = 0; q < 15; ++q) {
            VertexSet x, y, z;
            randomDisjointSets(rng, g, x, y, z);
            bool fast = dSeparated(a, x, y, z);
            bool slow = naiveDSeparated(g, x, y, z);
            REQUIRE(fast == slow);
            (fast ? separatedSeen : connectedSeen)++;
        }
    }
    CHECK(connectedSeen > 500);
    CHECK(separatedSeen > 500);
}

TEST_CASE("mask-level d-connection applies mutilation on the fly") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 150; ++trial) {
        auto g = randomAdmg(rng, 6, 0.4, 0.3);
        VertexSet x, y, z, over, under, unused;
        randomDisjointSets(rng, g, x, y, z);
        randomDisjointSets(rng, g, over, under, unused);
        std::size_t n = g.vertexCount();
        std::vector<std::uint64_t> par(n), ch(n), sib(n);
        for (std::size_t i = 0; i < n; ++i) {
            par[i] = g.parentMask(i);
            ch[i] = g.childMask(i);
            sib[i] = g.siblingMask(i);
        }
        bool overlapping = false;
        for (const auto& v : x)
            if (y.count(v) || z.count(v)) overlapping = true;
        for (const auto& v : y)
            if (z.count(v)) overlapping = true;
        if (overlapping) continue;
        bool fast = detail::dConnected(n, par.data(), ch.data(), sib.data(),
                                       detail::maskOf(g, x), detail::maskOf(g, y),
                                       detail::maskOf(g, z), detail::maskOf(g, over),
                                       detail::maskOf(g, under));
        bool reference = !dSeparated(Admg(mutilate(g, over, under)), x, y, z);
        CHECK(fast == reference);
    }
}

TEST_CASE("graph unions merge vertex and edge sets") {
    auto a = makeGraph({"A.1", "B.1"}, {{"A.1", "B.1"}});
    auto b = makeGraph({"B.1", "C.1"}, {{"B.1", "C.1"}}, {{"B.1", "C.1"}});
    auto u = unionGraphs(a, b);
    CHECK(u.vertexCount() == 3);
    CHECK(u.hasDirected(mv("A.1"), mv("B.1")));
    CHECK(u.hasDirected(mv("B.1"), mv("C.1")));
    CHECK(u.hasBidirected(mv("B.1"), mv("C.1")));
    CHECK(unionGraphs(a, a) == a);
}
