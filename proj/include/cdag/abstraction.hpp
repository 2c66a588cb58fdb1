#pragma once

#include <set>
#include <string>
#include <vector>

#include "cdag/cdag.hpp"
#include "cdag/graph.hpp"

namespace cdag {

// Cluster-level abstraction of a micro graph: one cluster edge V -> W per
// inter- or intra-cluster micro edge direction, V <-> W likewise. The
// partition must cover the graph's vertices exactly (cluster V with
// cardinality k owns V.1 .. V.k).
CDag project(const Admg& g, const std::vector<Cluster>& partition);

// True iff g projects onto exactly the edges of c. The vertex sets must
// already agree; a mismatch is an error, not a negative answer.
bool isCompatible(const Admg& g, const CDag& c);

// The compatible graph that realizes every bidirected cluster edge with all
// micro pairs, every directed self loop with all ascending intra-cluster
// edges, and every cross cluster edge V -> W with the single edge V.1 -> W.#W.
// Unions of this graph with any compatible graph stay compatible.
struct CanonicalGraph {
    Admg graph;
    CDag source;
};

CanonicalGraph canonicalGraph(const CDag& c);

// The canonical graph plus every directed micro edge that realizes some
// cluster edge and individually keeps the canonical graph acyclic. Possibly
// cyclic as a whole; contains every compatible graph up to within-cluster
// index permutation. `eligible` holds the directed edges beyond the
// canonical ones.
struct UnfoldedGraph {
    MixedGraph graph;
    CanonicalGraph canonical;
    std::set<Edge> eligible;
};

UnfoldedGraph unfoldedGraph(const CDag& c);

// Line-oriented rendering, mirroring the C-DAG format:
//   vertex A.1
//   edge A.1 -> B.2
//   edge B.1 <-> B.2
// printUnfolded appends an `eligible` token to the non-canonical edges.
std::string printMicroGraph(const MixedGraph& g);
std::string printUnfolded(const UnfoldedGraph& u);

}  // namespace cdag
