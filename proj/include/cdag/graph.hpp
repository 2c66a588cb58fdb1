#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace cdag {

// A vertex of a micro graph: the owning cluster name plus a 1-based index.
// Vertices order lexicographically by (cluster, index); this order is the
// canonical order used everywhere for deterministic iteration and output.
struct MicroVertex {
    std::string cluster;
    int index = 1;

    auto operator<=>(const MicroVertex&) const = default;

    // Rendered as "A.1". Cluster names never contain '.'.
    std::string label() const;
};

using VertexSet = std::set<MicroVertex>;
using Edge = std::pair<MicroVertex, MicroVertex>;

// Mixed graph over micro vertices with directed (->) and bidirected (<->)
// edges. Immutable after construction. Vertices are kept sorted in canonical
// order; adjacency is stored as 64-bit index masks, which caps a graph at 64
// vertices (far above anything this engine is meant for).
//
// Self edges are rejected. Duplicate vertices and edges are collapsed.
class MixedGraph {
public:
    MixedGraph() = default;
    MixedGraph(std::vector<MicroVertex> vertices,
               const std::vector<Edge>& directed,
               const std::vector<Edge>& bidirected);

    const std::vector<MicroVertex>& vertices() const { return verts_; }
    std::size_t vertexCount() const { return verts_.size(); }

    // Index of v in canonical order, or -1 when absent.
    int indexOf(const MicroVertex& v) const;
    bool hasVertex(const MicroVertex& v) const { return indexOf(v) >= 0; }
    bool hasDirected(const MicroVertex& from, const MicroVertex& to) const;
    bool hasBidirected(const MicroVertex& a, const MicroVertex& b) const;

    std::size_t directedCount() const;
    std::size_t bidirectedCount() const;

    // Edge lists in canonical order. Bidirected pairs come out with the
    // smaller endpoint first.
    std::vector<Edge> directedEdges() const;
    std::vector<Edge> bidirectedEdges() const;

    // Adjacency masks over vertex indices (bit i = vertices()[i]).
    std::uint64_t parentMask(std::size_t i) const { return par_[i]; }
    std::uint64_t childMask(std::size_t i) const { return ch_[i]; }
    std::uint64_t siblingMask(std::size_t i) const { return sib_[i]; }

    bool operator==(const MixedGraph&) const = default;

private:
    std::vector<MicroVertex> verts_;
    std::vector<std::uint64_t> par_, ch_, sib_;
};

// Directed-part acyclicity; bidirected edges are ignored.
bool isAcyclic(const MixedGraph& g);

// A mixed graph whose directed part is acyclic. Construction verifies this.
class Admg {
public:
    explicit Admg(MixedGraph g);

    const MixedGraph& graph() const { return g_; }
    const std::vector<MicroVertex>& vertices() const { return g_.vertices(); }

    bool operator==(const Admg&) const = default;

private:
    MixedGraph g_;
};

// Vertices with a directed path into s, including s itself.
VertexSet ancestors(const MixedGraph& g, const VertexSet& s);

// Removes every edge with an arrowhead at a vertex in `over` (directed heads
// and bidirected attachments) and every directed edge out of a vertex in
// `under`. Vertex set is unchanged.
MixedGraph mutilate(const MixedGraph& g, const VertexSet& over, const VertexSet& under);

// Classical d-separation with collider-descendant activation; bidirected
// edges carry arrowheads at both ends. x, y, z must be pairwise disjoint
// subsets of the vertices. Empty x or y is separated.
bool dSeparated(const Admg& g, const VertexSet& x, const VertexSet& y, const VertexSet& z);

// Union of vertex and edge sets.
MixedGraph unionGraphs(const MixedGraph& a, const MixedGraph& b);

namespace detail {

// Mask-level primitives shared by the hot paths (oracle scans, search).
std::uint64_t maskOf(const MixedGraph& g, const VertexSet& s);
VertexSet setFromMask(const MixedGraph& g, std::uint64_t mask);
std::uint64_t ancestorMask(const MixedGraph& g, std::uint64_t seed);

// d-connection on raw adjacency masks; `n` vertices, parents/children/
// siblings indexed as in MixedGraph. Pass mutilation sets as masks; they are
// applied on the fly without copying the graph.
bool dConnected(std::size_t n,
                const std::uint64_t* parents,
                const std::uint64_t* children,
                const std::uint64_t* siblings,
                std::uint64_t x, std::uint64_t y, std::uint64_t z,
                std::uint64_t over, std::uint64_t under);

}  // namespace detail

}  // namespace cdag
