#include "cdag/abstraction.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cdag {

namespace {

// Cluster name of a micro vertex, or throw if it is not covered.
const std::string& clusterOf(const std::map<MicroVertex, const Cluster*>& owner,
                             const MicroVertex& v) {
    auto it = owner.find(v);
    if (it == owner.end())
        throw std::invalid_argument("vertex " + v.label() +
                                    " is not covered by the partition");
    return it->second->name;
}

}  // namespace

CDag project(const Admg& g, const std::vector<Cluster>& partition) {
    std::map<MicroVertex, const Cluster*> owner;
    std::size_t covered = 0;
    for (const Cluster& cl : partition) {
        for (int i = 1; i <= cl.cardinality; ++i) {
            MicroVertex v{cl.name, i};
            if (!owner.emplace(v, &cl).second)
                throw std::invalid_argument("partition repeats vertex " + v.label());
            ++covered;
        }
    }
    if (covered != g.vertices().size())
        throw std::invalid_argument("partition does not cover the graph's vertices");
    for (const MicroVertex& v : g.vertices()) clusterOf(owner, v);

    std::set<ClusterEdge> directed;
    std::set<ClusterEdge> bidirected;
    for (const Edge& e : g.graph().directedEdges())
        directed.insert({clusterOf(owner, e.first), clusterOf(owner, e.second)});
    for (const Edge& e : g.graph().bidirectedEdges()) {
        std::string a = clusterOf(owner, e.first);
        std::string b = clusterOf(owner, e.second);
        if (b < a) std::swap(a, b);
        bidirected.insert({a, b});
    }
    return CDag(partition,
                std::vector<ClusterEdge>(directed.begin(), directed.end()),
                std::vector<ClusterEdge>(bidirected.begin(), bidirected.end()));
}

bool isCompatible(const Admg& g, const CDag& c) {
    VertexSet expected = allMicroVertices(c);
    if (!std::equal(g.vertices().begin(), g.vertices().end(), expected.begin(),
                    expected.end()))
        throw std::invalid_argument("graph vertices do not match the C-DAG's clusters");
    CDag p = project(g, c.clusters());
    return p.directed() == c.directed() && p.bidirected() == c.bidirected();
}

CanonicalGraph canonicalGraph(const CDag& c) {
    if (!validate(c))
        throw std::invalid_argument("C-DAG admits no compatible graph");

    VertexSet vertices = allMicroVertices(c);
    std::vector<Edge> directed;
    std::vector<Edge> bidirected;

    for (const ClusterEdge& e : c.directed()) {
        if (e.first == e.second) {
            int k = c.cardinality(e.first);
            for (int i = 1; i <= k; ++i)
                for (int j = i + 1; j <= k; ++j)
                    directed.push_back({{e.first, i}, {e.first, j}});
        } else {
            directed.push_back({{e.first, 1}, {e.second, c.cardinality(e.second)}});
        }
    }
    for (const ClusterEdge& e : c.bidirected()) {
        if (e.first == e.second) {
            int k = c.cardinality(e.first);
            for (int i = 1; i <= k; ++i)
                for (int j = i + 1; j <= k; ++j)
                    bidirected.push_back({{e.first, i}, {e.first, j}});
        } else {
            int kv = c.cardinality(e.first);
            int kw = c.cardinality(e.second);
            for (int i = 1; i <= kv; ++i)
                for (int j = 1; j <= kw; ++j)
                    bidirected.push_back({{e.first, i}, {e.second, j}});
        }
    }

    std::vector<MicroVertex> vs(vertices.begin(), vertices.end());
    return CanonicalGraph{Admg(MixedGraph(vs, directed, bidirected)), c};
}

UnfoldedGraph unfoldedGraph(const CDag& c) {
    CanonicalGraph can = canonicalGraph(c);
    const MixedGraph& base = can.graph.graph();
    std::size_t n = base.vertices().size();

    // reach[i] = vertices reachable from i by directed edges (reflexive).
    std::vector<std::uint64_t> reach(n);
    for (std::size_t i = 0; i < n; ++i) reach[i] = std::uint64_t{1} << i;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t next = reach[i];
            std::uint64_t kids = base.childMask(i);
            for (std::uint64_t m = kids; m; m &= m - 1) {
                unsigned j = static_cast<unsigned>(std::countr_zero(m));
                next |= reach[j];
            }
            if (next != reach[i]) {
                reach[i] = next;
                changed = true;
            }
        }
    }

    std::set<Edge> eligible;
    std::vector<Edge> all = base.directedEdges();
    auto consider = [&](const MicroVertex& u, const MicroVertex& v) {
        if (base.hasDirected(u, v)) return;
        std::size_t iu = base.indexOf(u);
        std::size_t iv = base.indexOf(v);
        // u -> v closes a directed cycle iff v already reaches u.
        if (reach[iv] & (std::uint64_t{1} << iu)) return;
        eligible.insert({u, v});
        all.push_back({u, v});
    };
    for (const ClusterEdge& e : c.directed()) {
        int kv = c.cardinality(e.first);
        int kw = c.cardinality(e.second);
        for (int i = 1; i <= kv; ++i)
            for (int j = 1; j <= kw; ++j) {
                if (e.first == e.second && i == j) continue;
                consider({e.first, i}, {e.second, j});
            }
    }

    std::vector<MicroVertex> vs(base.vertices().begin(), base.vertices().end());
    MixedGraph g(vs, all, base.bidirectedEdges());
    return UnfoldedGraph{std::move(g), std::move(can), std::move(eligible)};
}

std::string printMicroGraph(const MixedGraph& g) {
    std::ostringstream out;
    for (const MicroVertex& v : g.vertices()) out << "vertex " << v.label() << "\n";
    for (const Edge& e : g.directedEdges())
        out << "edge " << e.first.label() << " -> " << e.second.label() << "\n";
    for (const Edge& e : g.bidirectedEdges())
        out << "edge " << e.first.label() << " <-> " << e.second.label() << "\n";
    return out.str();
}

std::string printUnfolded(const UnfoldedGraph& u) {
    std::ostringstream out;
    for (const MicroVertex& v : u.graph.vertices()) out << "vertex " << v.label() << "\n";
    for (const Edge& e : u.graph.directedEdges()) {
        out << "edge " << e.first.label() << " -> " << e.second.label();
        if (u.eligible.count(e)) out << " eligible";
        out << "\n";
    }
    for (const Edge& e : u.graph.bidirectedEdges())
        out << "edge " << e.first.label() << " <-> " << e.second.label() << "\n";
    return out.str();
}

}  // namespace cdag
