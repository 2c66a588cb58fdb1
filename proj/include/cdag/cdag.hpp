#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cdag/graph.hpp"

namespace cdag {

struct Cluster {
    std::string name;
    int cardinality = 1;

    bool operator==(const Cluster&) const = default;
};

using ClusterSet = std::set<std::string>;
using ClusterEdge = std::pair<std::string, std::string>;

// A cluster DAG: clusters with cardinalities plus directed and bidirected
// cluster edges. Despite the name it may contain directed cycles and self
// loops; validate() decides whether any acyclic micro graph can realize it.
//
// Clusters keep their declaration order (it drives canonical printing);
// edges are kept as sets, bidirected ones normalized smaller-name-first.
class CDag {
public:
    CDag() = default;
    CDag(std::vector<Cluster> clusters,
         const std::vector<ClusterEdge>& directed,
         const std::vector<ClusterEdge>& bidirected);

    const std::vector<Cluster>& clusters() const { return clusters_; }
    const std::set<ClusterEdge>& directed() const { return directed_; }
    const std::set<ClusterEdge>& bidirected() const { return bidirected_; }

    bool hasCluster(const std::string& name) const;
    int cardinality(const std::string& name) const;  // throws on unknown name
    ClusterSet clusterNames() const;

    bool operator==(const CDag&) const = default;

private:
    std::vector<Cluster> clusters_;
    std::set<ClusterEdge> directed_;
    std::set<ClusterEdge> bidirected_;
};

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(const std::string& msg, int line, int column);
};

// Line-oriented text format:
//   # comment
//   cluster <name> <cardinality>
//   edge <name> -> <name>
//   edge <name> <-> <name>
// Names are [A-Za-z0-9_]+. Duplicate edges collapse; duplicate clusters are
// an error. Edges may reference clusters declared on any line.
CDag parseCDag(const std::string& text);

// Canonical form: clusters in declaration order, then directed edges sorted
// lexicographically, then bidirected edges. parseCDag(printCDag(c)) == c.
std::string printCDag(const CDag& c);

// True iff at least one acyclic micro graph realizes the C-DAG: there is no
// directed cycle through cardinality-1 clusters only and no bidirected self
// loop on a cardinality-1 cluster.
bool validate(const CDag& c);

// Caps every cardinality at 3; rule verdicts are invariant under this.
CDag reduceToThree(const CDag& c);

// Micro vertices of the named clusters: {V.i | V in names, 1 <= i <= #V}.
VertexSet microVertices(const CDag& c, const ClusterSet& names);
VertexSet allMicroVertices(const CDag& c);

}  // namespace cdag
