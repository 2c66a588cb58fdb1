#pragma once

#include <optional>
#include <string>

#include "cdag/graph.hpp"

namespace cdag {

// A structure of interest: a mixed graph with an acyclic directed part, a
// single connected component, in which every vertex either has at most one
// outgoing directed edge, or has exactly two outgoing ones and no incoming
// arrowhead at all (directed or bidirected). The empty graph does not count.
bool isStructureOfInterest(const MixedGraph& g);

// Vertices with no outgoing directed edge.
VertexSet structureRoots(const MixedGraph& g);

// sigma connects x and y under z iff it meets both x and y, all its roots
// lie in x, y or z, and none of its non-root vertices lies in z.
bool connects(const MixedGraph& sigma, const VertexSet& x, const VertexSet& y,
              const VertexSet& z);

// Searches host for a structure of interest that connects x and y under z,
// keeps base plus the structure acyclic, and roots only inside rootAllowed.
// host and base must share one vertex set; x, y, z must be pairwise disjoint
// subsets of it. Deterministic: the exploration walks path steps as outgoing,
// then incoming, then bidirected edges (targets ascending) and resolves
// forbidden roots through directed tails in the same order, so the first
// structure found is a pure function of the inputs.
std::optional<MixedGraph> findConnectingStructure(const MixedGraph& host,
                                                  const MixedGraph& base,
                                                  const VertexSet& x, const VertexSet& y,
                                                  const VertexSet& z,
                                                  const VertexSet& rootAllowed);

// Existence of a connecting structure in a single graph; equivalent to x and
// y being d-connected given z.
bool hasConnectingStructure(const Admg& g, const VertexSet& x, const VertexSet& y,
                            const VertexSet& z);

// printMicroGraph plus a trailing "roots:" line.
std::string printStructure(const MixedGraph& sigma);

}  // namespace cdag
