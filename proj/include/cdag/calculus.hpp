#pragma once

#include <optional>
#include <string>

#include "cdag/abstraction.hpp"
#include "cdag/cdag.hpp"
#include "cdag/graph.hpp"
#include "cdag/rules.hpp"
#include "cdag/structure.hpp"

namespace cdag {

// Outcome of a class-wide query. When the property fails somewhere in the
// class, witnessGraph is one compatible graph in which Pearl's corresponding
// per-graph condition fails, and witnessStructure is the connecting structure
// that certifies the failure inside the mutilated unfolded graph.
struct Verdict {
    RuleQuery query;
    bool holds = true;
    std::string statement;
    std::string note;  // nonempty for vacuous queries (empty x or y)
    std::optional<Admg> witnessGraph;
    std::optional<MixedGraph> witnessStructure;
};

// Caches the canonical and unfolded graphs of one C-DAG so repeated queries
// share them. Construction throws std::invalid_argument when the C-DAG
// admits no compatible graph. Immutable after construction.
class Engine {
  public:
    explicit Engine(CDag c);

    const CDag& cdag() const { return cdag_; }
    const UnfoldedGraph& unfolded() const { return unfolded_; }
    const CanonicalGraph& canonical() const { return unfolded_.canonical; }

    Verdict check(const RuleQuery& q) const;

  private:
    CDag cdag_;
    UnfoldedGraph unfolded_;
};

// Decides whether q holds in every graph compatible with c.
Verdict checkRule(const CDag& c, const RuleQuery& q);

// Class-wide d-separation of x and y given z, evaluated after removing the
// edges into `over` and out of `under` in every compatible graph.
Verdict clusterDSep(const CDag& c, const ClusterSet& x, const ClusterSet& y,
                    const ClusterSet& z, const ClusterSet& over = {},
                    const ClusterSet& under = {});

// Union of the canonical graph of c with sigma. Requires sigma to be a
// subgraph of the unfolded graph of c and the union to be acyclic; the
// result is then always compatible with c.
Admg buildWitness(const CDag& c, const MixedGraph& sigma);

// The equality (or separation claim) a verdict certifies, with cluster
// names substituted, e.g. "P(y | do(w), x, z) = P(y | do(w), z)".
std::string ruleStatement(const RuleQuery& q);

// Versioned JSON rendering of a verdict; field names are fixed in
// docs/formats.md.
std::string toJson(const Verdict& v);

}  // namespace cdag
