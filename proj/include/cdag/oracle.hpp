#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cdag/cdag.hpp"
#include "cdag/graph.hpp"
#include "cdag/rules.hpp"

namespace cdag {

// Guards against combinatorial blowups in the brute-force paths. Enumeration
// throws rather than silently truncating.
struct EnumerationBudget {
    std::uint64_t maxGraphs = 1'000'000;
    std::size_t maxMicroVertices = 10;
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Visits every graph compatible with c exactly once, in a deterministic
// order (cluster edges in canonical order, realizer subsets by increasing
// bitmask). Graphs are labeled: within-cluster index permutations of one
// graph are distinct visits. The visitor returns false to stop early.
// An unrealizable C-DAG yields no visits.
void forEachCompatible(const CDag& c, const std::function<bool(const Admg&)>& visit,
                       const EnumerationBudget& budget = {});

std::vector<Admg> enumerateCompatible(const CDag& c, const EnumerationBudget& budget = {});
std::uint64_t countCompatible(const CDag& c, const EnumerationBudget& budget = {});

// Graphical criteria for a single graph, micro-level sets. The conditioning
// set is z together with w.
bool ruleHoldsIn(const Admg& g, Rule rule, const VertexSet& w, const VertexSet& x,
                 const VertexSet& y, const VertexSet& z);

// d-separation after stripping arrowheads into `over` and directed edges out
// of `under`.
bool separationHoldsIn(const Admg& g, const VertexSet& x, const VertexSet& y,
                       const VertexSet& z, const VertexSet& over, const VertexSet& under);

// Decides a cluster-level query by checking every compatible graph. The
// reference answer the search engine is measured against.
struct OracleVerdict {
    bool holds = true;
    std::optional<Admg> violator;  // first counterexample in enumeration order
    std::uint64_t inspected = 0;
};

OracleVerdict bruteForceCheck(const CDag& c, const RuleQuery& q,
                              const EnumerationBudget& budget = {});

}  // namespace cdag
