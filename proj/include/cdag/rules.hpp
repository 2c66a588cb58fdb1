#pragma once

#include "cdag/cdag.hpp"

namespace cdag {

// The three rewrite rules of do-calculus plus plain d-separation.
//   Rule1: P(y | do(w), x, z) = P(y | do(w), z)
//   Rule2: P(y | do(w), do(x), z) = P(y | do(w), x, z)
//   Rule3: P(y | do(w), do(x), z) = P(y | do(w), z)
enum class Rule { Rule1, Rule2, Rule3, Separation };

// Cluster-level query against the whole compatible class. The rules use
// w, x, y, z; Separation uses x, y, z plus the mutilation sets `over`
// (strip arrowheads into these clusters) and `under` (strip directed edges
// out of them).
struct RuleQuery {
    Rule rule = Rule::Separation;
    ClusterSet w, x, y, z;
    ClusterSet over, under;
};

// Throws std::invalid_argument on unknown cluster names, overlapping
// w/x/y/z, or mutilation sets on a non-separation query (and w on a
// separation one).
void validateQuery(const CDag& c, const RuleQuery& q);

}  // namespace cdag
