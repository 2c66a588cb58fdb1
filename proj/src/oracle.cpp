#include "cdag/oracle.hpp"

#include <bit>
#include <string>
#include <utility>

namespace cdag {

namespace {

// Micro edges that would realize the cluster edge. Bidirected pairs are
// unordered, so intra-cluster ones are emitted ascending only.
std::vector<Edge> realizers(const CDag& c, const ClusterEdge& e, bool directed) {
    std::vector<Edge> out;
    int kv = c.cardinality(e.first);
    int kw = c.cardinality(e.second);
    for (int i = 1; i <= kv; ++i)
        for (int j = 1; j <= kw; ++j) {
            if (e.first == e.second) {
                if (i == j) continue;
                if (!directed && i > j) continue;
            }
            out.push_back({{e.first, i}, {e.second, j}});
        }
    return out;
}

std::uint64_t ancestorsWithOver(const MixedGraph& g, std::uint64_t seed,
                                std::uint64_t over) {
    std::uint64_t out = seed;
    for (bool grew = true; grew;) {
        grew = false;
        for (std::uint64_t m = out & ~over; m; m &= m - 1) {
            unsigned v = static_cast<unsigned>(std::countr_zero(m));
            std::uint64_t next = out | g.parentMask(v);
            if (next != out) {
                out = next;
                grew = true;
            }
        }
    }
    return out;
}

struct MaskedGraph {
    std::size_t n;
    std::vector<std::uint64_t> par, ch, sib;

    explicit MaskedGraph(const MixedGraph& g) : n(g.vertexCount()), par(n), ch(n), sib(n) {
        for (std::size_t i = 0; i < n; ++i) {
            par[i] = g.parentMask(i);
            ch[i] = g.childMask(i);
            sib[i] = g.siblingMask(i);
        }
    }

    bool connected(std::uint64_t x, std::uint64_t y, std::uint64_t z,
                   std::uint64_t over, std::uint64_t under) const {
        return detail::dConnected(n, par.data(), ch.data(), sib.data(), x, y, z, over,
                                  under);
    }
};

void requireDisjoint(std::uint64_t a, std::uint64_t b, const char* what) {
    if (a & b) throw std::invalid_argument(std::string("query sets overlap: ") + what);
}

}  // namespace

void forEachCompatible(const CDag& c, const std::function<bool(const Admg&)>& visit,
                       const EnumerationBudget& budget) {
    VertexSet vset = allMicroVertices(c);
    if (vset.size() > budget.maxMicroVertices)
        throw BudgetExceeded("C-DAG spans " + std::to_string(vset.size()) +
                             " micro vertices; enumeration budget allows " +
                             std::to_string(budget.maxMicroVertices));
    std::vector<MicroVertex> verts(vset.begin(), vset.end());

    struct Slot {
        std::vector<Edge> candidates;
        bool directed;
    };
    std::vector<Slot> slots;
    for (const ClusterEdge& e : c.directed()) slots.push_back({realizers(c, e, true), true});
    for (const ClusterEdge& e : c.bidirected())
        slots.push_back({realizers(c, e, false), false});
    for (const Slot& s : slots)
        if (s.candidates.size() > 30)
            throw BudgetExceeded("cluster edge admits " +
                                 std::to_string(s.candidates.size()) +
                                 " realizers; enumeration would not terminate");

    std::vector<Edge> dir, bidir;
    std::uint64_t visited = 0;
    std::uint64_t steps = 0;
    const std::uint64_t maxSteps = budget.maxGraphs * 64;
    bool stop = false;

    std::function<void(std::size_t)> rec = [&](std::size_t si) {
        if (stop) return;
        if (si == slots.size()) {
            if (++visited > budget.maxGraphs)
                throw BudgetExceeded("more than " + std::to_string(budget.maxGraphs) +
                                     " compatible graphs");
            if (!visit(Admg(MixedGraph(verts, dir, bidir)))) stop = true;
            return;
        }
        const Slot& slot = slots[si];
        const std::uint32_t subsets = std::uint32_t{1} << slot.candidates.size();
        for (std::uint32_t mask = 1; mask < subsets && !stop; ++mask) {
            if (++steps > maxSteps)
                throw BudgetExceeded("enumeration exceeded its step budget");
            std::vector<Edge>& side = slot.directed ? dir : bidir;
            std::size_t before = side.size();
            for (std::uint32_t m = mask; m; m &= m - 1)
                side.push_back(slot.candidates[std::countr_zero(m)]);
            if (!slot.directed || isAcyclic(MixedGraph(verts, dir, {})))
                rec(si + 1);
            side.resize(before);
        }
    };
    rec(0);
}

std::vector<Admg> enumerateCompatible(const CDag& c, const EnumerationBudget& budget) {
    std::vector<Admg> out;
    forEachCompatible(
        c,
        [&](const Admg& g) {
            out.push_back(g);
            return true;
        },
        budget);
    return out;
}

std::uint64_t countCompatible(const CDag& c, const EnumerationBudget& budget) {
    std::uint64_t n = 0;
    forEachCompatible(
        c,
        [&](const Admg&) {
            ++n;
            return true;
        },
        budget);
    return n;
}

bool ruleHoldsIn(const Admg& g, Rule rule, const VertexSet& w, const VertexSet& x,
                 const VertexSet& y, const VertexSet& z) {
    const MixedGraph& m = g.graph();
    std::uint64_t wm = detail::maskOf(m, w);
    std::uint64_t xm = detail::maskOf(m, x);
    std::uint64_t ym = detail::maskOf(m, y);
    std::uint64_t zm = detail::maskOf(m, z);
    requireDisjoint(wm, xm, "w and x");
    requireDisjoint(wm, ym, "w and y");
    requireDisjoint(wm, zm, "w and z");
    requireDisjoint(xm, ym, "x and y");
    requireDisjoint(xm, zm, "x and z");
    requireDisjoint(ym, zm, "y and z");

    MaskedGraph mg(m);
    std::uint64_t cond = zm | wm;
    switch (rule) {
        case Rule::Rule1:
            return !mg.connected(xm, ym, cond, wm, 0);
        case Rule::Rule2:
            return !mg.connected(xm, ym, cond, wm, xm);
        case Rule::Rule3: {
            std::uint64_t anc = ancestorsWithOver(m, zm, wm);
            return !mg.connected(xm, ym, cond, wm | (xm & ~anc), 0);
        }
        case Rule::Separation:
            break;
    }
    throw std::invalid_argument("separation queries carry explicit mutilation sets");
}

bool separationHoldsIn(const Admg& g, const VertexSet& x, const VertexSet& y,
                       const VertexSet& z, const VertexSet& over, const VertexSet& under) {
    const MixedGraph& m = g.graph();
    std::uint64_t xm = detail::maskOf(m, x);
    std::uint64_t ym = detail::maskOf(m, y);
    std::uint64_t zm = detail::maskOf(m, z);
    requireDisjoint(xm, ym, "x and y");
    requireDisjoint(xm, zm, "x and z");
    requireDisjoint(ym, zm, "y and z");
    return !MaskedGraph(m).connected(xm, ym, zm, detail::maskOf(m, over),
                                     detail::maskOf(m, under));
}

OracleVerdict bruteForceCheck(const CDag& c, const RuleQuery& q,
                              const EnumerationBudget& budget) {
    validateQuery(c, q);
    VertexSet w = microVertices(c, q.w);
    VertexSet x = microVertices(c, q.x);
    VertexSet y = microVertices(c, q.y);
    VertexSet z = microVertices(c, q.z);
    VertexSet over = microVertices(c, q.over);
    VertexSet under = microVertices(c, q.under);

    OracleVerdict out;
    forEachCompatible(
        c,
        [&](const Admg& g) {
            ++out.inspected;
            bool ok = q.rule == Rule::Separation
                          ? separationHoldsIn(g, x, y, z, over, under)
                          : ruleHoldsIn(g, q.rule, w, x, y, z);
            if (!ok) {
                out.holds = false;
                out.violator = g;
                return false;
            }
            return true;
        },
        budget);
    return out;
}

}  // namespace cdag
