#include "cdag/structure.hpp"

#include "cdag/abstraction.hpp"

#include <bit>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cdag {

namespace {

constexpr std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

}  // namespace

bool isStructureOfInterest(const MixedGraph& g) {
    std::size_t n = g.vertexCount();
    if (n == 0) return false;
    if (!isAcyclic(g)) return false;

    for (std::size_t i = 0; i < n; ++i) {
        int out = std::popcount(g.childMask(i));
        if (out <= 1) continue;
        if (out > 2) return false;
        if (g.parentMask(i) || g.siblingMask(i)) return false;
    }

    // One component under all edges regardless of orientation.
    std::uint64_t seen = 1;
    for (std::uint64_t front = 1; front;) {
        std::uint64_t next = 0;
        for (std::uint64_t m = front; m; m &= m - 1) {
            int v = std::countr_zero(m);
            next |= g.parentMask(v) | g.childMask(v) | g.siblingMask(v);
        }
        front = next & ~seen;
        seen |= next;
    }
    return seen == (n == 64 ? ~std::uint64_t{0} : bit(static_cast<int>(n)) - 1);
}

VertexSet structureRoots(const MixedGraph& g) {
    VertexSet out;
    for (std::size_t i = 0; i < g.vertexCount(); ++i)
        if (!g.childMask(i)) out.insert(g.vertices()[i]);
    return out;
}

bool connects(const MixedGraph& sigma, const VertexSet& x, const VertexSet& y,
              const VertexSet& z) {
    bool meetsX = false, meetsY = false;
    VertexSet roots = structureRoots(sigma);
    for (const MicroVertex& v : sigma.vertices()) {
        if (x.count(v)) meetsX = true;
        if (y.count(v)) meetsY = true;
        if (roots.count(v)) {
            if (!x.count(v) && !y.count(v) && !z.count(v)) return false;
        } else if (z.count(v)) {
            return false;
        }
    }
    return meetsX && meetsY;
}

namespace {

enum class Mark { None, Head, Tail };

// Backtracking search over structures in normal form: one simple path from
// x to y whose vertices carry head/tail marks, plus directed tails that
// discharge every vertex that ended up rootless without permission to be a
// root. A tail either reaches a vertex that may stay a root or merges into
// the structure built so far. Every added directed edge passes an
// incremental acyclicity check against base plus the current structure.
struct Searcher {
    const MixedGraph& host;
    std::size_t n;
    std::uint64_t xm, ym, zm, am;  // am: vertices permitted as roots

    std::uint64_t inSigma = 0;
    std::uint64_t forkLocked = 0;
    std::vector<std::pair<int, int>> dirEdges, bidirEdges;
    std::vector<int> pending;
    std::vector<std::uint64_t> reach;  // reflexive closure of base + sigma
    std::vector<std::vector<std::uint64_t>> guardStack;

    std::optional<MixedGraph> result;

    Searcher(const MixedGraph& host_, const MixedGraph& base, std::uint64_t x,
             std::uint64_t y, std::uint64_t z, std::uint64_t rootAllowed)
        : host(host_), n(host_.vertexCount()), xm(x), ym(y), zm(z),
          am((x | y | z) & rootAllowed), reach(n) {
        for (std::size_t i = 0; i < n; ++i) reach[i] = bit(static_cast<int>(i));
        for (bool grew = true; grew;) {
            grew = false;
            for (std::size_t i = 0; i < n; ++i) {
                std::uint64_t next = reach[i];
                for (std::uint64_t m = base.childMask(i); m; m &= m - 1)
                    next |= reach[std::countr_zero(m)];
                if (next != reach[i]) {
                    reach[i] = next;
                    grew = true;
                }
            }
        }
    }

    bool addDirected(int u, int v) {
        if (reach[v] & bit(u)) return false;
        guardStack.push_back(reach);
        for (std::size_t p = 0; p < n; ++p)
            if (reach[p] & bit(u)) reach[p] |= reach[v];
        dirEdges.push_back({u, v});
        return true;
    }

    void undoDirected() {
        dirEdges.pop_back();
        reach = std::move(guardStack.back());
        guardStack.pop_back();
    }

    void capture() {
        std::vector<MicroVertex> verts;
        for (std::uint64_t m = inSigma; m; m &= m - 1)
            verts.push_back(host.vertices()[std::countr_zero(m)]);
        std::vector<Edge> d, b;
        for (auto [u, v] : dirEdges) d.push_back({host.vertices()[u], host.vertices()[v]});
        for (auto [u, v] : bidirEdges)
            b.push_back({host.vertices()[u], host.vertices()[v]});
        result = MixedGraph(std::move(verts), d, b);
    }

    // Discharges pending[k..]: each must gain one outgoing directed edge.
    bool resolveRoots(std::size_t k) {
        if (k == pending.size()) {
            capture();
            return true;
        }
        int r = pending[k];
        for (std::uint64_t m = host.childMask(r); m; m &= m - 1) {
            int u = std::countr_zero(m);
            if (inSigma & bit(u)) {
                if (forkLocked & bit(u)) continue;
                if (!addDirected(r, u)) continue;
                if (resolveRoots(k + 1)) return true;
                undoDirected();
            } else {
                bool inZ = zm & bit(u);
                bool inA = am & bit(u);
                if (inZ && !inA) continue;  // may neither root here nor pass through
                if (!addDirected(r, u)) continue;
                inSigma |= bit(u);
                if (inZ) {
                    if (resolveRoots(k + 1)) return true;
                } else {
                    if (inA && resolveRoots(k + 1)) return true;
                    pending.push_back(u);
                    if (resolveRoots(k + 1)) return true;
                    pending.pop_back();
                }
                inSigma &= ~bit(u);
                undoDirected();
            }
        }
        return false;
    }

    // v is the current path end, entered with markIn (None at the start).
    bool extendPath(int v, Mark markIn) {
        auto tryStep = [&](int u, Mark outMark, Mark uMark, int kind) {
            if (inSigma & bit(u)) return false;
            if (xm & bit(u)) return false;  // a shorter path starts at u
            if (uMark == Mark::Tail && (zm & bit(u))) return false;

            bool fork = false;
            if (markIn != Mark::None) {
                bool collider = markIn == Mark::Head && outMark == Mark::Head;
                if (!collider) {
                    if (zm & bit(v)) return false;
                } else if ((zm & bit(v)) && !(am & bit(v))) {
                    return false;  // collider that must stay a root but may not
                }
                fork = markIn == Mark::Tail && outMark == Mark::Tail;
            }

            if (kind == 2) {
                bidirEdges.push_back({v, u});
            } else if (!addDirected(kind == 0 ? v : u, kind == 0 ? u : v)) {
                return false;
            }
            if (fork) forkLocked |= bit(v);
            std::size_t pendingMark = pending.size();
            if (markIn == Mark::Head && outMark == Mark::Head && !(zm & bit(v)))
                pending.push_back(v);  // collider outside z needs a tail
            if (markIn == Mark::None && outMark == Mark::Head && !(am & bit(v)))
                pending.push_back(v);  // rootless x endpoint needs a tail
            inSigma |= bit(u);

            bool ok;
            if (ym & bit(u)) {
                if (uMark == Mark::Head && !(am & bit(u))) pending.push_back(u);
                ok = resolveRoots(0);
            } else {
                ok = extendPath(u, uMark);
            }
            if (ok) return true;

            inSigma &= ~bit(u);
            pending.resize(pendingMark);
            if (fork) forkLocked &= ~bit(v);
            if (kind == 2)
                bidirEdges.pop_back();
            else
                undoDirected();
            return false;
        };

        for (std::uint64_t m = host.childMask(v); m; m &= m - 1)
            if (tryStep(std::countr_zero(m), Mark::Tail, Mark::Head, 0)) return true;
        for (std::uint64_t m = host.parentMask(v); m; m &= m - 1)
            if (tryStep(std::countr_zero(m), Mark::Head, Mark::Tail, 1)) return true;
        for (std::uint64_t m = host.siblingMask(v); m; m &= m - 1)
            if (tryStep(std::countr_zero(m), Mark::Head, Mark::Head, 2)) return true;
        return false;
    }

    std::optional<MixedGraph> run() {
        for (std::uint64_t m = xm; m; m &= m - 1) {
            int x0 = std::countr_zero(m);
            inSigma = bit(x0);
            if (extendPath(x0, Mark::None)) return result;
            inSigma = 0;
        }
        return std::nullopt;
    }
};

bool subgraphOf(const MixedGraph& sigma, const MixedGraph& host) {
    for (const Edge& e : sigma.directedEdges())
        if (!host.hasDirected(e.first, e.second)) return false;
    for (const Edge& e : sigma.bidirectedEdges())
        if (!host.hasBidirected(e.first, e.second)) return false;
    return true;
}

}  // namespace

std::optional<MixedGraph> findConnectingStructure(const MixedGraph& host,
                                                  const MixedGraph& base,
                                                  const VertexSet& x, const VertexSet& y,
                                                  const VertexSet& z,
                                                  const VertexSet& rootAllowed) {
    if (host.vertices() != base.vertices())
        throw std::invalid_argument("host and base must share one vertex set");
    std::uint64_t xm = detail::maskOf(host, x);
    std::uint64_t ym = detail::maskOf(host, y);
    std::uint64_t zm = detail::maskOf(host, z);
    if ((xm & ym) | (xm & zm) | (ym & zm))
        throw std::invalid_argument("x, y and z must be pairwise disjoint");

    Searcher s(host, base, xm, ym, zm, detail::maskOf(host, rootAllowed));
    std::optional<MixedGraph> sigma = s.run();
    if (sigma) {
        bool sound = isStructureOfInterest(*sigma) && connects(*sigma, x, y, z) &&
                     subgraphOf(*sigma, host) && isAcyclic(unionGraphs(base, *sigma));
        for (const MicroVertex& r : structureRoots(*sigma))
            if (!rootAllowed.count(r)) sound = false;
        if (!sound)
            throw std::logic_error("connecting-structure search produced an inconsistent result");
    }
    return sigma;
}

bool hasConnectingStructure(const Admg& g, const VertexSet& x, const VertexSet& y,
                            const VertexSet& z) {
    MixedGraph empty(g.vertices(), {}, {});
    VertexSet all(g.vertices().begin(), g.vertices().end());
    return findConnectingStructure(g.graph(), empty, x, y, z, all).has_value();
}

std::string printStructure(const MixedGraph& sigma) {
    std::ostringstream out;
    out << printMicroGraph(sigma) << "roots:";
    for (const MicroVertex& r : structureRoots(sigma)) out << ' ' << r.label();
    out << '\n';
    return out.str();
}

}  // namespace cdag
