#include "cdag/graph.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace cdag {

namespace {

constexpr std::size_t kMaxVertices = 64;

std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

std::string MicroVertex::label() const {
    return cluster + "." + std::to_string(index);
}

MixedGraph::MixedGraph(std::vector<MicroVertex> vertices,
                       const std::vector<Edge>& directed,
                       const std::vector<Edge>& bidirected)
    : verts_(std::move(vertices)) {
    std::sort(verts_.begin(), verts_.end());
    verts_.erase(std::unique(verts_.begin(), verts_.end()), verts_.end());
    if (verts_.size() > kMaxVertices)
        fail("graph exceeds " + std::to_string(kMaxVertices) + " vertices");
    par_.assign(verts_.size(), 0);
    ch_.assign(verts_.size(), 0);
    sib_.assign(verts_.size(), 0);
    for (const auto& [u, v] : directed) {
        int a = indexOf(u), b = indexOf(v);
        if (a < 0 || b < 0) fail("directed edge endpoint is not a vertex: " + u.label() + " -> " + v.label());
        if (a == b) fail("self edge on " + u.label());
        ch_[a] |= bit(b);
        par_[b] |= bit(a);
    }
    for (const auto& [u, v] : bidirected) {
        int a = indexOf(u), b = indexOf(v);
        if (a < 0 || b < 0) fail("bidirected edge endpoint is not a vertex: " + u.label() + " <-> " + v.label());
        if (a == b) fail("self edge on " + u.label());
        sib_[a] |= bit(b);
        sib_[b] |= bit(a);
    }
}

int MixedGraph::indexOf(const MicroVertex& v) const {
    auto it = std::lower_bound(verts_.begin(), verts_.end(), v);
    if (it == verts_.end() || *it != v) return -1;
    return static_cast<int>(it - verts_.begin());
}

bool MixedGraph::hasDirected(const MicroVertex& from, const MicroVertex& to) const {
    int a = indexOf(from), b = indexOf(to);
    return a >= 0 && b >= 0 && (ch_[a] & bit(b));
}

bool MixedGraph::hasBidirected(const MicroVertex& a, const MicroVertex& b) const {
    int i = indexOf(a), j = indexOf(b);
    return i >= 0 && j >= 0 && (sib_[i] & bit(j));
}

std::size_t MixedGraph::directedCount() const {
    std::size_t n = 0;
    for (auto m : ch_) n += static_cast<std::size_t>(std::popcount(m));
    return n;
}

std::size_t MixedGraph::bidirectedCount() const {
    std::size_t n = 0;
    for (auto m : sib_) n += static_cast<std::size_t>(std::popcount(m));
    return n / 2;
}

std::vector<Edge> MixedGraph::directedEdges() const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < verts_.size(); ++i)
        for (std::uint64_t m = ch_[i]; m; m &= m - 1)
            out.emplace_back(verts_[i], verts_[std::countr_zero(m)]);
    return out;
}

std::vector<Edge> MixedGraph::bidirectedEdges() const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < verts_.size(); ++i)
        for (std::uint64_t m = sib_[i]; m; m &= m - 1) {
            std::size_t j = static_cast<std::size_t>(std::countr_zero(m));
            if (i < j) out.emplace_back(verts_[i], verts_[j]);
        }
    return out;
}

bool isAcyclic(const MixedGraph& g) {
    std::size_t n = g.vertexCount();
    std::uint64_t removed = 0;
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    for (;;) {
        bool progress = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (removed & bit(static_cast<int>(i))) continue;
            if ((g.childMask(i) & ~removed) == 0) {
                removed |= bit(static_cast<int>(i));
                progress = true;
            }
        }
        if (removed == all) return true;
        if (!progress) return false;
    }
}

Admg::Admg(MixedGraph g) : g_(std::move(g)) {
    if (!isAcyclic(g_)) fail("directed part has a cycle");
}

VertexSet ancestors(const MixedGraph& g, const VertexSet& s) {
    return detail::setFromMask(g, detail::ancestorMask(g, detail::maskOf(g, s)));
}

MixedGraph mutilate(const MixedGraph& g, const VertexSet& over, const VertexSet& under) {
    std::uint64_t o = detail::maskOf(g, over);
    std::uint64_t u = detail::maskOf(g, under);
    std::vector<Edge> dir, bidir;
    for (std::size_t i = 0; i < g.vertexCount(); ++i) {
        bool fromUnder = (u >> i) & 1;
        for (std::uint64_t m = g.childMask(i); m; m &= m - 1) {
            int j = std::countr_zero(m);
            if (fromUnder || ((o >> j) & 1)) continue;
            dir.emplace_back(g.vertices()[i], g.vertices()[j]);
        }
        if ((o >> i) & 1) continue;
        for (std::uint64_t m = g.siblingMask(i); m; m &= m - 1) {
            std::size_t j = static_cast<std::size_t>(std::countr_zero(m));
            if (i < j && !((o >> j) & 1)) bidir.emplace_back(g.vertices()[i], g.vertices()[j]);
        }
    }
    return MixedGraph(g.vertices(), dir, bidir);
}

bool dSeparated(const Admg& g, const VertexSet& x, const VertexSet& y, const VertexSet& z) {
    const MixedGraph& mg = g.graph();
    std::uint64_t xm = detail::maskOf(mg, x);
    std::uint64_t ym = detail::maskOf(mg, y);
    std::uint64_t zm = detail::maskOf(mg, z);
    if ((xm & ym) || (xm & zm) || (ym & zm)) fail("d-separation query sets overlap");
    std::size_t n = mg.vertexCount();
    std::vector<std::uint64_t> par(n), ch(n), sib(n);
    for (std::size_t i = 0; i < n; ++i) {
        par[i] = mg.parentMask(i);
        ch[i] = mg.childMask(i);
        sib[i] = mg.siblingMask(i);
    }
    return !detail::dConnected(n, par.data(), ch.data(), sib.data(), xm, ym, zm, 0, 0);
}

MixedGraph unionGraphs(const MixedGraph& a, const MixedGraph& b) {
    std::vector<MicroVertex> verts = a.vertices();
    verts.insert(verts.end(), b.vertices().begin(), b.vertices().end());
    std::vector<Edge> dir = a.directedEdges(), bidir = a.bidirectedEdges();
    auto bd = b.directedEdges();
    auto bb = b.bidirectedEdges();
    dir.insert(dir.end(), bd.begin(), bd.end());
    bidir.insert(bidir.end(), bb.begin(), bb.end());
    return MixedGraph(std::move(verts), dir, bidir);
}

namespace detail {

std::uint64_t maskOf(const MixedGraph& g, const VertexSet& s) {
    std::uint64_t m = 0;
    for (const auto& v : s) {
        int i = g.indexOf(v);
        if (i < 0) fail("vertex not in graph: " + v.label());
        m |= bit(i);
    }
    return m;
}

VertexSet setFromMask(const MixedGraph& g, std::uint64_t mask) {
    VertexSet s;
    for (std::uint64_t m = mask; m; m &= m - 1)
        s.insert(g.vertices()[std::countr_zero(m)]);
    return s;
}

std::uint64_t ancestorMask(const MixedGraph& g, std::uint64_t seed) {
    std::uint64_t anc = seed;
    for (;;) {
        std::uint64_t next = anc;
        for (std::uint64_t m = anc; m; m &= m - 1)
            next |= g.parentMask(static_cast<std::size_t>(std::countr_zero(m)));
        if (next == anc) return anc;
        anc = next;
    }
}

bool dConnected([[maybe_unused]] std::size_t n,
                const std::uint64_t* parents,
                const std::uint64_t* children,
                const std::uint64_t* siblings,
                std::uint64_t x, std::uint64_t y, std::uint64_t z,
                std::uint64_t over, std::uint64_t under) {
    if (!x || !y) return false;

    auto childrenOf = [&](std::size_t v) -> std::uint64_t {
        if ((under >> v) & 1) return 0;
        return children[v] & ~over;
    };
    auto parentsOf = [&](std::size_t v) -> std::uint64_t {
        if ((over >> v) & 1) return 0;
        return parents[v] & ~under;
    };
    auto siblingsOf = [&](std::size_t v) -> std::uint64_t {
        if ((over >> v) & 1) return 0;
        return siblings[v] & ~over;
    };

    // Ancestors of z in the mutilated graph, for collider activation.
    std::uint64_t ancZ = z;
    for (;;) {
        std::uint64_t next = ancZ;
        for (std::uint64_t m = ancZ; m; m &= m - 1)
            next |= parentsOf(static_cast<std::size_t>(std::countr_zero(m)));
        if (next == ancZ) break;
        ancZ = next;
    }

    // Reachable (vertex, arrived-by-head?) states. Arriving anywhere in y
    // completes an active path; endpoints themselves carry no constraint.
    std::uint64_t seenHead = 0, seenTail = 0;
    std::uint64_t frontHead = 0, frontTail = 0;
    for (std::uint64_t m = x; m; m &= m - 1) {
        std::size_t s = static_cast<std::size_t>(std::countr_zero(m));
        frontHead |= childrenOf(s) | siblingsOf(s);
        frontTail |= parentsOf(s);
    }
    while (frontHead | frontTail) {
        if ((frontHead | frontTail) & y) return true;
        std::uint64_t newHead = 0, newTail = 0;
        for (std::uint64_t m = frontHead & ~seenHead; m; m &= m - 1) {
            std::size_t v = static_cast<std::size_t>(std::countr_zero(m));
            if (!((z >> v) & 1)) newHead |= childrenOf(v);  // pass through as non-collider
            if ((ancZ >> v) & 1) {                          // act as collider
                newTail |= parentsOf(v);
                newHead |= siblingsOf(v);
            }
        }
        for (std::uint64_t m = frontTail & ~seenTail; m; m &= m - 1) {
            std::size_t v = static_cast<std::size_t>(std::countr_zero(m));
            if ((z >> v) & 1) continue;
            newHead |= childrenOf(v) | siblingsOf(v);
            newTail |= parentsOf(v);
        }
        seenHead |= frontHead;
        seenTail |= frontTail;
        frontHead = newHead & ~seenHead;
        frontTail = newTail & ~seenTail;
    }
    return false;
}

}  // namespace detail

}  // namespace cdag
