#pragma once

// Shared test utilities. The verification oracles here are deliberately
// written against edge lists with plain loops so they share no machinery
// with the production implementations they referee.

#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cdag/cdag.hpp"
#include "cdag/graph.hpp"

namespace testutil {

using cdag::Edge;
using cdag::MicroVertex;
using cdag::MixedGraph;
using cdag::VertexSet;

inline MicroVertex mv(const std::string& label) {
    auto dot = label.rfind('.');
    if (dot == std::string::npos) return MicroVertex{label, 1};
    return MicroVertex{label.substr(0, dot), std::stoi(label.substr(dot + 1))};
}

inline VertexSet vs(const std::vector<std::string>& labels) {
    VertexSet s;
    for (const auto& l : labels) s.insert(mv(l));
    return s;
}

using EdgeSpec = std::vector<std::pair<std::string, std::string>>;

inline MixedGraph makeGraph(const std::vector<std::string>& verts,
                            const EdgeSpec& directed,
                            const EdgeSpec& bidirected = {}) {
    std::vector<MicroVertex> v;
    for (const auto& l : verts) v.push_back(mv(l));
    std::vector<Edge> d, b;
    for (const auto& [s, t] : directed) d.emplace_back(mv(s), mv(t));
    for (const auto& [s, t] : bidirected) b.emplace_back(mv(s), mv(t));
    return MixedGraph(std::move(v), d, b);
}

// Reflexive descendant set by repeated scanning of the edge list.
inline VertexSet naiveDescendants(const MixedGraph& g, const VertexSet& seed) {
    VertexSet out = seed;
    auto edges = g.directedEdges();
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& [u, v] : edges)
            if (out.count(u) && !out.count(v)) {
                out.insert(v);
                grew = true;
            }
    }
    return out;
}

inline VertexSet naiveAncestors(const MixedGraph& g, const VertexSet& seed) {
    VertexSet out = seed;
    auto edges = g.directedEdges();
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& [u, v] : edges)
            if (out.count(v) && !out.count(u)) {
                out.insert(u);
                grew = true;
            }
    }
    return out;
}

// d-connection decided by enumerating every simple path between x and y and
// testing it for activeness under z. Only suitable for small graphs.
struct NaivePathStep {
    MicroVertex next;
    bool headAtPrev;  // arrowhead at the vertex we leave
    bool headAtNext;  // arrowhead at the vertex we enter
};

inline std::vector<NaivePathStep> naiveSteps(const MixedGraph& g, const MicroVertex& at) {
    std::vector<NaivePathStep> out;
    for (const auto& [u, v] : g.directedEdges()) {
        if (u == at) out.push_back({v, false, true});
        if (v == at) out.push_back({u, true, false});
    }
    for (const auto& [u, v] : g.bidirectedEdges()) {
        if (u == at) out.push_back({v, true, true});
        if (v == at) out.push_back({u, true, true});
    }
    return out;
}

inline bool naiveActivePathFrom(const MixedGraph& g,
                                std::vector<MicroVertex>& path,
                                std::vector<bool>& headMarks,  // per vertex: mark of incoming step
                                const VertexSet& y, const VertexSet& z) {
    const MicroVertex at = path.back();
    if (path.size() > 1 && y.count(at)) return true;
    for (const auto& step : naiveSteps(g, at)) {
        bool seen = false;
        for (const auto& p : path)
            if (p == step.next) seen = true;
        if (seen) continue;
        if (path.size() > 1) {
            // `at` becomes an internal vertex: check activation with its
            // incoming mark and this outgoing mark.
            bool collider = headMarks.back() && step.headAtPrev;
            if (collider) {
                VertexSet desc = naiveDescendants(g, {at});
                bool anyInZ = false;
                for (const auto& d : desc)
                    if (z.count(d)) anyInZ = true;
                if (!anyInZ) continue;
            } else if (z.count(at)) {
                continue;
            }
        }
        path.push_back(step.next);
        headMarks.push_back(step.headAtNext);
        if (naiveActivePathFrom(g, path, headMarks, y, z)) return true;
        path.pop_back();
        headMarks.pop_back();
    }
    return false;
}

inline bool naiveDSeparated(const MixedGraph& g, const VertexSet& x, const VertexSet& y,
                            const VertexSet& z) {
    for (const auto& s : x) {
        std::vector<MicroVertex> path{s};
        std::vector<bool> marks{false};
        if (naiveActivePathFrom(g, path, marks, y, z)) return false;
    }
    return true;
}

// Random ADMG over n single-vertex clusters V1..Vn; directed edges follow a
// random topological order.
inline MixedGraph randomAdmg(std::mt19937_64& rng, int n, double pDir, double pBidir) {
    std::vector<MicroVertex> verts;
    for (int i = 1; i <= n; ++i) verts.push_back(MicroVertex{"V" + std::to_string(i), 1});
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<Edge> dir, bidir;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (coin(rng) < pDir) dir.emplace_back(verts[order[i]], verts[order[j]]);
            if (coin(rng) < pBidir) bidir.emplace_back(verts[order[i]], verts[order[j]]);
        }
    return MixedGraph(std::move(verts), dir, bidir);
}

// Random C-DAG over clusters A, B, ... that admits at least one compatible
// graph. Cluster-level self loops (directed and bidirected) are included.
inline cdag::CDag randomCDag(std::mt19937_64& rng, int maxClusters, int maxCard,
                             double pDir = 0.3, double pBidir = 0.2,
                             int maxMicro = 10) {
    static const std::vector<std::string> pool = {"A", "B", "C", "D", "E", "F"};
    std::uniform_int_distribution<int> nClusters(1, maxClusters);
    std::uniform_int_distribution<int> card(1, maxCard);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (;;) {
        int n = nClusters(rng);
        std::vector<cdag::Cluster> clusters;
        int micro = 0;
        for (int i = 0; i < n; ++i) {
            clusters.push_back({pool[i], card(rng)});
            micro += clusters.back().cardinality;
        }
        if (micro > maxMicro) continue;
        std::vector<cdag::ClusterEdge> dir, bidir;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (coin(rng) < pDir) dir.push_back({pool[i], pool[j]});
                if (j >= i && coin(rng) < pBidir) bidir.push_back({pool[i], pool[j]});
            }
        cdag::CDag c(clusters, dir, bidir);
        if (cdag::validate(c)) return c;
    }
}

// Random assignment of the graph's vertices into three disjoint sets.
inline void randomDisjointSets(std::mt19937_64& rng, const MixedGraph& g, VertexSet& x,
                               VertexSet& y, VertexSet& z) {
    x.clear();
    y.clear();
    z.clear();
    std::uniform_int_distribution<int> role(0, 5);
    for (const auto& v : g.vertices()) {
        switch (role(rng)) {
            case 0: x.insert(v); break;
            case 1: y.insert(v); break;
            case 2: z.insert(v); break;
            default: break;
        }
    }
}

}  // namespace testutil
