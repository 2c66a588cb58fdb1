#include "cdag/calculus.hpp"

#include <cctype>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace cdag {

namespace {

std::string joinNames(const ClusterSet& s, bool lower) {
    std::string out;
    for (const std::string& name : s) {
        if (!out.empty()) out += ", ";
        if (lower)
            for (char ch : name)
                out += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        else
            out += name;
    }
    return out;
}

std::string doTerm(const ClusterSet& s) {
    return s.empty() ? std::string() : "do(" + joinNames(s, true) + ")";
}

std::string prob(const ClusterSet& y, std::initializer_list<std::string> cond) {
    std::string given;
    for (const std::string& part : cond) {
        if (part.empty()) continue;
        if (!given.empty()) given += ", ";
        given += part;
    }
    std::string out = "P(" + (y.empty() ? std::string("∅") : joinNames(y, true));
    if (!given.empty()) out += " | " + given;
    return out + ")";
}

std::string setOrEmpty(const ClusterSet& s) {
    return s.empty() ? std::string("∅") : joinNames(s, false);
}

const char* ruleName(Rule r) {
    switch (r) {
        case Rule::Rule1: return "R1";
        case Rule::Rule2: return "R2";
        case Rule::Rule3: return "R3";
        case Rule::Separation: return "DSEP";
    }
    return "?";
}

nlohmann::json namesJson(const ClusterSet& s) {
    nlohmann::json arr = nlohmann::json::array();
    for (const std::string& name : s) arr.push_back(name);
    return arr;
}

nlohmann::json graphJson(const MixedGraph& g) {
    nlohmann::json j;
    j["vertices"] = nlohmann::json::array();
    for (const MicroVertex& v : g.vertices()) j["vertices"].push_back(v.label());
    j["directed"] = nlohmann::json::array();
    for (const Edge& e : g.directedEdges())
        j["directed"].push_back({e.first.label(), e.second.label()});
    j["bidirected"] = nlohmann::json::array();
    for (const Edge& e : g.bidirectedEdges())
        j["bidirected"].push_back({e.first.label(), e.second.label()});
    return j;
}

}  // namespace

std::string ruleStatement(const RuleQuery& q) {
    switch (q.rule) {
        case Rule::Rule1:
            return prob(q.y, {doTerm(q.w), joinNames(q.x, true), joinNames(q.z, true)}) +
                   " = " + prob(q.y, {doTerm(q.w), joinNames(q.z, true)});
        case Rule::Rule2:
            return prob(q.y, {doTerm(q.w), doTerm(q.x), joinNames(q.z, true)}) + " = " +
                   prob(q.y, {doTerm(q.w), joinNames(q.x, true), joinNames(q.z, true)});
        case Rule::Rule3:
            return prob(q.y, {doTerm(q.w), doTerm(q.x), joinNames(q.z, true)}) + " = " +
                   prob(q.y, {doTerm(q.w), joinNames(q.z, true)});
        case Rule::Separation: {
            std::string out = setOrEmpty(q.x) + " ⊥ " + setOrEmpty(q.y);
            if (!q.z.empty()) out += " | " + joinNames(q.z, false);
            out += " in every compatible graph";
            if (!q.over.empty()) out += " after removing edges into " + joinNames(q.over, false);
            if (!q.under.empty())
                out += (q.over.empty() ? " after removing" : " and") + std::string(" edges out of ") +
                       joinNames(q.under, false);
            return out;
        }
    }
    return {};
}

Engine::Engine(CDag c) : cdag_(std::move(c)), unfolded_(unfoldedGraph(cdag_)) {}

Verdict Engine::check(const RuleQuery& q) const {
    validateQuery(cdag_, q);
    Verdict v;
    v.query = q;
    v.statement = ruleStatement(q);

    VertexSet wm = microVertices(cdag_, q.w);
    VertexSet xm = microVertices(cdag_, q.x);
    VertexSet ym = microVertices(cdag_, q.y);
    VertexSet zm = microVertices(cdag_, q.z);
    if (xm.empty() || ym.empty()) {
        v.note = xm.empty() ? "vacuous: x is empty" : "vacuous: y is empty";
        return v;
    }

    VertexSet over, under, zEff = zm;
    if (q.rule == Rule::Separation) {
        over = microVertices(cdag_, q.over);
        under = microVertices(cdag_, q.under);
    } else {
        over = wm;
        if (q.rule == Rule::Rule2) under = xm;
        zEff.insert(wm.begin(), wm.end());
    }

    VertexSet rootAllowed;
    if (q.rule == Rule::Rule3) {
        rootAllowed = zEff;
        rootAllowed.insert(ym.begin(), ym.end());
    } else {
        rootAllowed.insert(unfolded_.graph.vertices().begin(),
                           unfolded_.graph.vertices().end());
    }

    MixedGraph host = mutilate(unfolded_.graph, over, under);
    const MixedGraph& base = canonical().graph.graph();
    auto sigma = findConnectingStructure(host, base, xm, ym, zEff, rootAllowed);
    if (sigma) {
        v.holds = false;
        v.witnessStructure = sigma;
        v.witnessGraph = Admg(unionGraphs(base, *sigma));
    }
    return v;
}

Verdict checkRule(const CDag& c, const RuleQuery& q) { return Engine(c).check(q); }

Verdict clusterDSep(const CDag& c, const ClusterSet& x, const ClusterSet& y,
                    const ClusterSet& z, const ClusterSet& over,
                    const ClusterSet& under) {
    RuleQuery q;
    q.rule = Rule::Separation;
    q.x = x;
    q.y = y;
    q.z = z;
    q.over = over;
    q.under = under;
    return checkRule(c, q);
}

Admg buildWitness(const CDag& c, const MixedGraph& sigma) {
    UnfoldedGraph u = unfoldedGraph(c);
    for (const MicroVertex& v : sigma.vertices())
        if (!u.graph.hasVertex(v))
            throw std::invalid_argument("structure vertex " + v.label() +
                                        " is not a micro vertex of the C-DAG");
    for (const Edge& e : sigma.directedEdges())
        if (!u.graph.hasDirected(e.first, e.second))
            throw std::invalid_argument("structure edge " + e.first.label() + " -> " +
                                        e.second.label() +
                                        " lies outside the unfolded graph");
    for (const Edge& e : sigma.bidirectedEdges())
        if (!u.graph.hasBidirected(e.first, e.second))
            throw std::invalid_argument("structure edge " + e.first.label() + " <-> " +
                                        e.second.label() +
                                        " lies outside the unfolded graph");
    MixedGraph merged = unionGraphs(u.canonical.graph.graph(), sigma);
    if (!isAcyclic(merged))
        throw std::invalid_argument(
            "structure closes a directed cycle with the canonical graph");
    return Admg(merged);
}

std::string toJson(const Verdict& v) {
    nlohmann::json j;
    j["version"] = 1;
    j["rule"] = ruleName(v.query.rule);
    nlohmann::json sets;
    sets["w"] = namesJson(v.query.w);
    sets["x"] = namesJson(v.query.x);
    sets["y"] = namesJson(v.query.y);
    sets["z"] = namesJson(v.query.z);
    if (v.query.rule == Rule::Separation) {
        sets["over"] = namesJson(v.query.over);
        sets["under"] = namesJson(v.query.under);
    }
    j["sets"] = sets;
    j["holds"] = v.holds;
    j["statement"] = v.statement;
    if (!v.note.empty()) j["note"] = v.note;
    if (v.witnessGraph) j["witness_graph"] = graphJson(v.witnessGraph->graph());
    if (v.witnessStructure) {
        nlohmann::json s = graphJson(*v.witnessStructure);
        s["roots"] = nlohmann::json::array();
        for (const MicroVertex& r : structureRoots(*v.witnessStructure))
            s["roots"].push_back(r.label());
        j["witness_structure"] = s;
    }
    return j.dump(2);
}

}  // namespace cdag
