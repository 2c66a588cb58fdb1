#include "cdag/cdag.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace cdag {

namespace {

bool validName(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

ClusterEdge normalized(const std::string& a, const std::string& b) {
    return a <= b ? ClusterEdge{a, b} : ClusterEdge{b, a};
}

}  // namespace

CDag::CDag(std::vector<Cluster> clusters,
           const std::vector<ClusterEdge>& directed,
           const std::vector<ClusterEdge>& bidirected)
    : clusters_(std::move(clusters)) {
    std::set<std::string> seen;
    for (const auto& c : clusters_) {
        if (!validName(c.name)) throw std::invalid_argument("invalid cluster name: " + c.name);
        if (c.cardinality < 1)
            throw std::invalid_argument("cardinality of " + c.name + " must be at least 1");
        if (!seen.insert(c.name).second)
            throw std::invalid_argument("duplicate cluster: " + c.name);
    }
    auto checkKnown = [&](const std::string& n) {
        if (!seen.count(n)) throw std::invalid_argument("unknown cluster in edge: " + n);
    };
    for (const auto& [a, b] : directed) {
        checkKnown(a);
        checkKnown(b);
        directed_.insert({a, b});
    }
    for (const auto& [a, b] : bidirected) {
        checkKnown(a);
        checkKnown(b);
        bidirected_.insert(normalized(a, b));
    }
}

bool CDag::hasCluster(const std::string& name) const {
    for (const auto& c : clusters_)
        if (c.name == name) return true;
    return false;
}

int CDag::cardinality(const std::string& name) const {
    for (const auto& c : clusters_)
        if (c.name == name) return c.cardinality;
    throw std::invalid_argument("unknown cluster: " + name);
}

ClusterSet CDag::clusterNames() const {
    ClusterSet s;
    for (const auto& c : clusters_) s.insert(c.name);
    return s;
}

ParseError::ParseError(const std::string& msg, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + msg),
      line(line),
      column(column) {}

namespace {

struct Token {
    std::string text;
    int column;  // 1-based byte offset in the line
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
               line[i] != '#')
            ++i;
        out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

}  // namespace

CDag parseCDag(const std::string& text) {
    std::vector<std::pair<int, std::vector<Token>>> lines;
    {
        std::istringstream in(text);
        std::string line;
        int lineNo = 0;
        while (std::getline(in, line)) {
            ++lineNo;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            auto tok = tokenize(line);
            if (!tok.empty()) lines.emplace_back(lineNo, std::move(tok));
        }
    }

    // First pass collects clusters so edges may reference them in any order.
    std::vector<Cluster> clusters;
    std::set<std::string> names;
    for (const auto& [lineNo, tok] : lines) {
        const auto& head = tok[0];
        if (head.text == "edge") continue;
        if (head.text != "cluster")
            throw ParseError("unknown directive: " + head.text, lineNo, head.column);
        if (tok.size() != 3)
            throw ParseError("expected: cluster <name> <cardinality>", lineNo, head.column);
        if (!validName(tok[1].text))
            throw ParseError("invalid cluster name: " + tok[1].text, lineNo, tok[1].column);
        if (names.count(tok[1].text))
            throw ParseError("duplicate cluster: " + tok[1].text, lineNo, tok[1].column);
        int card = 0;
        try {
            std::size_t used = 0;
            card = std::stoi(tok[2].text, &used);
            if (used != tok[2].text.size()) card = 0;
        } catch (const std::exception&) {
            card = 0;
        }
        if (card < 1)
            throw ParseError("cardinality must be a positive integer, got: " + tok[2].text,
                             lineNo, tok[2].column);
        names.insert(tok[1].text);
        clusters.push_back({tok[1].text, card});
    }

    std::vector<ClusterEdge> directed, bidirected;
    for (const auto& [lineNo, tok] : lines) {
        if (tok[0].text != "edge") continue;
        if (tok.size() != 4 || (tok[2].text != "->" && tok[2].text != "<->"))
            throw ParseError("expected: edge <name> -> <name> or edge <name> <-> <name>", lineNo,
                             tok[0].column);
        for (int i : {1, 3})
            if (!names.count(tok[i].text))
                throw ParseError("unknown cluster in edge: " + tok[i].text, lineNo, tok[i].column);
        if (tok[2].text == "->")
            directed.emplace_back(tok[1].text, tok[3].text);
        else
            bidirected.emplace_back(tok[1].text, tok[3].text);
    }
    return CDag(std::move(clusters), directed, bidirected);
}

std::string printCDag(const CDag& c) {
    std::ostringstream out;
    for (const auto& cl : c.clusters()) out << "cluster " << cl.name << ' ' << cl.cardinality << '\n';
    for (const auto& [a, b] : c.directed()) out << "edge " << a << " -> " << b << '\n';
    for (const auto& [a, b] : c.bidirected()) out << "edge " << a << " <-> " << b << '\n';
    return out.str();
}

bool validate(const CDag& c) {
    std::set<std::string> singleton;
    for (const auto& cl : c.clusters())
        if (cl.cardinality == 1) singleton.insert(cl.name);

    for (const auto& [a, b] : c.bidirected())
        if (a == b && singleton.count(a)) return false;

    // Directed cycle detection restricted to singleton clusters; a realizing
    // micro graph would have to repeat that cycle vertex for vertex.
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& [a, b] : c.directed()) {
        if (a == b && singleton.count(a)) return false;
        if (singleton.count(a) && singleton.count(b)) adj[a].push_back(b);
    }
    std::map<std::string, int> state;  // 0 fresh, 1 on stack, 2 done
    auto dfs = [&](auto&& self, const std::string& v) -> bool {
        state[v] = 1;
        for (const auto& w : adj[v]) {
            if (state[w] == 1) return false;
            if (state[w] == 0 && !self(self, w)) return false;
        }
        state[v] = 2;
        return true;
    };
    for (const auto& name : singleton)
        if (state[name] == 0 && !dfs(dfs, name)) return false;
    return true;
}

CDag reduceToThree(const CDag& c) {
    if (!validate(c)) throw std::invalid_argument("C-DAG admits no compatible graph");
    std::vector<Cluster> reduced = c.clusters();
    for (auto& cl : reduced) cl.cardinality = std::min(cl.cardinality, 3);
    return CDag(std::move(reduced),
                {c.directed().begin(), c.directed().end()},
                {c.bidirected().begin(), c.bidirected().end()});
}

VertexSet microVertices(const CDag& c, const ClusterSet& names) {
    VertexSet out;
    for (const auto& n : names) {
        int card = c.cardinality(n);
        for (int i = 1; i <= card; ++i) out.insert(MicroVertex{n, i});
    }
    return out;
}

VertexSet allMicroVertices(const CDag& c) {
    return microVertices(c, c.clusterNames());
}

}  // namespace cdag
