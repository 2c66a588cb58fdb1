// Command-line front end: parses a C-DAG file (or standard input), runs the
// requested decision procedure and maps results to exit codes.
//   0 holds / valid        1 fails / invalid
//   2 usage or input error 3 enumeration budget exceeded

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cdag/abstraction.hpp"
#include "cdag/calculus.hpp"
#include "cdag/cdag.hpp"
#include "cdag/graph.hpp"
#include "cdag/oracle.hpp"
#include "cdag/rules.hpp"
#include "cdag/structure.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;

struct SetFlags {
    std::string w, x, y, z, over, under;
};

cdag::ClusterSet splitNames(const std::string& csv) {
    cdag::ClusterSet out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.insert(item);
    return out;
}

cdag::RuleQuery toQuery(const std::string& rule, const SetFlags& f) {
    cdag::RuleQuery q;
    if (rule == "1") q.rule = cdag::Rule::Rule1;
    else if (rule == "2") q.rule = cdag::Rule::Rule2;
    else if (rule == "3") q.rule = cdag::Rule::Rule3;
    else q.rule = cdag::Rule::Separation;
    q.w = splitNames(f.w);
    q.x = splitNames(f.x);
    q.y = splitNames(f.y);
    q.z = splitNames(f.z);
    q.over = splitNames(f.over);
    q.under = splitNames(f.under);
    return q;
}

cdag::CDag readCDag(const std::string& path) {
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open " + path);
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    return cdag::parseCDag(text);
}

json graphJson(const cdag::MixedGraph& g) {
    json j;
    j["vertices"] = json::array();
    for (const auto& v : g.vertices()) j["vertices"].push_back(v.label());
    j["directed"] = json::array();
    for (const auto& e : g.directedEdges())
        j["directed"].push_back({e.first.label(), e.second.label()});
    j["bidirected"] = json::array();
    for (const auto& e : g.bidirectedEdges())
        j["bidirected"].push_back({e.first.label(), e.second.label()});
    return j;
}

int runValidate(const std::string& path, bool asJson) {
    cdag::CDag c = readCDag(path);
    bool ok = cdag::validate(c);
    if (asJson) {
        json j{{"version", 1}, {"valid", ok}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << (ok ? "valid\n" : "invalid: no acyclic graph is compatible\n");
    }
    return ok ? 0 : 1;
}

int runCanonical(const std::string& path, bool asJson) {
    cdag::CanonicalGraph canon = cdag::canonicalGraph(readCDag(path));
    if (asJson) {
        json j = graphJson(canon.graph.graph());
        j["version"] = 1;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << cdag::printMicroGraph(canon.graph.graph());
    }
    return 0;
}

int runUnfolded(const std::string& path, bool asJson) {
    cdag::UnfoldedGraph u = cdag::unfoldedGraph(readCDag(path));
    if (asJson) {
        json j = graphJson(u.graph);
        j["version"] = 1;
        j["eligible"] = json::array();
        for (const auto& e : u.eligible)
            j["eligible"].push_back({e.first.label(), e.second.label()});
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << cdag::printUnfolded(u);
    }
    return 0;
}

int runReduce(const std::string& path, bool asJson) {
    cdag::CDag reduced = cdag::reduceToThree(readCDag(path));
    if (asJson) {
        json j{{"version", 1}};
        j["clusters"] = json::array();
        for (const auto& cl : reduced.clusters())
            j["clusters"].push_back({{"name", cl.name}, {"cardinality", cl.cardinality}});
        j["directed"] = json::array();
        for (const auto& e : reduced.directed()) j["directed"].push_back({e.first, e.second});
        j["bidirected"] = json::array();
        for (const auto& e : reduced.bidirected())
            j["bidirected"].push_back({e.first, e.second});
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << cdag::printCDag(reduced);
    }
    return 0;
}

int runCheck(const std::string& path, const std::string& rule, const SetFlags& f,
             bool asJson, bool witnessOnly) {
    cdag::Verdict v = cdag::checkRule(readCDag(path), toQuery(rule, f));
    if (asJson) {
        std::cout << cdag::toJson(v) << "\n";
    } else if (witnessOnly) {
        if (v.holds)
            std::cout << "HOLDS\n";
        else
            std::cout << cdag::printMicroGraph(v.witnessGraph->graph());
    } else {
        std::cout << (v.holds ? "HOLDS: " : "FAILS: ") << v.statement << "\n";
        if (!v.note.empty()) std::cout << "note: " << v.note << "\n";
        if (!v.holds) {
            std::cout << "witness graph:\n"
                      << cdag::printMicroGraph(v.witnessGraph->graph())
                      << "witness structure:\n"
                      << cdag::printStructure(*v.witnessStructure);
        }
    }
    return v.holds ? 0 : 1;
}

int runOracleCount(const std::string& path, const cdag::EnumerationBudget& budget,
                   bool asJson) {
    std::uint64_t n = cdag::countCompatible(readCDag(path), budget);
    if (asJson) {
        json j{{"version", 1}, {"count", n}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << n << "\n";
    }
    return 0;
}

int runOracleViolator(const std::string& path, const std::string& rule,
                      const SetFlags& f, const cdag::EnumerationBudget& budget,
                      bool asJson) {
    cdag::OracleVerdict v =
        cdag::bruteForceCheck(readCDag(path), toQuery(rule, f), budget);
    if (asJson) {
        json j{{"version", 1}, {"holds", v.holds}, {"inspected", v.inspected}};
        if (v.violator) j["violator"] = graphJson(v.violator->graph());
        std::cout << j.dump(2) << "\n";
    } else if (v.holds) {
        std::cout << "HOLDS (inspected " << v.inspected << " graphs)\n";
    } else {
        std::cout << "FAILS (inspected " << v.inspected << " graphs)\n"
                  << cdag::printMicroGraph(v.violator->graph());
    }
    return v.holds ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Do-calculus decisions over every graph compatible with a C-DAG"};
    app.require_subcommand(1);

    std::string file = "-";
    std::string format = "text";
    std::string rule;
    SetFlags sets;
    cdag::EnumerationBudget budget;

    auto addCommon = [&](CLI::App* sub) {
        sub->add_option("file", file, "C-DAG file, or - for standard input");
        sub->add_option("--format", format, "text or json")
            ->check(CLI::IsMember({"text", "json"}));
    };
    auto addSets = [&](CLI::App* sub, bool withRule, bool ruleOnly) {
        if (withRule) {
            auto* opt = sub->add_option("--rule", rule, "calculus rule");
            opt->required();
            if (ruleOnly)
                opt->check(CLI::IsMember({"1", "2", "3"}));
            else
                opt->check(CLI::IsMember({"1", "2", "3", "dsep"}));
        }
        sub->add_option("--w", sets.w, "comma-separated cluster names");
        sub->add_option("--x", sets.x, "comma-separated cluster names");
        sub->add_option("--y", sets.y, "comma-separated cluster names");
        sub->add_option("--z", sets.z, "comma-separated cluster names");
        sub->add_option("--over", sets.over, "clusters whose incoming edges are cut");
        sub->add_option("--under", sets.under, "clusters whose outgoing edges are cut");
    };
    auto addBudget = [&](CLI::App* sub) {
        sub->add_option("--max-graphs", budget.maxGraphs, "enumeration budget");
        sub->add_option("--max-vertices", budget.maxMicroVertices,
                        "micro-vertex budget");
    };

    auto* validate = app.add_subcommand("validate", "is any graph compatible?");
    addCommon(validate);
    auto* canonical = app.add_subcommand("canonical", "print the canonical graph");
    addCommon(canonical);
    auto* unfolded = app.add_subcommand("unfolded", "print the unfolded graph");
    addCommon(unfolded);
    auto* reduce = app.add_subcommand("reduce", "cap every cardinality at three");
    addCommon(reduce);
    auto* dsep = app.add_subcommand("dsep", "class-wide d-separation");
    addCommon(dsep);
    addSets(dsep, false, false);
    auto* check = app.add_subcommand("check-rule", "does a calculus rule hold?");
    addCommon(check);
    addSets(check, true, true);
    auto* witness = app.add_subcommand("witness", "counterexample graph, or HOLDS");
    addCommon(witness);
    addSets(witness, true, false);
    auto* count = app.add_subcommand("oracle-count", "count compatible graphs");
    addCommon(count);
    addBudget(count);
    auto* violator = app.add_subcommand("oracle-violator",
                                        "search the class for a Pearl violation");
    addCommon(violator);
    addSets(violator, true, false);
    addBudget(violator);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    bool asJson = format == "json";
    try {
        if (app.got_subcommand(validate)) return runValidate(file, asJson);
        if (app.got_subcommand(canonical)) return runCanonical(file, asJson);
        if (app.got_subcommand(unfolded)) return runUnfolded(file, asJson);
        if (app.got_subcommand(reduce)) return runReduce(file, asJson);
        if (app.got_subcommand(dsep)) return runCheck(file, "dsep", sets, asJson, false);
        if (app.got_subcommand(check)) return runCheck(file, rule, sets, asJson, false);
        if (app.got_subcommand(witness)) return runCheck(file, rule, sets, asJson, true);
        if (app.got_subcommand(count)) return runOracleCount(file, budget, asJson);
        if (app.got_subcommand(violator))
            return runOracleViolator(file, rule, sets, budget, asJson);
    } catch (const cdag::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cdag::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
