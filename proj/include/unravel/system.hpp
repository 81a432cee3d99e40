#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "unravel/graph.hpp"

namespace unravel {

using SortId = std::string;

// The sort used when an input does not mention sorts at all.
inline const SortId kDefaultSort = "*";

struct Diagnostic {
    std::string where;
    std::string what;
    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

std::string to_string(const Diagnostic& d);

struct Judgment {
    std::string id;
    std::vector<SortId> sorts;
    std::size_t ob() const { return sorts.size(); }
    friend bool operator==(const Judgment&, const Judgment&) = default;
};

struct RuleScheme {
    std::string id;
    std::string conclusion;
    std::vector<std::string> premises;
    std::vector<SizeChangeGraph> graphs;
    friend bool operator==(const RuleScheme&, const RuleScheme&) = default;
};

struct CyclicSystem {
    std::map<std::string, Judgment> judgments;
    std::map<std::string, RuleScheme> rules;
    std::set<SortId> inductive_sorts{kDefaultSort};

    const Judgment& judgment(const std::string& id) const;
    const RuleScheme& rule(const std::string& id) const;
    const Judgment& conclusion_of(const std::string& rule_id) const { return judgment(rule(rule_id).conclusion); }
    std::size_t max_ob() const;
    friend bool operator==(const CyclicSystem&, const CyclicSystem&) = default;
};

struct Function {
    std::string id;
    std::vector<SortId> sorts;
    std::size_t arity() const { return sorts.size(); }
    friend bool operator==(const Function&, const Function&) = default;
};

struct Call {
    std::string id;
    std::string dom;
    std::string codom;
    SizeChangeGraph graph;
    friend bool operator==(const Call&, const Call&) = default;
};

// Functions keep declaration order; calls keep source order.
struct CallSystem {
    std::vector<Function> functions;
    std::vector<Call> calls;
    std::set<SortId> inductive_sorts{kDefaultSort};

    const Function* find(const std::string& id) const;
    std::size_t index_of(const std::string& id) const;
    friend bool operator==(const CallSystem&, const CallSystem&) = default;
};

// A finite rooted graph standing for a regular derivation. Node ids are
// indices into nodes.
struct RegularDerivation {
    struct Node {
        std::string rule;
        std::vector<std::size_t> children;
        friend bool operator==(const Node&, const Node&) = default;
    };
    std::vector<Node> nodes;
    std::size_t root = 0;
    friend bool operator==(const RegularDerivation&, const RegularDerivation&) = default;
};

// x_{depth,position}
struct VarRef {
    std::size_t depth = 0;
    std::size_t position = 0;
    friend auto operator<=>(const VarRef&, const VarRef&) = default;
};

std::vector<Diagnostic> validate_system(const CyclicSystem& sys);
std::vector<Diagnostic> validate_calls(const CallSystem& cs);
std::vector<Diagnostic> validate_derivation(const RegularDerivation& d, const CyclicSystem& sys);

struct InducedSystem {
    CyclicSystem system;
    // keyed by the root function
    std::map<std::string, RegularDerivation> derivations;
};

InducedSystem induced_proof_system(const CallSystem& cs);
CallSystem induced_call_graph(const RegularDerivation& d, const CyclicSystem& sys);
RegularDerivation minimize(const RegularDerivation& d);

}  // namespace unravel
