#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unravel/formula.hpp"
#include "unravel/system.hpp"

namespace unravel {

enum class RuleTag {
    Identity,
    Exchange,
    Contraction,
    Weakening,
    ImpIntro,
    ImpElim,
    ForallIntro,
    ForallElim,
    GeqRefl,
    GeqTrans,
    GeqSubsum,
    GtExtend0,
    GtExtend1,
    GtInd,
    CRule,
};

std::string to_string(RuleTag tag);
std::optional<RuleTag> parse_rule_tag(const std::string& s);

// Parameters by tag:
//   Exchange     index i swaps hyps i and i+1
//   ForallIntro  var is the eigenvariable
//   ForallElim   var is the instantiating variable
//   GtInd        var is the induction variable
//   CRule        rule_id, fresh lists the premise variables in premise order
// note carries unchecked metadata such as "ind' x0_1".
struct ProofNode {
    RuleTag tag = RuleTag::Identity;
    Sequent conclusion;
    std::vector<ProofNode> premises;
    std::size_t index = 0;
    std::string var;
    std::string rule_id;
    std::vector<std::string> fresh;
    std::string note;
    friend bool operator==(const ProofNode&, const ProofNode&) = default;
};

struct CheckResult {
    std::vector<Diagnostic> diagnostics;  // leftmost-innermost first
    bool ok() const { return diagnostics.empty(); }
};

// Node paths read "root", "root.0", "root.0.1", ...
CheckResult check(const ProofNode& proof, const CyclicSystem& sys);

// Counts by tag over the whole tree, and nodes carrying a note prefix.
std::size_t count_nodes(const ProofNode& proof);
std::vector<std::string> notes_with_prefix(const ProofNode& proof, const std::string& prefix);

// Indented listing, one inference per line, conclusion first.
std::string format_proof(const ProofNode& proof);

}  // namespace unravel
