#pragma once

// JSON documents, each tagged with "format": "unravel/<kind>/1".
//   calls   functions [{id, sorts}], calls [{id, dom, codom, edges}], sorts
//   cyclic  judgments, rules, sorts, optional derivation {root, nodes}
//   rep     nodes in preorder with annotations and bud data
//   proof   nodes in preorder, premises by node index, optional system
// Edges are [src, dst, ">"] or [src, dst, ">="]. Formulas are arrays
// ["atom", J, terms], ["geq", S, t, u], ["gt", S, t, u], ["imp", a, b],
// ["forall", S, body]; a term is a string when free and an index when bound.

#include <optional>
#include <stdexcept>
#include <string>

#include "unravel/proof.hpp"
#include "unravel/system.hpp"
#include "unravel/unfold.hpp"

namespace unravel {

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "calls", "cyclic", "rep", "proof"; throws on anything else.
std::string document_kind(const std::string& text);

std::string emit_calls(const CallSystem& cs);
CallSystem parse_calls(const std::string& text);

struct CyclicDocument {
    CyclicSystem system;
    std::optional<RegularDerivation> derivation;
    friend bool operator==(const CyclicDocument&, const CyclicDocument&) = default;
};
std::string emit_cyclic(const CyclicDocument& doc);
CyclicDocument parse_cyclic(const std::string& text);

std::string emit_rep(const ResetRep& rep);
ResetRep parse_rep(const std::string& text);

// The system the proof lives in travels with it when known, so a proof
// file can be checked on its own.
struct ProofDocument {
    ProofNode proof;
    std::optional<CyclicSystem> system;
    friend bool operator==(const ProofDocument&, const ProofDocument&) = default;
};
std::string emit_proof(const ProofDocument& doc);
ProofDocument parse_proof(const std::string& text);

}  // namespace unravel
