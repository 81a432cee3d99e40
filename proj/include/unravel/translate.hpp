#pragma once

#include <string>
#include <vector>

#include "unravel/proof.hpp"
#include "unravel/unfold.hpp"

namespace unravel {

struct OrderFact {
    bool strict = false;
    VarRef from;
    VarRef to;
    SortId sort;
    friend bool operator==(const OrderFact&, const OrderFact&) = default;
};

// Relevant ancestor variables of a rep node: the bindings of its names,
// plus the cover variable at buds.
std::vector<VarRef> relevant_ancestors(const ResetRep& rep, std::size_t n);

// Strict facts between relevant ancestors, then non-strict facts from
// relevant ancestors to the node's own variables; ordered by (kind, from, to).
// Both come from the node's stacks, the raw ones at buds.
std::vector<OrderFact> ineq_facts(const ResetRep& rep, const CyclicSystem& sys, std::size_t n);

// Proof of ⊢ A(x0) in the induced inductive system. rep should already
// respect the induction order. Throws InternalError or ProofBuildError when
// an obligation cannot be met.
ProofNode translate(const ResetRep& rep, const CyclicSystem& sys);

struct Skeleton {
    std::string rule;
    bool bud = false;
    std::vector<Skeleton> children;
    friend bool operator==(const Skeleton&, const Skeleton&) = default;
};

// Keeps c-rule nodes and bud closures (nodes noted "bud <rule>") and drops
// everything else. Throws std::invalid_argument if that leaves a forest.
Skeleton extract_skeleton(const ProofNode& proof);
Skeleton rep_skeleton(const ResetRep& rep);

ProofNode map_sorts(const ProofNode& proof, const std::function<SortId(const SortId&)>& f);
CyclicSystem map_sorts(const CyclicSystem& sys, const std::function<SortId(const SortId&)>& f);

}  // namespace unravel
