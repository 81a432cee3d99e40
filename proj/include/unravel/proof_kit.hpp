#pragma once

// Derived inference patterns, always expanded into primitive rule nodes.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "unravel/proof.hpp"

namespace unravel {

struct ProofBuildError : std::logic_error {
    using std::logic_error::logic_error;
};

// Mints variable names that never repeat within one supply.
class NameSupply {
public:
    // base with any earlier "'n" suffix stripped, plus a new one
    std::string prime(const std::string& base);
    std::string fresh(const std::string& stem);

private:
    std::size_t next_ = 0;
};

// A proof built bottom-up: a spine of inferences whose topmost premise is
// still open.
class OpenProof {
public:
    explicit OpenProof(Sequent goal) : top_(std::move(goal)) {}

    const Sequent& top() const { return top_; }

    // node concludes top(); its premise slot `main` stays open and becomes
    // the new top with sequent next.
    void push(ProofNode node, std::size_t main, Sequent next);
    void push_unary(RuleTag tag, Sequent next, std::string var = {}, std::size_t index = 0, std::string note = {});

    ProofNode close(ProofNode top_proof) &&;

private:
    Sequent top_;
    std::vector<std::pair<ProofNode, std::size_t>> spine_;
};

// Closed proof of s where s.concl is s.hyps[k].
ProofNode lookup(const Sequent& s, std::size_t k);

// Deletes and permutes hypotheses so the open top has exactly target.
// Every target formula must be matched by a distinct current hypothesis.
void reshape(OpenProof& op, const std::vector<Formula>& target);

// Adds phi as a new last hypothesis, given a closed proof of it in the
// current context.
void cut_in(OpenProof& op, const Formula& phi, ProofNode proof_of_phi);

ProofNode forall_elim(ProofNode p, const std::string& y);
ProofNode imp_elim(ProofNode major, ProofNode minor);

// Indices of order hypotheses forming a path from the goal's left to its
// right variable, strict somewhere when the goal is strict. Empty path for
// a reflexive ≥ goal; nullopt if none exists.
std::optional<std::vector<std::size_t>> find_order_path(const Sequent& goal);

// Composes the witness path with geq-trans, gt-extend0/1, geq-subsum and
// geq-refl. Throws ProofBuildError when it does not compose to the goal.
ProofNode derive_ineq(const Sequent& goal, const std::vector<std::size_t>& witness);

// find_order_path then derive_ineq; throws when no path exists.
ProofNode derive_order(const Sequent& goal);

// goal.concl is hyps[hyp_index] with its only free variable u renamed to v,
// where hyps[hyp_index] = ∀x'.(u > x' → ψ) and u ≥ v is derivable.
ProofNode derive_hyp_monotone(const Sequent& goal, std::size_t hyp_index, const std::string& u,
                              const std::string& v, NameSupply& names);

struct IndPrime {
    std::map<std::string, std::string> renaming;  // old free variable -> fresh copy
    Formula hypothesis;                           // new last hypothesis of the open premise
    std::vector<std::string> quantified;          // the other variables, in context order
};

// Induction on the entire open sequent z; Γ ⊢ δ at variable x. Leaves the
// premise z,x*,w*; Γσ, IH ⊢ δσ open, where IH = ∀x'.(x* > x' → ∀w.(Γ→δ)[x',w]).
IndPrime expand_ind_prime(OpenProof& op, const std::string& x, const std::set<SortId>& inductive, NameSupply& names);

}  // namespace unravel
