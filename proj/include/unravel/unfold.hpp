#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "unravel/annotate.hpp"
#include "unravel/sct.hpp"
#include "unravel/system.hpp"

namespace unravel {

struct BudInfo {
    std::size_t sprout = 0;
    Name prog;
    Name cov;
    Binding cov_binding;
    friend bool operator==(const BudInfo&, const BudInfo&) = default;
};

struct RepNode {
    std::size_t graph_node = 0;
    std::string rule;
    Annotation annotation;
    std::vector<std::size_t> children;
    std::optional<std::size_t> parent;
    std::size_t depth = 0;
    std::optional<BudInfo> bud;
    std::optional<std::size_t> origin;  // representative in the input rep
    friend bool operator==(const RepNode&, const RepNode&) = default;
};

// Node ids are preorder indices; root is 0.
struct ResetRep {
    std::vector<RepNode> nodes;
    std::size_t root = 0;

    std::vector<std::size_t> buds() const;
    bool is_strict_ancestor(std::size_t a, std::size_t n) const;
    std::size_t lca(std::size_t a, std::size_t b) const;
    // root first, n last
    std::vector<std::size_t> branch(std::size_t n) const;
    friend bool operator==(const ResetRep&, const ResetRep&) = default;
};

struct UnsoundInput : std::runtime_error {
    SctVerdict verdict;
    explicit UnsoundInput(SctVerdict v)
        : std::runtime_error("derivation is not sound"), verdict(std::move(v)) {}
};

struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

struct UnfoldOptions {
    // 0 picks the default; UNRAVEL_SAFETY_DEPTH overrides the default.
    std::size_t safety_depth = 0;
};

std::size_t default_safety_depth(const RegularDerivation& d, const CyclicSystem& sys);

ResetRep build_reset_rep(const RegularDerivation& d, const CyclicSystem& sys, UnfoldOptions opts = {});

enum class BudOrder { Older, Younger, Equal, Incomparable };

// Age of bud b relative to bud other.
BudOrder bud_age_compare(const ResetRep& rep, std::size_t b, std::size_t other);

std::set<std::size_t> reachable(const ResetRep& rep, std::size_t n);

// Throws InternalError when no bud is older-or-equal to all others.
std::size_t oldest_bud(const ResetRep& rep, const std::vector<std::size_t>& buds);

ResetRep respect_induction_order(const ResetRep& rep, const CyclicSystem& sys, UnfoldOptions opts = {});

// Empty when every bud satisfies the reset-proof conditions.
std::vector<Diagnostic> check_reset_invariants(const ResetRep& rep, const CyclicSystem& sys);

enum class OrderScope {
    Reachable,    // all mutually reachable pairs
    UnderSprout,  // only pairs where b2 sits under sprout(b1)
};

// Empty when every pair of buds in scope where sprout(b2) is a strict
// ancestor of sprout(b1) has b2 at least as old as b1. respect_induction_order
// guarantees the UnderSprout form; the Reachable form can fail when a chain of
// back-edges ends in a bud whose sprout is deeper than the previous one.
std::vector<Diagnostic> check_induction_order(const ResetRep& rep, OrderScope scope = OrderScope::Reachable);

std::string to_dot(const ResetRep& rep);

// One line per node in preorder; used by the trace output.
std::string format_trace(const ResetRep& rep);

}  // namespace unravel
