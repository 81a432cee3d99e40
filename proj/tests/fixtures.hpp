#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unravel/proof.hpp"
#include "unravel/system.hpp"
#include "unravel/unfold.hpp"

namespace fixtures {

using namespace unravel;

struct Example {
    std::string name;
    std::string defs;    // minidefs source
    CallSystem graphs;   // the same system written out by hand
    std::string root;
};

// plus, ackermann, fg, d_nat, d_tree. All but d_tree use the unsorted "*".
const std::vector<Example>& examples();
const Example& example(const std::string& name);

CallSystem with_sort(CallSystem cs, const SortId& sort);

struct Run {
    InducedSystem induced;
    RegularDerivation derivation;
    ResetRep rep;      // after the first phase
    ResetRep ordered;  // after respect_induction_order
    std::optional<ProofNode> proof;
    std::string error;  // what stopped the pipeline, if anything
};

// Runs unfold and translate for the given root function. Exceptions are
// caught into error so property loops can report them.
Run run(const CallSystem& cs, const std::string& root, bool translate_too = true);

}  // namespace fixtures
