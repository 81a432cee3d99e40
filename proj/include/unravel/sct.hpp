#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "unravel/system.hpp"

namespace unravel {

struct ClosureElement {
    std::string src;
    std::string dst;
    SizeChangeGraph graph;
    std::vector<std::string> witness;  // call ids
};

struct Lasso {
    std::vector<std::string> prefix;
    std::vector<std::string> cycle;
};

struct SctVerdict {
    bool terminating = true;
    std::optional<Lasso> counterexample;
    std::size_t closure_size = 0;
};

// BFS order; the first witness found is kept for each distinct element.
std::vector<ClosureElement> closure(const CallSystem& cs);

SctVerdict decide_termination(const CallSystem& cs,
                              const std::optional<std::set<std::string>>& roots = std::nullopt);

SctVerdict check_soundness(const RegularDerivation& d, const CyclicSystem& sys);

// Composite of the graphs along a call-id path.
SizeChangeGraph path_graph(const CallSystem& cs, const std::vector<std::string>& calls);

}  // namespace unravel
