#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unravel/graph.hpp"
#include "unravel/system.hpp"

namespace unravel {

struct Name {
    std::size_t index = 0;
    friend auto operator<=>(const Name&, const Name&) = default;
};

// a..z, then n26, n27, ...
std::string label(Name n);

struct Binding {
    VarRef var;
    std::size_t intro_depth = 0;
    friend bool operator==(const Binding&, const Binding&) = default;
};

struct ResetRecord {
    Name name;
    Name cover;
    Binding cover_binding;
    friend bool operator==(const ResetRecord&, const ResetRecord&) = default;
};

using Stack = std::vector<Name>;

struct Annotation {
    std::vector<Name> names;  // oldest first
    std::vector<Stack> stacks;
    std::map<Name, Binding> binding;
    std::vector<ResetRecord> resets;  // in the order performed
    std::vector<Stack> raw_stacks;    // before resetting, for traces

    bool was_reset(Name n) const;
    const ResetRecord* reset_record(Name n) const;
    std::size_t position_of(Name n) const;  // index into names; throws if absent
    bool has(Name n) const;
    friend bool operator==(const Annotation&, const Annotation&) = default;
};

bool same_shape(const Annotation& a, const Annotation& b);

enum class Age { Older, Younger, Equal };

// Compares by the oldest name of the symmetric difference.
Age stack_age_compare(const Stack& s1, const Stack& s2, const std::vector<Name>& names);

Annotation init_annotation(std::size_t ob);

// (covered, cover) with the oldest cover of each covered name.
std::vector<std::pair<Name, Name>> uniform_covers(const Annotation& ann);

// Throws std::invalid_argument when a is not among the names.
Annotation reset_on(const Annotation& ann, Name a, Name cover);

// Step along graph g into a node at the given depth. Throws
// std::invalid_argument on an arity mismatch.
Annotation step(const Annotation& ann, const SizeChangeGraph& g, std::size_t depth);

// "(b),(a{c})": struck names in braces. Uses raw stacks when present.
std::string format_stacks(const Annotation& ann);
std::string format_names(const std::vector<Name>& names);

}  // namespace unravel
