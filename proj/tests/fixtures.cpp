#include "fixtures.hpp"

#include <stdexcept>

#include "unravel/translate.hpp"

namespace fixtures {

namespace {

constexpr auto P = EdgeLabel::Progressing;
constexpr auto Q = EdgeLabel::Preserving;

Call call(std::string id, std::string dom, std::string codom, std::size_t m, std::size_t n, std::vector<Edge> es) {
    return {std::move(id), std::move(dom), std::move(codom), SizeChangeGraph(m, n, es)};
}

CallSystem d_graphs(const SortId& s) {
    CallSystem cs;
    cs.inductive_sorts = {s};
    cs.functions = {{"d", {s, s}}};
    cs.calls = {call("d.0", "d", "d", 2, 2, {{1, 0, P}, {1, 1, P}}),
                call("d.1", "d", "d", 2, 2, {{0, 0, P}, {1, 1, P}}),
                call("d.2", "d", "d", 2, 2, {{0, 0, P}, {0, 1, P}})};
    return cs;
}

std::vector<Example> build() {
    std::vector<Example> out;
    const SortId s = kDefaultSort;

    CallSystem plus;
    plus.functions = {{"+", {s, s}}};
    plus.calls = {call("+.0", "+", "+", 2, 2, {{0, 1, P}, {1, 0, Q}})};
    out.push_back({"plus", "0 + x1 := x1\nsuc(x0') + x1 := suc(x1 + x0')\n", plus, "+"});

    CallSystem ack;
    ack.functions = {{"A", {s, s}}};
    ack.calls = {call("A.0", "A", "A", 2, 2, {{0, 0, P}}),
                 call("A.1", "A", "A", 2, 2, {{0, 0, Q}, {1, 1, P}}),
                 call("A.2", "A", "A", 2, 2, {{0, 0, P}})};
    out.push_back({"ackermann",
                   "A(0, x1) := suc(x1)\n"
                   "A(suc(x0'), 0) := A(x0', 1)\n"
                   "A(suc(x0'), suc(x1')) := A(x0', A(suc(x0'), x1'))\n",
                   ack, "A"});

    CallSystem fg;
    fg.functions = {{"f", {s, s}}, {"g", {s}}};
    fg.calls = {call("f.0", "f", "g", 2, 1, {{0, 0, Q}, {1, 0, Q}}), call("g.0", "g", "f", 1, 2, {{0, 0, P}})};
    out.push_back({"fg",
                   "f(x0, x1) := g(min(x0, x1))\n"
                   "g(0) := 1\n"
                   "g(suc(x0')) := f(x0', 100) + 1\n",
                   fg, "f"});

    out.push_back({"d_nat",
                   "d(x0, 0) := x0\n"
                   "d(0, x1) := x1\n"
                   "d(suc(x0'), suc(x1')) := d(x1', x1') + d(x0', x1') + d(x0', x0')\n",
                   d_graphs(s), "d"});

    out.push_back({"d_tree",
                   "d(leaf, leaf) := 1\n"
                   "d(node(x0l, x0r), leaf) := 0\n"
                   "d(leaf, node(x1l, x1r)) := 0\n"
                   "d(node(x0l, x0r), node(x1l, x1r)) := d(x1l, x1r) + d(x0l, x1r) + d(x0l, x0r)\n",
                   d_graphs("Tree"), "d"});
    return out;
}

}  // namespace

const std::vector<Example>& examples() {
    static const auto all = build();
    return all;
}

const Example& example(const std::string& name) {
    for (const auto& e : examples())
        if (e.name == name) return e;
    throw std::out_of_range("no example " + name);
}

CallSystem with_sort(CallSystem cs, const SortId& sort) {
    cs.inductive_sorts = {sort};
    for (auto& f : cs.functions)
        for (auto& s : f.sorts) s = sort;
    return cs;
}

Run run(const CallSystem& cs, const std::string& root, bool translate_too) {
    Run r;
    try {
        r.induced = induced_proof_system(cs);
        r.derivation = r.induced.derivations.at(root);
        r.rep = build_reset_rep(r.derivation, r.induced.system);
        r.ordered = respect_induction_order(r.rep, r.induced.system);
        if (translate_too) r.proof = translate(r.ordered, r.induced.system);
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    return r;
}

}  // namespace fixtures
