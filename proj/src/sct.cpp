#include "unravel/sct.hpp"

#include <deque>
#include <map>
#include <stdexcept>
#include <tuple>

namespace unravel {

std::vector<ClosureElement> closure(const CallSystem& cs) {
    std::map<std::string, std::vector<const Call*>> calls_from;
    for (const auto& c : cs.calls) calls_from[c.dom].push_back(&c);

    std::vector<ClosureElement> out;
    std::set<std::tuple<std::string, std::string, SizeChangeGraph>> seen;
    auto offer = [&](ClosureElement e) {
        if (seen.emplace(e.src, e.dst, e.graph).second) out.push_back(std::move(e));
    };
    for (const auto& c : cs.calls) offer({c.dom, c.codom, c.graph, {c.id}});
    // Right-extension by single calls reaches every composite, since any
    // path is a single call followed by more single calls.
    for (std::size_t i = 0; i < out.size(); ++i)
        for (const auto* c : calls_from[out[i].dst]) {
            auto w = out[i].witness;
            w.push_back(c->id);
            offer({out[i].src, c->codom, compose(out[i].graph, c->graph), std::move(w)});
        }
    return out;
}

SizeChangeGraph path_graph(const CallSystem& cs, const std::vector<std::string>& calls) {
    if (calls.empty()) throw std::invalid_argument("path_graph: empty path");
    std::map<std::string, const Call*> by_id;
    for (const auto& c : cs.calls) by_id[c.id] = &c;
    auto lookup = [&](const std::string& id) {
        auto it = by_id.find(id);
        if (it == by_id.end()) throw std::out_of_range("unknown call " + id);
        return it->second;
    };
    auto g = lookup(calls.front())->graph;
    for (std::size_t i = 1; i < calls.size(); ++i) g = compose(g, lookup(calls[i])->graph);
    return g;
}

namespace {

// Shortest call path from any root to each reachable function.
std::map<std::string, std::vector<std::string>> shortest_prefixes(const CallSystem& cs,
                                                                  const std::set<std::string>& roots) {
    std::map<std::string, std::vector<const Call*>> calls_from;
    for (const auto& c : cs.calls) calls_from[c.dom].push_back(&c);
    std::map<std::string, std::vector<std::string>> prefix;
    std::deque<std::string> queue;
    for (const auto& f : cs.functions)
        if (roots.count(f.id)) {
            prefix[f.id] = {};
            queue.push_back(f.id);
        }
    while (!queue.empty()) {
        auto f = queue.front();
        queue.pop_front();
        for (const auto* c : calls_from[f])
            if (!prefix.count(c->codom)) {
                auto p = prefix[f];
                p.push_back(c->id);
                prefix[c->codom] = std::move(p);
                queue.push_back(c->codom);
            }
    }
    return prefix;
}

}  // namespace

SctVerdict decide_termination(const CallSystem& cs, const std::optional<std::set<std::string>>& roots) {
    std::set<std::string> start;
    if (roots)
        start = *roots;
    else
        for (const auto& f : cs.functions) start.insert(f.id);
    auto prefix = shortest_prefixes(cs, start);

    SctVerdict verdict;
    auto elements = closure(cs);
    verdict.closure_size = elements.size();
    for (const auto& e : elements) {
        if (e.src != e.dst || !prefix.count(e.src)) continue;
        if (!e.graph.is_idempotent() || e.graph.has_progressing_self_edge()) continue;
        verdict.terminating = false;
        verdict.counterexample = Lasso{prefix.at(e.src), e.witness};
        break;
    }
    return verdict;
}

SctVerdict check_soundness(const RegularDerivation& d, const CyclicSystem& sys) {
    auto cs = induced_call_graph(d, sys);
    return decide_termination(cs, std::set<std::string>{"n" + std::to_string(d.root)});
}

}  // namespace unravel
