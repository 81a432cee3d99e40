#include "unravel/system.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace unravel {

std::string to_string(const Diagnostic& d) { return d.where + ": " + d.what; }

const Judgment& CyclicSystem::judgment(const std::string& id) const {
    auto it = judgments.find(id);
    if (it == judgments.end()) throw std::out_of_range("unknown judgment " + id);
    return it->second;
}

const RuleScheme& CyclicSystem::rule(const std::string& id) const {
    auto it = rules.find(id);
    if (it == rules.end()) throw std::out_of_range("unknown rule " + id);
    return it->second;
}

std::size_t CyclicSystem::max_ob() const {
    std::size_t m = 0;
    for (const auto& [_, j] : judgments) m = std::max(m, j.ob());
    return m;
}

const Function* CallSystem::find(const std::string& id) const {
    for (const auto& f : functions)
        if (f.id == id) return &f;
    return nullptr;
}

std::size_t CallSystem::index_of(const std::string& id) const {
    for (std::size_t i = 0; i < functions.size(); ++i)
        if (functions[i].id == id) return i;
    throw std::out_of_range("unknown function " + id);
}

namespace {

void check_edge_sorts(const SizeChangeGraph& g, const std::vector<SortId>& from,
                      const std::vector<SortId>& to, const std::set<SortId>& ind,
                      const std::string& where, std::vector<Diagnostic>& out) {
    for (const auto& e : g.edges()) {
        const auto& s = from[e.src];
        const auto& t = to[e.dst];
        auto edge = std::to_string(e.src) + "->" + std::to_string(e.dst);
        if (s != t)
            out.push_back({where, "edge " + edge + " joins sorts " + s + " and " + t});
        else if (!ind.count(s))
            out.push_back({where, "edge " + edge + " on non-inductive sort " + s});
    }
}

}  // namespace

std::vector<Diagnostic> validate_system(const CyclicSystem& sys) {
    std::vector<Diagnostic> out;
    for (const auto& [id, j] : sys.judgments)
        if (id != j.id) out.push_back({"judgment " + id, "key does not match id " + j.id});
    for (const auto& [id, r] : sys.rules) {
        auto where = "rule " + id;
        if (id != r.id) out.push_back({where, "key does not match id " + r.id});
        auto concl = sys.judgments.find(r.conclusion);
        if (concl == sys.judgments.end()) {
            out.push_back({where, "unknown conclusion judgment " + r.conclusion});
            continue;
        }
        if (r.graphs.size() != r.premises.size()) {
            out.push_back({where, "has " + std::to_string(r.premises.size()) + " premises but " +
                                      std::to_string(r.graphs.size()) + " graphs"});
            continue;
        }
        for (std::size_t i = 0; i < r.premises.size(); ++i) {
            auto pwhere = where + " premise " + std::to_string(i);
            auto prem = sys.judgments.find(r.premises[i]);
            if (prem == sys.judgments.end()) {
                out.push_back({pwhere, "unknown judgment " + r.premises[i]});
                continue;
            }
            const auto& g = r.graphs[i];
            if (g.src_arity() != concl->second.ob() || g.dst_arity() != prem->second.ob()) {
                out.push_back({pwhere, "graph arity " + std::to_string(g.src_arity()) + "->" +
                                           std::to_string(g.dst_arity()) + " does not match " +
                                           std::to_string(concl->second.ob()) + "->" +
                                           std::to_string(prem->second.ob())});
                continue;
            }
            check_edge_sorts(g, concl->second.sorts, prem->second.sorts, sys.inductive_sorts, pwhere, out);
        }
    }
    return out;
}

std::vector<Diagnostic> validate_calls(const CallSystem& cs) {
    std::vector<Diagnostic> out;
    std::set<std::string> seen;
    for (const auto& f : cs.functions)
        if (!seen.insert(f.id).second) out.push_back({"function " + f.id, "declared twice"});
    std::set<std::string> call_ids;
    for (const auto& c : cs.calls) {
        auto where = "call " + c.id;
        if (!call_ids.insert(c.id).second) out.push_back({where, "declared twice"});
        const auto* dom = cs.find(c.dom);
        const auto* codom = cs.find(c.codom);
        if (!dom) out.push_back({where, "unknown caller " + c.dom});
        if (!codom) out.push_back({where, "unknown callee " + c.codom});
        if (!dom || !codom) continue;
        if (c.graph.src_arity() != dom->arity() || c.graph.dst_arity() != codom->arity()) {
            out.push_back({where, "graph arity " + std::to_string(c.graph.src_arity()) + "->" +
                                      std::to_string(c.graph.dst_arity()) + " does not match " +
                                      std::to_string(dom->arity()) + "->" +
                                      std::to_string(codom->arity())});
            continue;
        }
        check_edge_sorts(c.graph, dom->sorts, codom->sorts, cs.inductive_sorts, where, out);
    }
    return out;
}

std::vector<Diagnostic> validate_derivation(const RegularDerivation& d, const CyclicSystem& sys) {
    std::vector<Diagnostic> out;
    if (d.nodes.empty()) {
        out.push_back({"derivation", "has no nodes"});
        return out;
    }
    if (d.root >= d.nodes.size()) out.push_back({"derivation", "root out of range"});
    for (std::size_t n = 0; n < d.nodes.size(); ++n) {
        auto where = "node " + std::to_string(n);
        const auto& node = d.nodes[n];
        auto r = sys.rules.find(node.rule);
        if (r == sys.rules.end()) {
            out.push_back({where, "unknown rule " + node.rule});
            continue;
        }
        if (node.children.size() != r->second.premises.size()) {
            out.push_back({where, "has " + std::to_string(node.children.size()) + " children but rule " +
                                      node.rule + " has " + std::to_string(r->second.premises.size()) +
                                      " premises"});
            continue;
        }
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            auto c = node.children[i];
            if (c >= d.nodes.size()) {
                out.push_back({where, "child " + std::to_string(i) + " out of range"});
                continue;
            }
            auto cr = sys.rules.find(d.nodes[c].rule);
            if (cr != sys.rules.end() && cr->second.conclusion != r->second.premises[i])
                out.push_back({where, "child " + std::to_string(i) + " concludes " + cr->second.conclusion +
                                          ", expected " + r->second.premises[i]});
        }
    }
    if (!out.empty()) return out;
    std::vector<bool> seen(d.nodes.size(), false);
    std::deque<std::size_t> queue{d.root};
    seen[d.root] = true;
    while (!queue.empty()) {
        auto n = queue.front();
        queue.pop_front();
        for (auto c : d.nodes[n].children)
            if (!seen[c]) seen[c] = true, queue.push_back(c);
    }
    for (std::size_t n = 0; n < d.nodes.size(); ++n)
        if (!seen[n]) out.push_back({"node " + std::to_string(n), "unreachable from root"});
    return out;
}

InducedSystem induced_proof_system(const CallSystem& cs) {
    InducedSystem out;
    out.system.inductive_sorts = cs.inductive_sorts;
    std::map<std::string, std::vector<const Call*>> calls_of;
    for (const auto& c : cs.calls) calls_of[c.dom].push_back(&c);
    for (const auto& f : cs.functions) {
        out.system.judgments[f.id] = Judgment{f.id, f.sorts};
        RuleScheme r{f.id, f.id, {}, {}};
        for (const auto* c : calls_of[f.id]) {
            r.premises.push_back(c->codom);
            r.graphs.push_back(c->graph);
        }
        out.system.rules[f.id] = std::move(r);
    }
    for (const auto& f : cs.functions) {
        RegularDerivation d;
        std::map<std::string, std::size_t> node_of;
        std::deque<std::string> queue{f.id};
        node_of[f.id] = 0;
        d.nodes.push_back({f.id, {}});
        while (!queue.empty()) {
            auto g = queue.front();
            queue.pop_front();
            auto self = node_of.at(g);
            for (const auto* c : calls_of[g]) {
                auto [it, fresh] = node_of.try_emplace(c->codom, d.nodes.size());
                if (fresh) {
                    d.nodes.push_back({c->codom, {}});
                    queue.push_back(c->codom);
                }
                d.nodes[self].children.push_back(it->second);
            }
        }
        out.derivations[f.id] = std::move(d);
    }
    return out;
}

CallSystem induced_call_graph(const RegularDerivation& d, const CyclicSystem& sys) {
    CallSystem cs;
    cs.inductive_sorts = sys.inductive_sorts;
    for (std::size_t n = 0; n < d.nodes.size(); ++n)
        cs.functions.push_back({"n" + std::to_string(n), sys.conclusion_of(d.nodes[n].rule).sorts});
    for (std::size_t n = 0; n < d.nodes.size(); ++n) {
        const auto& r = sys.rule(d.nodes[n].rule);
        for (std::size_t k = 0; k < d.nodes[n].children.size(); ++k)
            cs.calls.push_back({"n" + std::to_string(n) + "." + std::to_string(k), "n" + std::to_string(n),
                                "n" + std::to_string(d.nodes[n].children[k]), r.graphs[k]});
    }
    return cs;
}

RegularDerivation minimize(const RegularDerivation& d) {
    const auto n = d.nodes.size();
    std::vector<std::size_t> block(n);
    {
        std::map<std::string, std::size_t> by_rule;
        for (std::size_t i = 0; i < n; ++i)
            block[i] = by_rule.try_emplace(d.nodes[i].rule, by_rule.size()).first->second;
    }
    for (std::size_t count = 0;;) {
        std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> sig;
        std::vector<std::size_t> next(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::size_t> kids;
            for (auto c : d.nodes[i].children) kids.push_back(block[c]);
            next[i] = sig.try_emplace({block[i], std::move(kids)}, sig.size()).first->second;
        }
        block = std::move(next);
        if (sig.size() == count) break;
        count = sig.size();
    }
    RegularDerivation out;
    std::map<std::size_t, std::size_t> id_of;
    std::vector<std::size_t> rep_of;
    std::deque<std::size_t> queue{d.root};
    id_of[block[d.root]] = 0;
    rep_of.push_back(d.root);
    while (!queue.empty()) {
        auto i = queue.front();
        queue.pop_front();
        for (auto c : d.nodes[i].children)
            if (id_of.try_emplace(block[c], rep_of.size()).second) {
                rep_of.push_back(c);
                queue.push_back(c);
            }
    }
    for (auto i : rep_of) {
        RegularDerivation::Node node{d.nodes[i].rule, {}};
        for (auto c : d.nodes[i].children) node.children.push_back(id_of.at(block[c]));
        out.nodes.push_back(std::move(node));
    }
    return out;
}

}  // namespace unravel
