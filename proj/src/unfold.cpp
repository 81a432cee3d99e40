#include "unravel/unfold.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <sstream>

namespace unravel {

std::vector<std::size_t> ResetRep::buds() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].bud) out.push_back(i);
    return out;
}

bool ResetRep::is_strict_ancestor(std::size_t a, std::size_t n) const {
    for (auto p = nodes[n].parent; p; p = nodes[*p].parent)
        if (*p == a) return true;
    return false;
}

std::size_t ResetRep::lca(std::size_t a, std::size_t b) const {
    while (nodes[a].depth > nodes[b].depth) a = *nodes[a].parent;
    while (nodes[b].depth > nodes[a].depth) b = *nodes[b].parent;
    while (a != b) a = *nodes[a].parent, b = *nodes[b].parent;
    return a;
}

std::vector<std::size_t> ResetRep::branch(std::size_t n) const {
    std::vector<std::size_t> out{n};
    for (auto p = nodes[n].parent; p; p = nodes[*p].parent) out.push_back(*p);
    std::reverse(out.begin(), out.end());
    return out;
}

std::size_t default_safety_depth(const RegularDerivation& d, const CyclicSystem& sys) {
    if (const char* env = std::getenv("UNRAVEL_SAFETY_DEPTH")) {
        auto v = std::strtoull(env, nullptr, 10);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    auto m = sys.max_ob();
    auto names = (m < 20 ? (std::size_t{1} << m) : (std::size_t{1} << 20)) + m + 1;
    auto cl = closure(induced_call_graph(d, sys)).size();
    return 10 * std::max<std::size_t>(cl, 1) * names;
}

namespace {

// Oldest name in resets whose introduction is no later than max_depth.
std::optional<Name> qualifying_prog(const Annotation& ann, std::size_t max_depth) {
    std::optional<Name> best;
    for (const auto& r : ann.resets) {
        if (!ann.has(r.name) || ann.binding.at(r.name).intro_depth > max_depth) continue;
        if (!best || ann.position_of(r.name) < ann.position_of(*best)) best = r.name;
    }
    return best;
}

BudInfo make_bud(const Annotation& ann, std::size_t sprout, Name prog) {
    const auto* rec = ann.reset_record(prog);
    return BudInfo{sprout, prog, rec->cover, rec->cover_binding};
}

struct Pending {
    std::optional<std::size_t> parent;
    std::size_t graph_node;
    Annotation annotation;
};

}  // namespace

ResetRep build_reset_rep(const RegularDerivation& d, const CyclicSystem& sys, UnfoldOptions opts) {
    if (auto v = check_soundness(d, sys); !v.terminating) throw UnsoundInput(v);
    const auto limit = opts.safety_depth ? opts.safety_depth : default_safety_depth(d, sys);

    ResetRep rep;
    std::vector<Pending> work;
    work.push_back({std::nullopt, d.root, init_annotation(sys.conclusion_of(d.nodes[d.root].rule).ob())});
    while (!work.empty()) {
        auto item = std::move(work.back());
        work.pop_back();
        const auto id = rep.nodes.size();
        RepNode node;
        node.graph_node = item.graph_node;
        node.rule = d.nodes[item.graph_node].rule;
        node.annotation = std::move(item.annotation);
        node.parent = item.parent;
        node.depth = item.parent ? rep.nodes[*item.parent].depth + 1 : 0;
        if (node.depth > limit) throw InternalError("unfold exceeded safety depth " + std::to_string(limit));
        if (item.parent) rep.nodes[*item.parent].children.push_back(id);

        for (auto a = node.parent; a; a = rep.nodes[*a].parent) {
            const auto& anc = rep.nodes[*a];
            if (anc.graph_node != node.graph_node || !same_shape(anc.annotation, node.annotation)) continue;
            if (auto p = qualifying_prog(node.annotation, anc.depth)) {
                node.bud = make_bud(node.annotation, *a, *p);
                break;
            }
        }
        const bool leaf = node.bud.has_value();
        rep.nodes.push_back(std::move(node));
        if (leaf) continue;

        const auto& rule = sys.rule(d.nodes[item.graph_node].rule);
        const auto& kids = d.nodes[item.graph_node].children;
        for (std::size_t k = kids.size(); k-- > 0;)
            work.push_back({id, kids[k], step(rep.nodes[id].annotation, rule.graphs[k], rep.nodes[id].depth + 1)});
    }
    return rep;
}

namespace {

std::vector<Name> prefix_to_prog(const RepNode& b) {
    const auto& names = b.annotation.names;
    auto pos = b.annotation.position_of(b.bud->prog);
    return {names.begin(), names.begin() + static_cast<std::ptrdiff_t>(pos + 1)};
}

}  // namespace

BudOrder bud_age_compare(const ResetRep& rep, std::size_t b, std::size_t other) {
    const auto& x = rep.nodes[b];
    const auto& y = rep.nodes[other];
    auto px = prefix_to_prog(x), py = prefix_to_prog(y);
    auto shared = std::min(px.size(), py.size());
    if (!std::equal(px.begin(), px.begin() + static_cast<std::ptrdiff_t>(shared), py.begin())) return BudOrder::Incomparable;
    // Variables are x_{depth,position} on every branch, so buds on different
    // branches can still share them.
    for (std::size_t i = 0; i < shared; ++i)
        if (x.annotation.binding.at(px[i]).var != y.annotation.binding.at(py[i]).var) return BudOrder::Incomparable;
    if (px.size() == py.size()) return BudOrder::Equal;
    return px.size() < py.size() ? BudOrder::Older : BudOrder::Younger;
}

std::set<std::size_t> reachable(const ResetRep& rep, std::size_t n) {
    std::set<std::size_t> seen{n};
    std::deque<std::size_t> queue{n};
    while (!queue.empty()) {
        auto cur = queue.front();
        queue.pop_front();
        std::vector<std::size_t> next = rep.nodes[cur].children;
        if (rep.nodes[cur].bud) next.push_back(rep.nodes[cur].bud->sprout);
        for (auto m : next)
            if (seen.insert(m).second) queue.push_back(m);
    }
    return seen;
}

std::size_t oldest_bud(const ResetRep& rep, const std::vector<std::size_t>& buds) {
    auto sorted = buds;
    std::sort(sorted.begin(), sorted.end());
    for (auto b : sorted) {
        bool ok = std::all_of(sorted.begin(), sorted.end(), [&](auto o) {
            auto c = bud_age_compare(rep, b, o);
            return o == b || c == BudOrder::Older || c == BudOrder::Equal;
        });
        if (ok) return b;
    }
    throw InternalError("no oldest bud among mutually reachable buds");
}

namespace {

struct Unfolding {
    std::optional<std::size_t> parent;
    std::size_t rep_node;
    Annotation annotation;
    std::vector<std::pair<std::size_t, std::size_t>> avail;  // bud -> new node
};

std::optional<std::size_t> lookup(const std::vector<std::pair<std::size_t, std::size_t>>& avail, std::size_t bud) {
    for (const auto& [b, n] : avail)
        if (b == bud) return n;
    return std::nullopt;
}

}  // namespace

ResetRep respect_induction_order(const ResetRep& rep, const CyclicSystem& sys, UnfoldOptions opts) {
    std::size_t limit = opts.safety_depth;
    if (!limit) {
        if (const char* env = std::getenv("UNRAVEL_SAFETY_DEPTH")) limit = std::strtoull(env, nullptr, 10);
    }
    if (!limit) {
        auto m = sys.max_ob();
        limit = 10 * rep.nodes.size() * ((std::size_t{1} << std::min<std::size_t>(m, 20)) + m + 1);
    }

    std::map<std::size_t, std::vector<std::size_t>> buds_at;
    for (auto b : rep.buds()) buds_at[rep.nodes[b].bud->sprout].push_back(b);
    for (auto& [s, list] : buds_at)
        std::stable_sort(list.begin(), list.end(), [&](auto x, auto y) {
            const auto& ax = rep.nodes[x];
            const auto& ay = rep.nodes[y];
            return ax.annotation.position_of(ax.bud->prog) < ay.annotation.position_of(ay.bud->prog);
        });

    ResetRep out;
    std::vector<Unfolding> work;
    work.push_back({std::nullopt, rep.root, rep.nodes[rep.root].annotation, {}});
    while (!work.empty()) {
        auto item = std::move(work.back());
        work.pop_back();
        const auto id = out.nodes.size();
        const auto& r = rep.nodes[item.rep_node];
        RepNode node;
        node.graph_node = r.graph_node;
        node.rule = r.rule;
        node.annotation = std::move(item.annotation);
        node.parent = item.parent;
        node.depth = item.parent ? out.nodes[*item.parent].depth + 1 : 0;
        node.origin = item.rep_node;
        if (node.depth > limit) throw InternalError("re-unfolding exceeded safety depth " + std::to_string(limit));
        if (item.parent) out.nodes[*item.parent].children.push_back(id);
        auto avail = std::move(item.avail);

        if (r.bud) {
            if (auto s = lookup(avail, item.rep_node)) {
                const auto& sprout = out.nodes[*s];
                const auto prog = r.bud->prog;
                const auto& ann = node.annotation;
                if (same_shape(ann, sprout.annotation) && ann.has(prog) && ann.was_reset(prog) &&
                    ann.binding.at(prog).intro_depth <= sprout.depth) {
                    node.bud = make_bud(ann, *s, prog);
                    out.nodes.push_back(std::move(node));
                    continue;
                }
                for (auto& [b, n] : avail)
                    if (b == item.rep_node) n = id;
            }
        }

        const auto eff = r.bud ? r.bud->sprout : item.rep_node;
        for (auto b : buds_at[eff]) {
            if (lookup(avail, b)) continue;
            avail.emplace_back(b, id);
            // Entries sprouting nearer the root must be at least as old as b
            // to stay. Buds sharing this node need no order among them.
            std::erase_if(avail, [&](const auto& entry) {
                if (entry.second == id) return false;
                auto c = bud_age_compare(rep, entry.first, b);
                return c != BudOrder::Older && c != BudOrder::Equal;
            });
        }

        const auto& e = rep.nodes[eff];
        const auto& rule = sys.rule(e.rule);
        const auto depth = node.depth;
        auto parent_ann = node.annotation;
        out.nodes.push_back(std::move(node));
        for (std::size_t k = e.children.size(); k-- > 0;) {
            auto c = e.children[k];
            auto ann = step(parent_ann, rule.graphs[k], depth + 1);
            if (!same_shape(ann, rep.nodes[c].annotation))
                throw InternalError("re-unfolding diverged from representative annotation at node " + std::to_string(c));
            work.push_back({id, c, std::move(ann), avail});
        }
    }
    return out;
}

std::vector<Diagnostic> check_reset_invariants(const ResetRep& rep, const CyclicSystem& sys) {
    std::vector<Diagnostic> out;
    for (std::size_t i = 0; i < rep.nodes.size(); ++i) {
        const auto& n = rep.nodes[i];
        auto where = "rep node " + std::to_string(i);
        if (!n.bud) {
            auto want = sys.rule(n.rule).premises.size();
            if (n.children.size() != want)
                out.push_back({where, "has " + std::to_string(n.children.size()) + " children, rule needs " +
                                          std::to_string(want)});
            continue;
        }
        const auto& b = *n.bud;
        if (!rep.is_strict_ancestor(b.sprout, i)) {
            out.push_back({where, "sprout is not a strict ancestor"});
            continue;
        }
        const auto& s = rep.nodes[b.sprout];
        if (s.graph_node != n.graph_node) out.push_back({where, "sprout has a different graph node"});
        if (s.annotation.names != n.annotation.names) out.push_back({where, "names differ from sprout"});
        if (s.annotation.stacks != n.annotation.stacks) out.push_back({where, "stacks differ from sprout"});
        const auto* rec = n.annotation.reset_record(b.prog);
        if (!rec) {
            out.push_back({where, "prog " + label(b.prog) + " was not reset"});
            continue;
        }
        if (rec->cover != b.cov) out.push_back({where, "cov does not match the recorded cover"});
        if (!n.annotation.has(b.prog)) {
            out.push_back({where, "prog " + label(b.prog) + " missing from names"});
            continue;
        }
        const auto var = n.annotation.binding.at(b.prog).var;
        if (n.annotation.binding.at(b.prog).intro_depth > s.depth)
            out.push_back({where, "prog introduced below the sprout"});
        for (auto k = n.parent; k; k = rep.nodes[*k].parent) {
            const auto& ann = rep.nodes[*k].annotation;
            if (!ann.has(b.prog) || ann.binding.at(b.prog).var != var) {
                out.push_back({where, "prog does not persist at node " + std::to_string(*k)});
                break;
            }
            if (*k == b.sprout) break;
        }
    }
    return out;
}

std::vector<Diagnostic> check_induction_order(const ResetRep& rep, OrderScope scope) {
    std::vector<Diagnostic> out;
    auto buds = rep.buds();
    std::map<std::size_t, std::set<std::size_t>> reach;
    if (scope == OrderScope::Reachable)
        for (auto b : buds) reach[b] = reachable(rep, b);
    for (auto b1 : buds)
        for (auto b2 : buds) {
            if (b1 == b2) continue;
            const auto s1 = rep.nodes[b1].bud->sprout;
            if (!rep.is_strict_ancestor(rep.nodes[b2].bud->sprout, s1)) continue;
            if (scope == OrderScope::Reachable ? !reach[b1].count(b2) || !reach[b2].count(b1)
                                               : !rep.is_strict_ancestor(s1, b2))
                continue;
            if (auto c = bud_age_compare(rep, b2, b1); c != BudOrder::Older && c != BudOrder::Equal)
                out.push_back({"bud " + std::to_string(b2),
                               "sprout nearer the root than that of bud " + std::to_string(b1) + " but not older"});
        }
    return out;
}

namespace {

std::string html_stacks(const Annotation& ann) {
    std::string s = format_stacks(ann), out;
    for (char c : s) {
        if (c == '{') out += "<S>";
        else if (c == '}') out += "</S>";
        else out += c;
    }
    return out;
}

std::string html_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else if (c == '&') out += "&amp;";
        else out += c;
    }
    return out;
}

}  // namespace

std::string to_dot(const ResetRep& rep) {
    std::ostringstream os;
    os << "digraph rep {\n  node [shape=box, fontname=\"monospace\"];\n";
    for (std::size_t i = 0; i < rep.nodes.size(); ++i) {
        const auto& n = rep.nodes[i];
        os << "  n" << i << " [label=<" << html_escape(n.rule) << "<BR/>" << html_stacks(n.annotation) << ">];\n";
    }
    for (std::size_t i = 0; i < rep.nodes.size(); ++i) {
        const auto& n = rep.nodes[i];
        for (auto c : n.children) os << "  n" << i << " -> n" << c << ";\n";
        if (n.bud)
            os << "  n" << i << " -> n" << n.bud->sprout << " [style=dashed, label=\"" << label(n.bud->prog)
               << "\", constraint=false];\n";
    }
    os << "}\n";
    return os.str();
}

std::string format_trace(const ResetRep& rep) {
    std::ostringstream os;
    for (std::size_t i = 0; i < rep.nodes.size(); ++i) {
        const auto& n = rep.nodes[i];
        os << std::string(2 * n.depth, ' ') << "#" << i << " " << n.rule << " " << format_stacks(n.annotation);
        if (!n.annotation.resets.empty()) {
            os << " reset";
            for (const auto& r : n.annotation.resets) os << " " << label(r.name) << "/" << label(r.cover);
        }
        if (n.bud) os << " -> #" << n.bud->sprout << " prog " << label(n.bud->prog);
        os << "\n";
    }
    return os.str();
}

}  // namespace unravel
