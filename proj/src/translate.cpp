#include "unravel/translate.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "unravel/proof_kit.hpp"

namespace unravel {

std::vector<VarRef> relevant_ancestors(const ResetRep& rep, std::size_t n) {
    std::set<VarRef> vars;
    const auto& node = rep.nodes[n];
    for (const auto& a : node.annotation.names) vars.insert(node.annotation.binding.at(a).var);
    if (node.bud) vars.insert(node.bud->cov_binding.var);
    return {vars.begin(), vars.end()};
}

namespace {

// Facts are read off the stacks: a name below another on some stack is
// strictly older, and every name on stack j bounds x_j. Graph ancestry alone
// is not enough, since a bud only repeats its sprout's stacks. Buds read the
// stacks before resetting so the cover is still there.
std::vector<OrderFact> ineq_with(const ResetRep& rep, const CyclicSystem& sys, std::size_t n) {
    const auto& node = rep.nodes[n];
    const auto& ann = node.annotation;
    const auto branch = rep.branch(n);
    auto sort_of = [&](VarRef v) { return sys.conclusion_of(rep.nodes[branch[v.depth]].rule).sorts.at(v.position); };
    auto var_of = [&](Name a) -> std::optional<VarRef> {
        if (ann.has(a)) return ann.binding.at(a).var;
        if (node.bud && a == node.bud->cov) return node.bud->cov_binding.var;
        return std::nullopt;
    };
    const auto& stacks = node.bud && !ann.raw_stacks.empty() ? ann.raw_stacks : ann.stacks;
    std::set<std::pair<VarRef, VarRef>> strict, weak;
    for (std::size_t j = 0; j < stacks.size(); ++j) {
        std::vector<VarRef> vs;
        for (auto a : stacks[j])
            if (auto v = var_of(a)) vs.push_back(*v);
        for (std::size_t p = 0; p < vs.size(); ++p) {
            for (std::size_t q = p + 1; q < vs.size(); ++q) strict.insert({vs[p], vs[q]});
            weak.insert({vs[p], VarRef{node.depth, j}});
        }
    }
    std::vector<OrderFact> out;
    for (const auto& [y, z] : strict) out.push_back({true, y, z, sort_of(z)});
    for (const auto& [y, z] : weak) out.push_back({false, y, z, sort_of(z)});
    return out;
}

struct Group {
    std::size_t sprout;
    Name prog;
    std::vector<std::size_t> buds;
};

struct HypEntry {
    std::size_t group;
    Formula formula;
    VarRef prog;
    std::vector<VarRef> quantified;
};

struct State {
    SortContext ctx;
    std::map<VarRef, std::string> naming;
    std::vector<HypEntry> hyps;
};

std::string var_name(VarRef v) { return "x" + std::to_string(v.depth) + "_" + std::to_string(v.position); }

class Translator {
public:
    Translator(const ResetRep& rep, const CyclicSystem& sys)
        : rep_(rep), sys_(sys) {
        std::map<std::size_t, std::vector<std::size_t>> by_sprout;
        for (auto b : rep.buds()) by_sprout[rep.nodes[b].bud->sprout].push_back(b);
        for (auto& [s, buds] : by_sprout) {
            const auto& ann = rep.nodes[s].annotation;
            std::map<std::size_t, std::size_t> by_pos;  // prog position -> group
            for (auto b : buds) {
                auto prog = rep.nodes[b].bud->prog;
                auto pos = ann.position_of(prog);
                auto [it, fresh] = by_pos.try_emplace(pos, groups_.size());
                if (fresh) groups_.push_back({s, prog, {}});
                groups_[it->second].buds.push_back(b);
                group_of_bud_[b] = it->second;
            }
            for (const auto& [pos, g] : by_pos) groups_at_[s].push_back(g);
        }
    }

    ProofNode run() {
        const auto root = rep_.root;
        const auto& judg = sys_.conclusion_of(rep_.nodes[root].rule);
        State st;
        for (std::size_t j = 0; j < judg.ob(); ++j) {
            VarRef v{0, j};
            st.naming[v] = var_name(v);
            st.ctx.emplace_back(var_name(v), judg.sorts[j]);
        }
        OpenProof op(Sequent{st.ctx, {}, atom(root, st)});
        for (const auto& f : ineq_formulas(root, st)) cut_in(op, f, derive_order(Sequent{op.top().ctx, op.top().hyps, f}));
        if (groups_at_.count(root)) enter_sprout(op, root, st);
        return std::move(op).close(prove(root, st));
    }

private:
    const std::vector<OrderFact>& facts(std::size_t n) {
        auto it = facts_.find(n);
        if (it == facts_.end()) it = facts_.emplace(n, ineq_with(rep_, sys_, n)).first;
        return it->second;
    }

    static const std::string& name(const State& st, VarRef v) {
        auto it = st.naming.find(v);
        if (it == st.naming.end()) throw InternalError("no variable for " + var_name(v));
        return it->second;
    }

    std::vector<Formula> ineq_formulas(std::size_t n, const State& st) {
        std::vector<Formula> out;
        for (const auto& f : facts(n)) {
            auto l = Term::free(name(st, f.from)), r = Term::free(name(st, f.to));
            out.push_back(f.strict ? Formula::gt(f.sort, l, r) : Formula::geq(f.sort, l, r));
        }
        return out;
    }

    Formula atom(std::size_t n, const State& st) const {
        const auto& node = rep_.nodes[n];
        const auto& judg = sys_.conclusion_of(node.rule);
        std::vector<Term> args;
        for (std::size_t j = 0; j < judg.ob(); ++j) args.push_back(Term::free(name(st, VarRef{node.depth, j})));
        return Formula::atom(judg.id, std::move(args));
    }

    Sequent goal(std::size_t n, const State& st) {
        auto hyps = ineq_formulas(n, st);
        for (const auto& h : st.hyps) hyps.push_back(h.formula);
        return Sequent{st.ctx, std::move(hyps), atom(n, st)};
    }

    void enter_sprout(OpenProof& op, std::size_t s, State& st) {
        const auto& ann = rep_.nodes[s].annotation;
        for (auto g : groups_at_.at(s)) {
            auto prog = ann.binding.at(groups_[g].prog).var;
            std::map<std::string, VarRef> inverse;
            for (const auto& [v, n] : st.naming) inverse[n] = v;
            auto ip = expand_ind_prime(op, name(st, prog), sys_.inductive_sorts, supply_);
            HypEntry entry{g, ip.hypothesis, prog, {}};
            for (const auto& w : ip.quantified) {
                auto it = inverse.find(w);
                if (it == inverse.end()) throw InternalError("quantified variable " + w + " has no origin");
                entry.quantified.push_back(it->second);
            }
            for (auto& [v, n] : st.naming)
                if (auto it = ip.renaming.find(n); it != ip.renaming.end()) n = it->second;
            for (auto& h : st.hyps) h.formula = subst(h.formula, ip.renaming);
            st.hyps.push_back(std::move(entry));
            st.ctx = op.top().ctx;
        }
        if (!(op.top() == goal(s, st))) throw InternalError("sprout context drifted at rep node " + std::to_string(s));
    }

    bool keeps(const HypEntry& h, std::size_t c) {
        auto it = reach_.find(c);
        if (it == reach_.end()) it = reach_.emplace(c, reachable(rep_, c)).first;
        const auto& r = it->second;
        const auto& buds = groups_[h.group].buds;
        return std::any_of(buds.begin(), buds.end(), [&](auto b) { return r.count(b) > 0; });
    }

    ProofNode prove(std::size_t n, const State& st) {
        const auto& node = rep_.nodes[n];
        auto g = goal(n, st);
        if (node.bud) return close_bud(n, st, g);

        const auto& rule = sys_.rule(node.rule);
        ProofNode out;
        out.tag = RuleTag::CRule;
        out.rule_id = rule.id;
        out.conclusion = g;
        for (std::size_t i = 0; i < rule.premises.size(); ++i) {
            const auto c = node.children.at(i);
            const auto& judg = sys_.judgment(rule.premises[i]);
            State child = st;
            std::vector<Term> ys;
            for (std::size_t j = 0; j < judg.ob(); ++j) {
                VarRef v{node.depth + 1, j};
                auto y = var_name(v);
                out.fresh.push_back(y);
                child.naming[v] = y;
                child.ctx.emplace_back(y, judg.sorts[j]);
                ys.push_back(Term::free(y));
            }
            auto hyps = g.hyps;
            for (const auto& e : rule.graphs[i].edges()) {
                auto x = g.concl.args()[e.src];
                const auto& sort = judg.sorts[e.dst];
                hyps.push_back(e.label == EdgeLabel::Progressing ? Formula::gt(sort, x, ys[e.dst]) : Formula::geq(sort, x, ys[e.dst]));
            }
            OpenProof op(Sequent{child.ctx, std::move(hyps), Formula::atom(judg.id, ys)});

            auto wanted = ineq_formulas(c, child);
            for (const auto& f : wanted) cut_in(op, f, derive_order(Sequent{op.top().ctx, op.top().hyps, f}));
            const bool sprout = groups_at_.count(c) > 0;
            if (sprout) std::erase_if(child.hyps, [&](const HypEntry& h) { return !keeps(h, c); });
            for (const auto& h : child.hyps) wanted.push_back(h.formula);
            reshape(op, wanted);
            if (sprout) enter_sprout(op, c, child);
            out.premises.push_back(std::move(op).close(prove(c, child)));
        }
        return out;
    }

    VarRef sigma(std::size_t t, const HypEntry& h, VarRef v) const {
        const auto& bud = *rep_.nodes[t].bud;
        const auto& sprout = rep_.nodes[bud.sprout];
        if (v.depth == sprout.depth) return VarRef{rep_.nodes[t].depth, v.position};
        if (v == h.prog) return bud.cov_binding.var;
        for (const auto& a : sprout.annotation.names)
            if (sprout.annotation.binding.at(a).var == v) return rep_.nodes[t].annotation.binding.at(a).var;
        // Only an outer hypothesis mentions v, and the bud still sees it.
        if (v.depth < sprout.depth) return v;
        throw InternalError("no substitute for " + var_name(v) + " at bud " + std::to_string(t));
    }

    ProofNode obligation(const Sequent& g, const State& st, const Formula& want) {
        Sequent s{g.ctx, g.hyps, want};
        if (want.is_order()) return derive_order(s);
        for (std::size_t i = 0; i < g.hyps.size(); ++i)
            if (g.hyps[i] == want) return lookup(s, i);
        auto fv = free_vars(want);
        const auto offset = g.hyps.size() - st.hyps.size();
        for (std::size_t k = 0; k < st.hyps.size() && fv.size() == 1; ++k) {
            const auto& u = name(st, st.hyps[k].prog);
            if (subst(st.hyps[k].formula, {{u, fv[0]}}) == want)
                return derive_hyp_monotone(s, offset + k, u, fv[0], supply_);
        }
        throw InternalError("cannot discharge " + to_string(want));
    }

    ProofNode close_bud(std::size_t t, const State& st, const Sequent& g) {
        auto gid = group_of_bud_.at(t);
        const auto offset = g.hyps.size() - st.hyps.size();
        std::size_t k = 0;
        while (k < st.hyps.size() && st.hyps[k].group != gid) ++k;
        if (k == st.hyps.size()) throw InternalError("hypothesis for bud " + std::to_string(t) + " is gone");
        const auto& h = st.hyps[k];

        auto p = lookup(Sequent{g.ctx, g.hyps, h.formula}, offset + k);
        p = forall_elim(std::move(p), name(st, sigma(t, h, h.prog)));
        auto guard = p.conclusion.concl.lhs();
        p = imp_elim(std::move(p), obligation(g, st, guard));
        for (auto w : h.quantified) p = forall_elim(std::move(p), name(st, sigma(t, h, w)));
        while (!(p.conclusion.concl == g.concl)) {
            if (p.conclusion.concl.kind() != FormulaKind::Imp)
                throw InternalError("hypothesis instance does not reach the bud's goal");
            auto want = p.conclusion.concl.lhs();
            p = imp_elim(std::move(p), obligation(g, st, want));
        }
        p.note = "bud " + rep_.nodes[t].rule;
        return p;
    }

    const ResetRep& rep_;
    const CyclicSystem& sys_;
    std::vector<Group> groups_;
    std::map<std::size_t, std::vector<std::size_t>> groups_at_;
    std::map<std::size_t, std::size_t> group_of_bud_;
    std::map<std::size_t, std::vector<OrderFact>> facts_;
    std::map<std::size_t, std::set<std::size_t>> reach_;
    NameSupply supply_;
};

void skeleton_forest(const ProofNode& p, std::vector<Skeleton>& out) {
    if (p.tag == RuleTag::CRule) {
        Skeleton s{p.rule_id, false, {}};
        for (const auto& q : p.premises) skeleton_forest(q, s.children);
        out.push_back(std::move(s));
        return;
    }
    if (p.note.rfind("bud ", 0) == 0) {
        out.push_back(Skeleton{p.note.substr(4), true, {}});
        return;
    }
    for (const auto& q : p.premises) skeleton_forest(q, out);
}

Skeleton rep_subtree(const ResetRep& rep, std::size_t n) {
    const auto& node = rep.nodes[n];
    Skeleton s{node.rule, node.bud.has_value(), {}};
    for (auto c : node.children) s.children.push_back(rep_subtree(rep, c));
    return s;
}

SortContext map_ctx(const SortContext& ctx, const std::function<SortId(const SortId&)>& f) {
    SortContext out;
    for (const auto& [n, s] : ctx) out.emplace_back(n, f(s));
    return out;
}

}  // namespace

std::vector<OrderFact> ineq_facts(const ResetRep& rep, const CyclicSystem& sys, std::size_t n) {
    return ineq_with(rep, sys, n);
}

ProofNode translate(const ResetRep& rep, const CyclicSystem& sys) { return Translator(rep, sys).run(); }

Skeleton extract_skeleton(const ProofNode& proof) {
    std::vector<Skeleton> forest;
    skeleton_forest(proof, forest);
    if (forest.size() != 1) throw std::invalid_argument("skeleton has " + std::to_string(forest.size()) + " roots");
    return forest.front();
}

Skeleton rep_skeleton(const ResetRep& rep) { return rep_subtree(rep, rep.root); }

ProofNode map_sorts(const ProofNode& proof, const std::function<SortId(const SortId&)>& f) {
    ProofNode out;
    out.tag = proof.tag;
    out.index = proof.index;
    out.var = proof.var;
    out.rule_id = proof.rule_id;
    out.fresh = proof.fresh;
    out.note = proof.note;
    out.conclusion.ctx = map_ctx(proof.conclusion.ctx, f);
    for (const auto& h : proof.conclusion.hyps) out.conclusion.hyps.push_back(map_sorts(h, f));
    out.conclusion.concl = map_sorts(proof.conclusion.concl, f);
    for (const auto& q : proof.premises) out.premises.push_back(map_sorts(q, f));
    return out;
}

CyclicSystem map_sorts(const CyclicSystem& sys, const std::function<SortId(const SortId&)>& f) {
    CyclicSystem out = sys;
    out.inductive_sorts.clear();
    for (const auto& s : sys.inductive_sorts) out.inductive_sorts.insert(f(s));
    for (auto& [_, j] : out.judgments)
        for (auto& s : j.sorts) s = f(s);
    return out;
}

}  // namespace unravel
