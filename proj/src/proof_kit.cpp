#include "unravel/proof_kit.hpp"

#include <algorithm>
#include <deque>

namespace unravel {

std::string NameSupply::prime(const std::string& base) {
    auto stem = base.substr(0, base.find('\''));
    return stem + "'" + std::to_string(next_++);
}

std::string NameSupply::fresh(const std::string& stem) { return stem + std::to_string(next_++); }

void OpenProof::push(ProofNode node, std::size_t main, Sequent next) {
    node.conclusion = top_;
    spine_.emplace_back(std::move(node), main);
    top_ = std::move(next);
}

void OpenProof::push_unary(RuleTag tag, Sequent next, std::string var, std::size_t index, std::string note) {
    ProofNode n;
    n.tag = tag;
    n.var = std::move(var);
    n.index = index;
    n.note = std::move(note);
    n.premises.resize(1);
    push(std::move(n), 0, std::move(next));
}

ProofNode OpenProof::close(ProofNode top_proof) && {
    if (!(top_proof.conclusion == top_))
        throw ProofBuildError("closing proof concludes " + to_string(top_proof.conclusion) + ", open premise is " + to_string(top_));
    ProofNode cur = std::move(top_proof);
    for (auto it = spine_.rbegin(); it != spine_.rend(); ++it) {
        it->first.premises[it->second] = std::move(cur);
        cur = std::move(it->first);
    }
    return cur;
}

namespace {

ProofNode leaf(RuleTag tag, Sequent s) {
    ProofNode n;
    n.tag = tag;
    n.conclusion = std::move(s);
    return n;
}

Sequent with_concl(const Sequent& s, Formula phi) { return Sequent{s.ctx, s.hyps, std::move(phi)}; }

Sequent with_hyps(const Sequent& s, std::vector<Formula> hyps) { return Sequent{s.ctx, std::move(hyps), s.concl}; }

}  // namespace

void reshape(OpenProof& op, const std::vector<Formula>& target) {
    auto hyps = op.top().hyps;
    // slot[i] = target position of hyps[i], or npos when it goes away
    constexpr auto npos = static_cast<std::size_t>(-1);
    std::vector<std::size_t> slot(hyps.size(), npos);
    for (std::size_t t = 0; t < target.size(); ++t) {
        bool found = false;
        for (std::size_t i = 0; i < hyps.size() && !found; ++i)
            if (slot[i] == npos && hyps[i] == target[t]) slot[i] = t, found = true;
        if (!found) throw ProofBuildError("reshape: no hypothesis for " + to_string(target[t]));
    }
    for (std::size_t i = hyps.size(); i-- > 0;) {
        if (slot[i] != npos) continue;
        for (std::size_t p = i; p + 1 < hyps.size(); ++p) {
            std::swap(hyps[p], hyps[p + 1]);
            std::swap(slot[p], slot[p + 1]);
            op.push_unary(RuleTag::Exchange, with_hyps(op.top(), hyps), {}, p);
        }
        hyps.pop_back();
        slot.pop_back();
        op.push_unary(RuleTag::Weakening, with_hyps(op.top(), hyps));
    }
    for (bool swapped = true; swapped;) {
        swapped = false;
        for (std::size_t p = 0; p + 1 < hyps.size(); ++p)
            if (slot[p] > slot[p + 1]) {
                std::swap(hyps[p], hyps[p + 1]);
                std::swap(slot[p], slot[p + 1]);
                op.push_unary(RuleTag::Exchange, with_hyps(op.top(), hyps), {}, p);
                swapped = true;
            }
    }
}

ProofNode lookup(const Sequent& s, std::size_t k) {
    if (k >= s.hyps.size() || !(s.hyps[k] == s.concl)) throw ProofBuildError("lookup: hypothesis " + std::to_string(k) + " is not the goal");
    OpenProof op(s);
    reshape(op, {s.concl});
    auto top = op.top();
    return std::move(op).close(leaf(RuleTag::Identity, top));
}

void cut_in(OpenProof& op, const Formula& phi, ProofNode proof_of_phi) {
    const auto& s = op.top();
    if (!(proof_of_phi.conclusion == with_concl(s, phi))) throw ProofBuildError("cut_in: proof does not fit the context");
    ProofNode elim;
    elim.tag = RuleTag::ImpElim;
    elim.premises.resize(2);
    elim.premises[1] = std::move(proof_of_phi);
    auto major = with_concl(s, Formula::imp(phi, s.concl));
    op.push(std::move(elim), 0, major);
    auto hyps = s.hyps;
    hyps.push_back(phi);
    op.push_unary(RuleTag::ImpIntro, Sequent{major.ctx, std::move(hyps), major.concl.rhs()});
}

ProofNode forall_elim(ProofNode p, const std::string& y) {
    const auto& c = p.conclusion;
    if (c.concl.kind() != FormulaKind::Forall) throw ProofBuildError("forall_elim: not universal: " + to_string(c.concl));
    ProofNode n;
    n.tag = RuleTag::ForallElim;
    n.var = y;
    n.conclusion = with_concl(c, open(c.concl.body(), y));
    n.premises.push_back(std::move(p));
    return n;
}

ProofNode imp_elim(ProofNode major, ProofNode minor) {
    const auto& c = major.conclusion;
    if (c.concl.kind() != FormulaKind::Imp || !(c.concl.lhs() == minor.conclusion.concl))
        throw ProofBuildError("imp_elim: " + to_string(minor.conclusion.concl) + " does not match " + to_string(c.concl));
    ProofNode n;
    n.tag = RuleTag::ImpElim;
    n.conclusion = with_concl(c, c.concl.rhs());
    n.premises.push_back(std::move(major));
    n.premises.push_back(std::move(minor));
    return n;
}

std::optional<std::vector<std::size_t>> find_order_path(const Sequent& goal) {
    const auto& g = goal.concl;
    if (!g.is_order() || g.args()[0].bound || g.args()[1].bound) return std::nullopt;
    const auto& from = g.args()[0].name;
    const auto& to = g.args()[1].name;
    const bool need_strict = g.kind() == FormulaKind::Gt;
    if (!need_strict && from == to) return std::vector<std::size_t>{};

    using State = std::pair<std::string, bool>;
    std::map<State, std::pair<State, std::size_t>> pred;
    std::deque<State> queue{{from, false}};
    std::set<State> seen{{from, false}};
    while (!queue.empty()) {
        auto cur = queue.front();
        queue.pop_front();
        if (cur.first == to && (cur.second || !need_strict) && !(cur.first == from && !cur.second)) {
            std::vector<std::size_t> path;
            for (auto s = cur; !(s.first == from && !s.second);) {
                auto [prev, idx] = pred.at(s);
                path.push_back(idx);
                s = prev;
            }
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (std::size_t i = 0; i < goal.hyps.size(); ++i) {
            const auto& h = goal.hyps[i];
            if (!h.is_order() || h.head() != g.head() || h.args()[0].bound || h.args()[1].bound) continue;
            if (h.args()[0].name != cur.first) continue;
            State next{h.args()[1].name, cur.second || h.kind() == FormulaKind::Gt};
            if (seen.insert(next).second) {
                pred[next] = {cur, i};
                queue.push_back(next);
            }
        }
    }
    return std::nullopt;
}

ProofNode derive_ineq(const Sequent& goal, const std::vector<std::size_t>& witness) {
    const auto& g = goal.concl;
    if (!g.is_order()) throw ProofBuildError("derive_ineq: goal is not an order fact");
    if (witness.empty()) {
        if (g.kind() != FormulaKind::Geq || !(g.args()[0] == g.args()[1])) throw ProofBuildError("derive_ineq: empty witness for a non-reflexive goal");
        return leaf(RuleTag::GeqRefl, goal);
    }
    auto fact = [&](std::size_t i) {
        if (i >= goal.hyps.size() || !goal.hyps[i].is_order()) throw ProofBuildError("derive_ineq: witness entry is not an order hypothesis");
        return lookup(with_concl(goal, goal.hyps[i]), i);
    };
    ProofNode acc = fact(witness[0]);
    for (std::size_t k = 1; k < witness.size(); ++k) {
        ProofNode next = fact(witness[k]);
        const auto& a = acc.conclusion.concl;
        const auto& b = next.conclusion.concl;
        if (!(a.args()[1] == b.args()[0])) throw ProofBuildError("derive_ineq: witness is not a path");
        const bool as = a.kind() == FormulaKind::Gt, bs = b.kind() == FormulaKind::Gt;
        ProofNode n;
        if (as && bs) {
            // weaken the second step so gt-extend1 applies
            ProofNode sub;
            sub.tag = RuleTag::GeqSubsum;
            sub.conclusion = with_concl(goal, Formula::geq(b.head(), b.args()[0], b.args()[1]));
            sub.premises.push_back(std::move(next));
            next = std::move(sub);
        }
        n.tag = as ? RuleTag::GtExtend1 : (bs ? RuleTag::GtExtend0 : RuleTag::GeqTrans);
        auto concl = (as || bs) ? Formula::gt(a.head(), a.args()[0], b.args()[1]) : Formula::geq(a.head(), a.args()[0], b.args()[1]);
        n.conclusion = with_concl(goal, concl);
        n.premises.push_back(std::move(acc));
        n.premises.push_back(std::move(next));
        acc = std::move(n);
    }
    const auto& got = acc.conclusion.concl;
    if (got.args() != g.args()) throw ProofBuildError("derive_ineq: witness ends at the wrong variables");
    if (got.kind() == g.kind()) return acc;
    if (g.kind() == FormulaKind::Gt) throw ProofBuildError("derive_ineq: witness is not strict");
    ProofNode sub;
    sub.tag = RuleTag::GeqSubsum;
    sub.conclusion = goal;
    sub.premises.push_back(std::move(acc));
    return sub;
}

ProofNode derive_order(const Sequent& goal) {
    auto path = find_order_path(goal);
    if (!path) throw ProofBuildError("no order path for " + to_string(goal));
    return derive_ineq(goal, *path);
}

ProofNode derive_hyp_monotone(const Sequent& goal, std::size_t hyp_index, const std::string& u, const std::string& v,
                              NameSupply& names) {
    if (hyp_index >= goal.hyps.size()) throw ProofBuildError("derive_hyp_monotone: no such hypothesis");
    const auto& hyp = goal.hyps[hyp_index];
    if (hyp.kind() != FormulaKind::Forall || hyp.body().kind() != FormulaKind::Imp ||
        hyp.body().lhs().kind() != FormulaKind::Gt || !(hyp.body().lhs().args()[0] == Term::free(u)) ||
        !(hyp.body().lhs().args()[1] == Term::at(0)))
        throw ProofBuildError("derive_hyp_monotone: hypothesis does not have the guarded shape");
    if (!(goal.concl == subst(hyp, {{u, v}}))) throw ProofBuildError("derive_hyp_monotone: goal is not the renamed hypothesis");
    if (u == v) return lookup(goal, hyp_index);

    const auto sort = hyp.head();
    const auto e = names.fresh("e");
    OpenProof op(goal);
    auto ctx = goal.ctx;
    ctx.emplace_back(e, sort);
    auto opened = open(goal.concl.body(), e);  // v > e → ψ(e)
    op.push_unary(RuleTag::ForallIntro, Sequent{ctx, goal.hyps, opened}, e);
    auto hyps = goal.hyps;
    hyps.push_back(opened.lhs());
    Sequent inner{ctx, hyps, opened.rhs()};
    op.push_unary(RuleTag::ImpIntro, inner);

    auto major = forall_elim(lookup(with_concl(inner, hyp), hyp_index), e);  // u > e → ψ(e)
    auto minor = derive_order(with_concl(inner, Formula::gt(sort, Term::free(u), Term::free(e))));
    return std::move(op).close(imp_elim(std::move(major), std::move(minor)));
}

IndPrime expand_ind_prime(OpenProof& op, const std::string& x, const std::set<SortId>& inductive, NameSupply& names) {
    const Sequent s = op.top();
    const auto* xs = sort_in(s.ctx, x);
    if (!xs) throw ProofBuildError("expand_ind_prime: " + x + " not in context");
    if (!inductive.count(*xs)) throw ProofBuildError("expand_ind_prime: sort " + *xs + " is not inductive");
    const SortId sort = *xs;

    std::set<std::string> mentioned;
    for (const auto& h : s.hyps)
        for (auto& n : free_vars(h)) mentioned.insert(n);
    for (auto& n : free_vars(s.concl)) mentioned.insert(n);
    SortContext others;
    for (const auto& entry : s.ctx)
        if (entry.first != x && mentioned.count(entry.first)) others.push_back(entry);

    Formula body = s.concl;
    for (auto it = s.hyps.rbegin(); it != s.hyps.rend(); ++it) body = Formula::imp(*it, body);
    std::vector<Formula> stages{body};  // stages[k] = ∀w_{k+1}..w_m. body
    for (auto it = others.rbegin(); it != others.rend(); ++it)
        stages.insert(stages.begin(), Formula::forall(it->second, close(stages.front(), it->first)));
    const Formula phi = stages.front();
    const Formula whole = Formula::forall(sort, close(phi, x));

    // Γ ⊢ δ from Γ ⊢ Γ→δ by eliminating each γ.
    for (std::size_t i = s.hyps.size(); i-- > 0;) {
        Formula major = s.concl;
        for (std::size_t k = s.hyps.size(); k-- > i;) major = Formula::imp(s.hyps[k], major);
        ProofNode elim;
        elim.tag = RuleTag::ImpElim;
        elim.premises.resize(2);
        elim.premises[1] = lookup(with_concl(s, s.hyps[i]), i);
        op.push(std::move(elim), 0, with_concl(s, major));
    }
    for (std::size_t k = others.size(); k-- > 0;)
        op.push_unary(RuleTag::ForallElim, with_concl(s, stages[k]), others[k].first);
    op.push_unary(RuleTag::ForallElim, with_concl(s, whole), x);

    IndPrime out;
    const auto xstar = names.prime(x);
    out.renaming[x] = xstar;
    for (const auto& [w, _] : others) {
        out.renaming[w] = names.prime(w);
        out.quantified.push_back(w);
    }
    out.hypothesis = Formula::forall(sort, Formula::imp(Formula::gt(sort, Term::free(xstar), Term::at(0)), close(phi, x)));

    auto ctx = s.ctx;
    ctx.emplace_back(xstar, sort);
    auto hyps = s.hyps;
    hyps.push_back(out.hypothesis);
    op.push_unary(RuleTag::GtInd, Sequent{ctx, hyps, open(close(phi, x), xstar)}, xstar, 0, "ind' " + x);

    Formula goal = open(close(phi, x), xstar);
    for (const auto& [w, wsort] : others) {
        const auto& wstar = out.renaming.at(w);
        ctx.emplace_back(wstar, wsort);
        goal = open(goal.body(), wstar);
        op.push_unary(RuleTag::ForallIntro, Sequent{ctx, hyps, goal}, wstar);
    }
    for (std::size_t i = 0; i < s.hyps.size(); ++i) {
        hyps.push_back(goal.lhs());
        goal = goal.rhs();
        op.push_unary(RuleTag::ImpIntro, Sequent{ctx, hyps, goal});
    }
    std::vector<Formula> target;
    for (const auto& h : s.hyps) target.push_back(subst(h, out.renaming));
    target.push_back(out.hypothesis);
    reshape(op, target);
    return out;
}

}  // namespace unravel
