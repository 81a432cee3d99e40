#include "unravel/proof.hpp"

#include <array>
#include <map>
#include <set>
#include <sstream>

namespace unravel {

namespace {

constexpr std::array<std::pair<RuleTag, const char*>, 15> kTagNames{{
    {RuleTag::Identity, "identity"},
    {RuleTag::Exchange, "exchange"},
    {RuleTag::Contraction, "contraction"},
    {RuleTag::Weakening, "weakening"},
    {RuleTag::ImpIntro, "imp-intro"},
    {RuleTag::ImpElim, "imp-elim"},
    {RuleTag::ForallIntro, "forall-intro"},
    {RuleTag::ForallElim, "forall-elim"},
    {RuleTag::GeqRefl, "geq-refl"},
    {RuleTag::GeqTrans, "geq-trans"},
    {RuleTag::GeqSubsum, "geq-subsum"},
    {RuleTag::GtExtend0, "gt-extend0"},
    {RuleTag::GtExtend1, "gt-extend1"},
    {RuleTag::GtInd, "gt-ind"},
    {RuleTag::CRule, "c-rule"},
}};

}  // namespace

std::string to_string(RuleTag tag) {
    for (const auto& [t, n] : kTagNames)
        if (t == tag) return n;
    return "?";
}

std::optional<RuleTag> parse_rule_tag(const std::string& s) {
    for (const auto& [t, n] : kTagNames)
        if (s == n) return t;
    return std::nullopt;
}

namespace {

class Checker {
public:
    explicit Checker(const CyclicSystem& sys) : sys_(sys) {}

    void run(const ProofNode& p, const std::string& path) {
        for (std::size_t i = 0; i < p.premises.size(); ++i) run(p.premises[i], path + "." + std::to_string(i));
        if (auto err = well_formed(p.conclusion)) {
            fail(path, p, "ill-formed conclusion: " + *err);
            return;
        }
        if (auto err = rule(p)) fail(path, p, *err);
    }

    std::vector<Diagnostic> diagnostics;

private:
    using Error = std::optional<std::string>;

    void fail(const std::string& path, const ProofNode& p, const std::string& what) {
        diagnostics.push_back({path, "[" + to_string(p.tag) + "] " + what});
    }

    // What a formula needs from a sort context: the sort of each free
    // variable. Everything else about well-formedness is context-free.
    struct Needs {
        Error error;
        std::map<std::string, SortId> vars;
    };

    // Cached per (subformula, binder sorts), since hypotheses are shared
    // across the whole proof and nest each other.
    const Needs& needs(const Formula& phi, std::vector<SortId>& binders) {
        auto key = std::make_pair(phi.identity(), binders);
        if (auto it = needs_.find(key); it != needs_.end()) return it->second;
        pinned_.push_back(phi);
        return needs_.emplace(std::move(key), compute_needs(phi, binders)).first->second;
    }

    Needs compute_needs(const Formula& phi, std::vector<SortId>& binders) {
        Needs out;
        auto merge = [&](const Needs& n) {
            if (n.error) {
                out.error = n.error;
                return;
            }
            for (const auto& [v, s] : n.vars) {
                auto [it, fresh] = out.vars.emplace(v, s);
                if (!fresh && it->second != s) out.error = "variable " + v + " used at sorts " + it->second + " and " + s;
            }
        };
        auto term = [&](const Term& t, const SortId& want, const std::string& where) {
            if (out.error) return;
            if (t.bound) {
                if (t.index >= binders.size()) out.error = "dangling bound index " + std::to_string(t.index);
                else if (const auto& s = binders[binders.size() - 1 - t.index]; s != want)
                    out.error = where + " has sort " + s;
                return;
            }
            merge(Needs{std::nullopt, {{t.name, want}}});
        };
        switch (phi.kind()) {
            case FormulaKind::Atom: {
                auto j = sys_.judgments.find(phi.head());
                if (j == sys_.judgments.end()) return {"unknown judgment " + phi.head(), {}};
                if (j->second.ob() != phi.args().size()) return {"judgment " + phi.head() + " applied to wrong arity", {}};
                for (std::size_t i = 0; i < phi.args().size(); ++i)
                    term(phi.args()[i], j->second.sorts[i], "argument " + std::to_string(i) + " of " + phi.head());
                return out;
            }
            case FormulaKind::Geq:
            case FormulaKind::Gt:
                if (!sys_.inductive_sorts.count(phi.head())) return {"order on non-inductive sort " + phi.head(), {}};
                for (const auto& t : phi.args()) term(t, phi.head(), "order at sort " + phi.head() + " relates a term that");
                return out;
            case FormulaKind::Imp:
                merge(needs(phi.lhs(), binders));
                if (!out.error) merge(needs(phi.rhs(), binders));
                return out;
            case FormulaKind::Forall: {
                binders.push_back(phi.head());
                merge(needs(phi.body(), binders));
                binders.pop_back();
                return out;
            }
        }
        return {"unknown formula kind", {}};
    }

    Error formula_ok(const Formula& phi, const SortContext& ctx) {
        std::vector<SortId> binders;
        const auto& n = needs(phi, binders);
        if (n.error) return n.error;
        for (const auto& [v, want] : n.vars) {
            const auto* s = sort_in(ctx, v);
            if (!s) return "variable " + v + " not in sort context";
            if (*s != want) return "variable " + v + " has sort " + *s + " where " + want + " is needed";
        }
        return std::nullopt;
    }

    Error well_formed(const Sequent& s) {
        std::set<std::string> seen;
        for (const auto& [n, _] : s.ctx)
            if (!seen.insert(n).second) return "variable " + n + " declared twice";
        for (std::size_t i = 0; i < s.hyps.size(); ++i)
            if (auto e = formula_ok(s.hyps[i], s.ctx)) return "hypothesis " + std::to_string(i) + ": " + *e;
        if (auto e = formula_ok(s.concl, s.ctx)) return "conclusion: " + *e;
        return std::nullopt;
    }

    static Error arity(const ProofNode& p, std::size_t n) {
        if (p.premises.size() != n)
            return "expects " + std::to_string(n) + " premises, has " + std::to_string(p.premises.size());
        return std::nullopt;
    }

    // Premise i shares context and hypotheses with the conclusion.
    static Error same_context(const ProofNode& p, std::size_t i) {
        const auto& q = p.premises[i].conclusion;
        if (q.ctx != p.conclusion.ctx) return "premise " + std::to_string(i) + " changes the sort context";
        if (q.hyps != p.conclusion.hyps) return "premise " + std::to_string(i) + " changes the hypotheses";
        return std::nullopt;
    }

    static bool is_free_var(const Term& t) { return !t.bound; }

    Error rule(const ProofNode& p) const {
        const auto& s = p.conclusion;
        switch (p.tag) {
            case RuleTag::Identity:
                if (auto e = arity(p, 0)) return e;
                if (s.hyps.size() != 1 || !(s.hyps[0] == s.concl)) return "context is not exactly the conclusion";
                return std::nullopt;

            case RuleTag::Exchange: {
                if (auto e = arity(p, 1)) return e;
                const auto& q = p.premises[0].conclusion;
                if (p.index + 1 >= s.hyps.size()) return "exchange index " + std::to_string(p.index) + " out of range";
                auto swapped = s.hyps;
                std::swap(swapped[p.index], swapped[p.index + 1]);
                if (q.ctx != s.ctx || !(q.concl == s.concl)) return "premise differs outside the hypotheses";
                if (q.hyps != swapped) return "premise hypotheses are not the swap at " + std::to_string(p.index);
                return std::nullopt;
            }

            case RuleTag::Contraction: {
                if (auto e = arity(p, 1)) return e;
                const auto& q = p.premises[0].conclusion;
                if (s.hyps.empty()) return "nothing to contract";
                auto want = s.hyps;
                want.push_back(s.hyps.back());
                if (q.ctx != s.ctx || !(q.concl == s.concl) || q.hyps != want) return "premise is not the duplicated context";
                return std::nullopt;
            }

            case RuleTag::Weakening: {
                if (auto e = arity(p, 1)) return e;
                const auto& q = p.premises[0].conclusion;
                if (s.hyps.empty()) return "nothing to weaken";
                std::vector<Formula> want(s.hyps.begin(), s.hyps.end() - 1);
                if (q.ctx != s.ctx || !(q.concl == s.concl) || q.hyps != want) return "premise is not the context without its last formula";
                return std::nullopt;
            }

            case RuleTag::ImpIntro: {
                if (auto e = arity(p, 1)) return e;
                const auto& q = p.premises[0].conclusion;
                if (s.concl.kind() != FormulaKind::Imp) return "conclusion is not an implication";
                auto want = s.hyps;
                want.push_back(s.concl.lhs());
                if (q.ctx != s.ctx) return "premise changes the sort context";
                if (q.hyps != want) return "premise hypotheses do not end with the antecedent";
                if (!(q.concl == s.concl.rhs())) return "premise does not prove the consequent";
                return std::nullopt;
            }

            case RuleTag::ImpElim: {
                if (auto e = arity(p, 2)) return e;
                for (std::size_t i = 0; i < 2; ++i)
                    if (auto e = same_context(p, i)) return e;
                const auto& major = p.premises[0].conclusion.concl;
                const auto& minor = p.premises[1].conclusion.concl;
                if (major.kind() != FormulaKind::Imp) return "major premise is not an implication";
                if (!(major.lhs() == minor)) return "minor premise does not match the antecedent";
                if (!(major.rhs() == s.concl)) return "consequent does not match the conclusion";
                return std::nullopt;
            }

            case RuleTag::ForallIntro: {
                if (auto e = arity(p, 1)) return e;
                const auto& q = p.premises[0].conclusion;
                if (s.concl.kind() != FormulaKind::Forall) return "conclusion is not universal";
                if (p.var.empty() || sort_in(s.ctx, p.var)) return "eigenvariable " + p.var + " is not fresh";
                auto ctx = s.ctx;
                ctx.emplace_back(p.var, s.concl.head());
                if (q.ctx != ctx) return "premise context is not the conclusion's extended by " + p.var;
                if (q.hyps != s.hyps) return "premise changes the hypotheses";
                if (!(q.concl == open(s.concl.body(), p.var))) return "premise is not the opened body";
                return std::nullopt;
            }

            case RuleTag::ForallElim: {
                if (auto e = arity(p, 1)) return e;
                if (auto e = same_context(p, 0)) return e;
                const auto& q = p.premises[0].conclusion.concl;
                if (q.kind() != FormulaKind::Forall) return "premise is not universal";
                const auto* sort = sort_in(s.ctx, p.var);
                if (!sort) return "instance " + p.var + " not in sort context";
                if (*sort != q.head()) return "instance " + p.var + " has sort " + *sort + ", binder has " + q.head();
                if (!(open(q.body(), p.var) == s.concl)) return "conclusion is not the instance at " + p.var;
                return std::nullopt;
            }

            case RuleTag::GeqRefl: {
                if (auto e = arity(p, 0)) return e;
                const auto& c = s.concl;
                if (c.kind() != FormulaKind::Geq || !(c.args()[0] == c.args()[1]) || !is_free_var(c.args()[0]))
                    return "conclusion is not x ≥ x";
                return std::nullopt;
            }

            case RuleTag::GeqTrans:
            case RuleTag::GtExtend0:
            case RuleTag::GtExtend1: {
                if (auto e = arity(p, 2)) return e;
                for (std::size_t i = 0; i < 2; ++i)
                    if (auto e = same_context(p, i)) return e;
                auto k0 = p.tag == RuleTag::GtExtend1 ? FormulaKind::Gt : FormulaKind::Geq;
                auto k1 = p.tag == RuleTag::GtExtend0 ? FormulaKind::Gt : FormulaKind::Geq;
                auto kc = p.tag == RuleTag::GeqTrans ? FormulaKind::Geq : FormulaKind::Gt;
                const auto& a = p.premises[0].conclusion.concl;
                const auto& b = p.premises[1].conclusion.concl;
                const auto& c = s.concl;
                if (a.kind() != k0 || b.kind() != k1 || c.kind() != kc) return "premise or conclusion has the wrong relation";
                if (a.head() != b.head() || a.head() != c.head()) return "sorts disagree";
                if (!(a.args()[1] == b.args()[0])) return "middle variables differ";
                if (!(a.args()[0] == c.args()[0]) || !(b.args()[1] == c.args()[1])) return "endpoints do not match the conclusion";
                return std::nullopt;
            }

            case RuleTag::GeqSubsum: {
                if (auto e = arity(p, 1)) return e;
                if (auto e = same_context(p, 0)) return e;
                const auto& a = p.premises[0].conclusion.concl;
                const auto& c = s.concl;
                if (a.kind() != FormulaKind::Gt || c.kind() != FormulaKind::Geq) return "premise or conclusion has the wrong relation";
                if (a.head() != c.head() || a.args() != c.args()) return "premise relates different variables";
                return std::nullopt;
            }

            case RuleTag::GtInd: {
                if (auto e = arity(p, 1)) return e;
                const auto& q = p.premises[0].conclusion;
                const auto& c = s.concl;
                if (c.kind() != FormulaKind::Forall) return "conclusion is not universal";
                if (!sys_.inductive_sorts.count(c.head())) return "induction on non-inductive sort " + c.head();
                if (p.var.empty() || sort_in(s.ctx, p.var)) return "induction variable " + p.var + " is not fresh";
                auto ctx = s.ctx;
                ctx.emplace_back(p.var, c.head());
                if (q.ctx != ctx) return "premise context is not the conclusion's extended by " + p.var;
                auto hyps = s.hyps;
                hyps.push_back(Formula::forall(c.head(), Formula::imp(Formula::gt(c.head(), Term::free(p.var), Term::at(0)), c.body())));
                if (q.hyps != hyps) return "premise hypotheses do not end with the induction hypothesis";
                if (!(q.concl == open(c.body(), p.var))) return "premise is not the opened body";
                return std::nullopt;
            }

            case RuleTag::CRule: return c_rule(p);
        }
        return "unknown rule tag";
    }

    Error c_rule(const ProofNode& p) const {
        const auto& s = p.conclusion;
        auto it = sys_.rules.find(p.rule_id);
        if (it == sys_.rules.end()) return "unknown rule " + p.rule_id;
        const auto& r = it->second;
        if (s.concl.kind() != FormulaKind::Atom || s.concl.head() != r.conclusion)
            return "conclusion is not an atom of " + r.conclusion;
        for (const auto& t : s.concl.args())
            if (t.bound) return "conclusion atom has a bound argument";
        if (auto e = arity(p, r.premises.size())) return e;
        std::size_t total = 0;
        for (const auto& j : r.premises) total += sys_.judgment(j).ob();
        if (p.fresh.size() != total) return "expects " + std::to_string(total) + " fresh variables, has " + std::to_string(p.fresh.size());

        std::size_t offset = 0;
        for (std::size_t i = 0; i < r.premises.size(); ++i) {
            const auto& judg = sys_.judgment(r.premises[i]);
            const auto& q = p.premises[i].conclusion;
            auto ctx = s.ctx;
            std::vector<Term> ys;
            std::set<std::string> local;
            for (std::size_t j = 0; j < judg.ob(); ++j) {
                const auto& y = p.fresh[offset + j];
                if (y.empty() || sort_in(s.ctx, y) || !local.insert(y).second)
                    return "premise " + std::to_string(i) + " variable " + y + " is not fresh";
                ctx.emplace_back(y, judg.sorts[j]);
                ys.push_back(Term::free(y));
            }
            auto hyps = s.hyps;
            for (const auto& e : r.graphs[i].edges()) {
                const auto& sort = judg.sorts[e.dst];
                auto x = s.concl.args()[e.src];
                hyps.push_back(e.label == EdgeLabel::Progressing ? Formula::gt(sort, x, ys[e.dst]) : Formula::geq(sort, x, ys[e.dst]));
            }
            if (q.ctx != ctx) return "premise " + std::to_string(i) + " sort context is not the extension by its fresh variables";
            if (q.hyps != hyps) return "premise " + std::to_string(i) + " hypotheses do not carry the size-change block";
            if (!(q.concl == Formula::atom(r.premises[i], ys))) return "premise " + std::to_string(i) + " does not conclude " + r.premises[i];
            offset += judg.ob();
        }
        return std::nullopt;
    }

    const CyclicSystem& sys_;
    std::map<std::pair<const void*, std::vector<SortId>>, Needs> needs_;
    std::vector<Formula> pinned_;  // keeps cached identities alive
};

void collect_notes(const ProofNode& p, const std::string& prefix, std::vector<std::string>& out) {
    if (p.note.rfind(prefix, 0) == 0 && !prefix.empty()) out.push_back(p.note);
    for (const auto& q : p.premises) collect_notes(q, prefix, out);
}

void listing(const ProofNode& p, std::size_t depth, std::ostringstream& os) {
    os << std::string(2 * depth, ' ') << to_string(p.tag);
    if (p.tag == RuleTag::CRule) os << "(" << p.rule_id << ")";
    if (!p.var.empty()) os << "[" << p.var << "]";
    if (p.tag == RuleTag::Exchange) os << "[" << p.index << "]";
    if (!p.note.empty()) os << " {" << p.note << "}";
    os << "  " << to_string(p.conclusion) << "\n";
    for (const auto& q : p.premises) listing(q, depth + 1, os);
}

}  // namespace

CheckResult check(const ProofNode& proof, const CyclicSystem& sys) {
    Checker c(sys);
    c.run(proof, "root");
    return CheckResult{std::move(c.diagnostics)};
}

std::size_t count_nodes(const ProofNode& proof) {
    std::size_t n = 1;
    for (const auto& q : proof.premises) n += count_nodes(q);
    return n;
}

std::vector<std::string> notes_with_prefix(const ProofNode& proof, const std::string& prefix) {
    std::vector<std::string> out;
    collect_notes(proof, prefix, out);
    return out;
}

std::string format_proof(const ProofNode& proof) {
    std::ostringstream os;
    listing(proof, 0, os);
    return os.str();
}

}  // namespace unravel
