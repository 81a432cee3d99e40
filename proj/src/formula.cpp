#include "unravel/formula.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace unravel {

Formula::Formula() : Formula(std::make_shared<const Node>(Node{FormulaKind::Atom, {}, {}, nullptr, nullptr})) {}

Formula Formula::atom(std::string judgment, std::vector<Term> args) {
    return Formula(std::make_shared<const Node>(Node{FormulaKind::Atom, std::move(judgment), std::move(args), nullptr, nullptr}));
}

Formula Formula::geq(SortId sort, Term lhs, Term rhs) {
    return Formula(std::make_shared<const Node>(Node{FormulaKind::Geq, std::move(sort), {std::move(lhs), std::move(rhs)}, nullptr, nullptr}));
}

Formula Formula::gt(SortId sort, Term lhs, Term rhs) {
    return Formula(std::make_shared<const Node>(Node{FormulaKind::Gt, std::move(sort), {std::move(lhs), std::move(rhs)}, nullptr, nullptr}));
}

Formula Formula::imp(Formula antecedent, Formula consequent) {
    return Formula(std::make_shared<const Node>(Node{FormulaKind::Imp, {}, {},
                                                     std::make_shared<const Formula>(std::move(antecedent)),
                                                     std::make_shared<const Formula>(std::move(consequent))}));
}

Formula Formula::forall(SortId sort, Formula body) {
    return Formula(std::make_shared<const Node>(Node{FormulaKind::Forall, std::move(sort), {},
                                                     std::make_shared<const Formula>(std::move(body)), nullptr}));
}

namespace {

// Pairs already found equal; shared subformulas are compared once.
bool equal(const Formula& a, const Formula& b, std::set<std::pair<const void*, const void*>>& same) {
    if (a.identity() == b.identity() || same.count({a.identity(), b.identity()})) return true;
    if (a.kind() != b.kind() || a.head() != b.head() || a.args() != b.args()) return false;
    bool eq = true;
    switch (a.kind()) {
        case FormulaKind::Imp: eq = equal(a.lhs(), b.lhs(), same) && equal(a.rhs(), b.rhs(), same); break;
        case FormulaKind::Forall: eq = equal(a.body(), b.body(), same); break;
        default: break;
    }
    if (eq) same.insert({a.identity(), b.identity()});
    return eq;
}

}  // namespace

bool operator==(const Formula& a, const Formula& b) {
    std::set<std::pair<const void*, const void*>> same;
    return equal(a, b, same);
}

namespace {

// Rebuilds phi, mapping each term with the binder depth it sits under.
// Induction hypotheses nest older ones, so formulas are DAGs that are
// exponentially larger as trees; both walks go once per (subformula, depth)
// and unchanged parts keep their identity.
template <typename F>
class TermMap {
public:
    explicit TermMap(F& f) : f_(f) {}

    Formula operator()(const Formula& phi, std::size_t depth) {
        auto key = std::make_pair(phi.identity(), depth);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        auto out = rebuild(phi, depth);
        memo_.emplace(key, out);
        return out;
    }

private:
    Formula rebuild(const Formula& phi, std::size_t depth) {
        switch (phi.kind()) {
            case FormulaKind::Imp: {
                auto l = (*this)(phi.lhs(), depth), r = (*this)(phi.rhs(), depth);
                if (l.identity() == phi.lhs().identity() && r.identity() == phi.rhs().identity()) return phi;
                return Formula::imp(std::move(l), std::move(r));
            }
            case FormulaKind::Forall: {
                auto b = (*this)(phi.body(), depth + 1);
                if (b.identity() == phi.body().identity()) return phi;
                return Formula::forall(phi.head(), std::move(b));
            }
            default: break;
        }
        std::vector<Term> ts;
        ts.reserve(phi.args().size());
        for (const auto& t : phi.args()) ts.push_back(f_(t, depth));
        if (ts == phi.args()) return phi;
        switch (phi.kind()) {
            case FormulaKind::Atom: return Formula::atom(phi.head(), std::move(ts));
            case FormulaKind::Geq: return Formula::geq(phi.head(), ts[0], ts[1]);
            default: return Formula::gt(phi.head(), ts[0], ts[1]);
        }
    }

    F& f_;
    std::map<std::pair<const void*, std::size_t>, Formula> memo_;
};

template <typename F>
Formula map_terms(const Formula& phi, F&& f) {
    return TermMap<std::remove_reference_t<F>>(f)(phi, 0);
}

template <typename F>
void visit_terms(const Formula& phi, F&& f) {
    std::set<std::pair<const void*, std::size_t>> seen;
    std::function<void(const Formula&, std::size_t)> go = [&](const Formula& p, std::size_t depth) {
        if (!seen.insert({p.identity(), depth}).second) return;
        switch (p.kind()) {
            case FormulaKind::Imp:
                go(p.lhs(), depth);
                go(p.rhs(), depth);
                return;
            case FormulaKind::Forall: go(p.body(), depth + 1); return;
            default:
                for (const auto& t : p.args()) f(t, depth);
        }
    };
    go(phi, 0);
}

}  // namespace

Formula subst(const Formula& phi, const std::map<std::string, std::string>& renaming,
              const std::function<SortId(const std::string&)>& sort_of) {
    if (sort_of)
        for (const auto& [from, to] : renaming)
            if (sort_of(from) != sort_of(to))
                throw std::invalid_argument("subst: " + from + " and " + to + " have different sorts");
    return map_terms(phi, [&](const Term& t, std::size_t) {
        if (t.bound) return t;
        auto it = renaming.find(t.name);
        return it == renaming.end() ? t : Term::free(it->second);
    });
}

Formula open(const Formula& body, const std::string& name) {
    return map_terms(body, [&](const Term& t, std::size_t depth) {
        return t.bound && t.index == depth ? Term::free(name) : t;
    });
}

Formula close(const Formula& phi, const std::string& name) {
    return map_terms(phi, [&](const Term& t, std::size_t depth) {
        return !t.bound && t.name == name ? Term::at(depth) : t;
    });
}

std::vector<std::string> free_vars(const Formula& phi) {
    std::vector<std::string> out;
    visit_terms(phi, [&](const Term& t, std::size_t) {
        if (!t.bound && std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
    });
    return out;
}

bool occurs_free(const Formula& phi, const std::string& name) {
    bool found = false;
    visit_terms(phi, [&](const Term& t, std::size_t) { found = found || (!t.bound && t.name == name); });
    return found;
}

Formula map_sorts(const Formula& phi, const std::function<SortId(const SortId&)>& f) {
    switch (phi.kind()) {
        case FormulaKind::Atom: return phi;
        case FormulaKind::Geq: return Formula::geq(f(phi.head()), phi.args()[0], phi.args()[1]);
        case FormulaKind::Gt: return Formula::gt(f(phi.head()), phi.args()[0], phi.args()[1]);
        case FormulaKind::Imp: return Formula::imp(map_sorts(phi.lhs(), f), map_sorts(phi.rhs(), f));
        case FormulaKind::Forall: return Formula::forall(f(phi.head()), map_sorts(phi.body(), f));
    }
    throw std::logic_error("unreachable formula kind");
}

namespace {

std::string show_term(const Term& t, std::size_t depth) {
    if (!t.bound) return t.name;
    if (t.index >= depth) return "#" + std::to_string(t.index);
    return "v" + std::to_string(depth - 1 - t.index);
}

std::string sort_suffix(const SortId& s) { return s == kDefaultSort ? "" : "_" + s; }

std::string show(const Formula& phi, std::size_t depth) {
    switch (phi.kind()) {
        case FormulaKind::Atom: {
            std::string s = phi.head() + "(";
            for (std::size_t i = 0; i < phi.args().size(); ++i)
                s += (i ? ", " : "") + show_term(phi.args()[i], depth);
            return s + ")";
        }
        case FormulaKind::Geq:
        case FormulaKind::Gt:
            return show_term(phi.args()[0], depth) + (phi.kind() == FormulaKind::Gt ? " >" : " ≥") +
                   sort_suffix(phi.head()) + " " + show_term(phi.args()[1], depth);
        case FormulaKind::Imp: {
            auto l = show(phi.lhs(), depth);
            if (phi.lhs().kind() == FormulaKind::Imp || phi.lhs().kind() == FormulaKind::Forall) l = "(" + l + ")";
            return l + " → " + show(phi.rhs(), depth);
        }
        case FormulaKind::Forall: {
            std::string s = "∀v" + std::to_string(depth);
            if (phi.head() != kDefaultSort) s += ":" + phi.head();
            return s + ". " + show(phi.body(), depth + 1);
        }
    }
    throw std::logic_error("unreachable formula kind");
}

}  // namespace

std::string to_string(const Formula& phi) { return show(phi, 0); }

const SortId* sort_in(const SortContext& ctx, const std::string& name) {
    for (const auto& [n, s] : ctx)
        if (n == name) return &s;
    return nullptr;
}

std::string to_string(const Sequent& s) {
    std::string out;
    for (std::size_t i = 0; i < s.ctx.size(); ++i) out += (i ? ", " : "") + s.ctx[i].first + ":" + s.ctx[i].second;
    out += " ; ";
    for (std::size_t i = 0; i < s.hyps.size(); ++i) out += (i ? ", " : "") + to_string(s.hyps[i]);
    return out + " ⊢ " + to_string(s.concl);
}

}  // namespace unravel
