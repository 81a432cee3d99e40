#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "unravel/system.hpp"

namespace unravel {

// Free variables by name, bound ones by de Bruijn index.
struct Term {
    bool bound = false;
    std::string name;
    std::size_t index = 0;

    static Term free(std::string n) { return Term{false, std::move(n), 0}; }
    static Term at(std::size_t i) { return Term{true, {}, i}; }
    friend bool operator==(const Term&, const Term&) = default;
};

enum class FormulaKind { Atom, Geq, Gt, Imp, Forall };

class Formula {
public:
    // An atom with an empty judgment id; only meaningful as a placeholder.
    Formula();
    static Formula atom(std::string judgment, std::vector<Term> args);
    static Formula geq(SortId sort, Term lhs, Term rhs);
    static Formula gt(SortId sort, Term lhs, Term rhs);
    static Formula imp(Formula antecedent, Formula consequent);
    static Formula forall(SortId sort, Formula body);

    FormulaKind kind() const { return node_->kind; }
    // judgment id for atoms, sort otherwise
    const std::string& head() const { return node_->head; }
    const std::vector<Term>& args() const { return node_->args; }
    const Formula& lhs() const { return *node_->left; }
    const Formula& rhs() const { return *node_->right; }
    const Formula& body() const { return *node_->left; }

    bool is_order() const { return kind() == FormulaKind::Geq || kind() == FormulaKind::Gt; }
    // Shared subformulas have the same identity.
    const void* identity() const { return node_.get(); }

    friend bool operator==(const Formula& a, const Formula& b);

private:
    struct Node {
        FormulaKind kind;
        std::string head;
        std::vector<Term> args;
        std::shared_ptr<const Formula> left;
        std::shared_ptr<const Formula> right;
    };
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// Renames free variables. When sort_of is given, a renaming between
// variables of different sorts throws std::invalid_argument.
Formula subst(const Formula& phi, const std::map<std::string, std::string>& renaming,
              const std::function<SortId(const std::string&)>& sort_of = {});

// Body of a binder with the bound variable replaced by a free one.
Formula open(const Formula& body, const std::string& name);
// Inverse of open: turns free occurrences of name into the outermost bound
// variable of a binder to be wrapped around the result.
Formula close(const Formula& phi, const std::string& name);

// In order of first occurrence.
std::vector<std::string> free_vars(const Formula& phi);
bool occurs_free(const Formula& phi, const std::string& name);

Formula map_sorts(const Formula& phi, const std::function<SortId(const SortId&)>& f);

std::string to_string(const Formula& phi);

using SortContext = std::vector<std::pair<std::string, SortId>>;

struct Sequent {
    SortContext ctx;
    std::vector<Formula> hyps;
    Formula concl;
    friend bool operator==(const Sequent&, const Sequent&) = default;
};

const SortId* sort_in(const SortContext& ctx, const std::string& name);
std::string to_string(const Sequent& s);

}  // namespace unravel
