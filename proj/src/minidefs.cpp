#include "unravel/minidefs.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <set>

namespace unravel {

namespace {

enum class Tok { Ident, Number, Op, LParen, RParen, Comma, Define, Sep, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t col;
};

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') ++line, col = 1;
            else ++col;
        }
    };
    auto is_op = [](char c) { return std::string_view("+-*/^<>=!&|%").find(c) != std::string_view::npos; };
    while (i < src.size()) {
        char c = src[i];
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
        } else if (c == '\n' || c == ';') {
            out.push_back({Tok::Sep, std::string(1, c), line, col});
            advance(1);
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            auto start = i;
            auto l = line, k = col;
            while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_' || src[i] == '\'')) advance(1);
            out.push_back({Tok::Ident, src.substr(start, i - start), l, k});
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            auto start = i;
            auto l = line, k = col;
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) advance(1);
            out.push_back({Tok::Number, src.substr(start, i - start), l, k});
        } else if (c == ':' && i + 1 < src.size() && src[i + 1] == '=') {
            out.push_back({Tok::Define, ":=", line, col});
            advance(2);
        } else if (c == '(') {
            out.push_back({Tok::LParen, "(", line, col});
            advance(1);
        } else if (c == ')') {
            out.push_back({Tok::RParen, ")", line, col});
            advance(1);
        } else if (c == ',') {
            out.push_back({Tok::Comma, ",", line, col});
            advance(1);
        } else if (is_op(c)) {
            auto start = i;
            auto l = line, k = col;
            while (i < src.size() && is_op(src[i])) advance(1);
            out.push_back({Tok::Op, src.substr(start, i - start), l, k});
        } else {
            throw ParseError(line, col, std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

struct Expr {
    enum Kind { Var, Ctor, Num, App } kind;
    std::string name;
    std::vector<Expr> args;
    std::size_t line = 0;
    std::size_t col = 0;
    bool parens = false;  // written with an argument list

    friend bool operator==(const Expr& a, const Expr& b) {
        return a.kind == b.kind && a.name == b.name && a.args == b.args;
    }
};

struct CtorInfo {
    SortId sort;
    std::vector<SortId> args;
};

const std::map<std::string, CtorInfo>& constructors() {
    static const std::map<std::string, CtorInfo> table{
        {"zero", {"Nat", {}}},
        {"suc", {"Nat", {"Nat"}}},
        {"leaf", {"Tree", {}}},
        {"node", {"Tree", {"Tree", "Tree"}}},
    };
    return table;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    struct RawClause {
        Expr head;
        Expr body;
    };

    std::vector<RawClause> clauses() {
        std::vector<RawClause> out;
        for (;;) {
            while (peek().kind == Tok::Sep) ++pos_;
            if (peek().kind == Tok::End) break;
            auto head = expr();
            expect(Tok::Define, "':='");
            auto body = expr();
            if (peek().kind != Tok::Sep && peek().kind != Tok::End) fail(peek(), "expected end of clause");
            out.push_back({std::move(head), std::move(body)});
        }
        return out;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    [[noreturn]] static void fail(const Token& t, const std::string& what) {
        throw ParseError(t.line, t.col, what + (t.text.empty() ? "" : " near '" + t.text + "'"));
    }
    void expect(Tok k, const std::string& what) {
        if (peek().kind != k) fail(peek(), "expected " + what);
        ++pos_;
    }

    Expr expr() {
        auto lhs = primary();
        while (peek().kind == Tok::Op) {
            auto op = peek();
            ++pos_;
            auto rhs = primary();
            Expr e{Expr::App, op.text, {std::move(lhs), std::move(rhs)}, op.line, op.col, true};
            lhs = std::move(e);
        }
        return lhs;
    }

    Expr primary() {
        const auto t = peek();
        switch (t.kind) {
            case Tok::Number: ++pos_; return Expr{Expr::Num, t.text, {}, t.line, t.col, false};
            case Tok::LParen: {
                ++pos_;
                auto e = expr();
                expect(Tok::RParen, "')'");
                return e;
            }
            case Tok::Ident: {
                ++pos_;
                Expr e{Expr::Var, t.text, {}, t.line, t.col, false};
                if (peek().kind == Tok::LParen) {
                    ++pos_;
                    e.kind = Expr::App;
                    e.parens = true;
                    if (peek().kind != Tok::RParen) {
                        e.args.push_back(expr());
                        while (peek().kind == Tok::Comma) {
                            ++pos_;
                            e.args.push_back(expr());
                        }
                    }
                    expect(Tok::RParen, "')'");
                }
                return e;
            }
            default: fail(t, "expected a term");
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

struct Clause {
    std::string function;
    std::vector<Expr> patterns;
    Expr body;
    std::size_t line;
};

Expr to_pattern(const Expr& e, std::set<std::string>& vars) {
    const auto& ctors = constructors();
    switch (e.kind) {
        case Expr::Num: {
            Expr p{Expr::Ctor, "zero", {}, e.line, e.col, false};
            for (unsigned long n = std::stoul(e.name); n > 0; --n) p = Expr{Expr::Ctor, "suc", {std::move(p)}, e.line, e.col, true};
            return p;
        }
        case Expr::Var: {
            if (auto it = ctors.find(e.name); it != ctors.end() && it->second.args.empty())
                return Expr{Expr::Ctor, e.name, {}, e.line, e.col, false};
            if (!vars.insert(e.name).second) throw ParseError(e.line, e.col, "nonlinear pattern: variable " + e.name + " repeats");
            return e;
        }
        case Expr::App: {
            auto it = ctors.find(e.name);
            if (it == ctors.end()) throw ParseError(e.line, e.col, "unknown constructor " + e.name);
            if (it->second.args.size() != e.args.size())
                throw ParseError(e.line, e.col, "constructor " + e.name + " expects " + std::to_string(it->second.args.size()) + " arguments");
            Expr p{Expr::Ctor, e.name, {}, e.line, e.col, true};
            for (const auto& a : e.args) p.args.push_back(to_pattern(a, vars));
            return p;
        }
        default: throw ParseError(e.line, e.col, "bad pattern");
    }
}

// Body terms: constructor applications become Ctor nodes.
Expr normalize_body(const Expr& e) {
    Expr out = e;
    out.args.clear();
    for (const auto& a : e.args) out.args.push_back(normalize_body(a));
    const auto& ctors = constructors();
    if (auto it = ctors.find(e.name); it != ctors.end() && (e.kind == Expr::App || (e.kind == Expr::Var && it->second.args.empty())))
        out.kind = Expr::Ctor;
    return out;
}

bool proper_subterm(const Expr& t, const Expr& p) {
    for (const auto& a : p.args)
        if (a == t || proper_subterm(t, a)) return true;
    return false;
}

// 2 when t is strictly below pattern p, 1 when it is p itself, else 0.
// min(...) is bounded by each of its arguments.
int relation(const Expr& t, const Expr& p) {
    if (t.kind == Expr::App && t.name == "min") {
        int best = 0;
        for (const auto& a : t.args) best = std::max(best, relation(a, p));
        return best;
    }
    if (t == p) return 1;
    return proper_subterm(t, p) ? 2 : 0;
}

struct CallSite {
    std::string callee;
    const Expr* expr;
};

void collect_calls(const Expr& e, const std::set<std::string>& defined, std::vector<CallSite>& out) {
    for (const auto& a : e.args) collect_calls(a, defined, out);
    if (e.kind == Expr::App && defined.count(e.name)) out.push_back({e.name, &e});
}

}  // namespace

CallSystem parse_minidefs(const std::string& text) {
    Parser parser(lex(text));
    std::vector<Clause> clauses;
    for (auto& raw : parser.clauses()) {
        const auto& h = raw.head;
        if (h.kind != Expr::App) throw ParseError(h.line, h.col, "clause head must apply a function");
        if (constructors().count(h.name)) throw ParseError(h.line, h.col, "cannot define constructor " + h.name);
        Clause c{h.name, {}, normalize_body(raw.body), h.line};
        std::set<std::string> vars;
        for (const auto& a : h.args) c.patterns.push_back(to_pattern(a, vars));
        clauses.push_back(std::move(c));
    }

    std::vector<std::string> order;
    std::map<std::string, std::size_t> arity;
    for (const auto& c : clauses) {
        auto [it, fresh] = arity.try_emplace(c.function, c.patterns.size());
        if (fresh) order.push_back(c.function);
        else if (it->second != c.patterns.size())
            throw ParseError(c.line, 1, "function " + c.function + " used with arities " + std::to_string(it->second) + " and " +
                                            std::to_string(c.patterns.size()));
    }
    std::set<std::string> defined(order.begin(), order.end());

    std::vector<std::vector<CallSite>> calls(clauses.size());
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        collect_calls(clauses[i].body, defined, calls[i]);
        for (const auto& site : calls[i])
            if (site.expr->args.size() != arity.at(site.callee))
                throw ParseError(site.expr->line, site.expr->col, "call to " + site.callee + " with wrong number of arguments");
    }

    // Sort inference: constructor patterns fix parameter sorts, calls
    // propagate them; anything left over is Nat.
    std::map<std::string, std::vector<std::optional<SortId>>> param;
    for (const auto& f : order) param[f].resize(arity.at(f));
    bool changed = true;
    // Only parameter slots persist across rounds, so only they count as progress.
    auto is_param = [&](const std::optional<SortId>* slot) {
        for (auto& [f, v] : param)
            if (!v.empty() && slot >= &v.front() && slot <= &v.back()) return true;
        return false;
    };
    auto unify = [&](std::optional<SortId>& slot, const std::optional<SortId>& s, std::size_t line) {
        if (!s) return;
        if (!slot) {
            slot = s;
            if (is_param(&slot)) changed = true;
        } else if (*slot != *s) {
            throw ParseError(line, 1, "sort clash between " + *slot + " and " + *s);
        }
    };
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < clauses.size(); ++i) {
            const auto& c = clauses[i];
            std::map<std::string, std::optional<SortId>> var_sort;
            std::function<void(const Expr&, const std::optional<SortId>&)> bind = [&](const Expr& p, const std::optional<SortId>& s) {
                if (p.kind == Expr::Var) {
                    unify(var_sort[p.name], s, c.line);
                    return;
                }
                const auto& info = constructors().at(p.name);
                for (std::size_t k = 0; k < p.args.size(); ++k) bind(p.args[k], info.args[k]);
            };
            for (std::size_t k = 0; k < c.patterns.size(); ++k) {
                const auto& p = c.patterns[k];
                if (p.kind == Expr::Ctor) unify(param[c.function][k], constructors().at(p.name).sort, c.line);
                bind(p, param[c.function][k]);
                if (p.kind == Expr::Var) unify(param[c.function][k], var_sort[p.name], c.line);
            }
            std::function<std::optional<SortId>(const Expr&)> sort_of = [&](const Expr& t) -> std::optional<SortId> {
                if (t.kind == Expr::Var) {
                    auto it = var_sort.find(t.name);
                    return it == var_sort.end() ? std::nullopt : it->second;
                }
                if (t.kind == Expr::Ctor) return constructors().at(t.name).sort;
                if (t.kind == Expr::App && t.name == "min") {
                    for (const auto& a : t.args)
                        if (auto s = sort_of(a)) return s;
                }
                return std::nullopt;
            };
            for (const auto& site : calls[i])
                for (std::size_t k = 0; k < site.expr->args.size(); ++k) {
                    const auto& a = site.expr->args[k];
                    unify(param[site.callee][k], sort_of(a), site.expr->line);
                    if (a.kind == Expr::Var && var_sort.count(a.name)) unify(var_sort[a.name], param[site.callee][k], c.line);
                    if (a.kind == Expr::App && a.name == "min")
                        for (const auto& m : a.args)
                            if (m.kind == Expr::Var && var_sort.count(m.name)) unify(var_sort[m.name], param[site.callee][k], c.line);
                }
            for (std::size_t k = 0; k < c.patterns.size(); ++k)
                if (c.patterns[k].kind == Expr::Var) unify(param[c.function][k], var_sort[c.patterns[k].name], c.line);
        }
    }

    CallSystem cs;
    cs.inductive_sorts.clear();
    for (const auto& f : order) {
        Function fn{f, {}};
        for (auto& s : param[f]) {
            fn.sorts.push_back(s.value_or("Nat"));
            cs.inductive_sorts.insert(fn.sorts.back());
        }
        cs.functions.push_back(std::move(fn));
    }
    if (cs.inductive_sorts.empty()) cs.inductive_sorts.insert("Nat");

    std::map<std::string, std::size_t> per_function;
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        const auto& c = clauses[i];
        for (const auto& site : calls[i]) {
            SizeChangeGraph g(c.patterns.size(), site.expr->args.size());
            for (std::size_t src = 0; src < c.patterns.size(); ++src)
                for (std::size_t dst = 0; dst < site.expr->args.size(); ++dst) {
                    auto r = relation(site.expr->args[dst], c.patterns[src]);
                    if (r) g.add(src, dst, r == 2 ? EdgeLabel::Progressing : EdgeLabel::Preserving);
                }
            auto k = per_function[c.function]++;
            cs.calls.push_back({c.function + "." + std::to_string(k), c.function, site.callee, std::move(g)});
        }
    }
    return cs;
}

}  // namespace unravel
