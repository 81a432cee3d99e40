#include "unravel/formats.hpp"

#include <json.hpp>

namespace unravel {

using nlohmann::json;

namespace {

constexpr const char* kPrefix = "unravel/";
constexpr const char* kVersion = "/1";

json load(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("malformed JSON: ") + e.what());
    }
}

json load_kind(const std::string& text, const std::string& kind) {
    auto j = load(text);
    auto want = kPrefix + kind + kVersion;
    if (!j.is_object() || !j.contains("format") || j["format"] != want)
        throw FormatError("expected a document with format " + want);
    return j;
}

// Wraps nlohmann's type errors so callers only see FormatError.
template <class F>
auto guarded(const char* what, F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw FormatError(std::string(what) + ": " + e.what());
    }
}

json edges_json(const SizeChangeGraph& g) {
    json out = json::array();
    for (const auto& e : g.edges()) out.push_back({e.src, e.dst, e.label == EdgeLabel::Progressing ? ">" : ">="});
    return out;
}

SizeChangeGraph graph_from(const json& edges, std::size_t src_arity, std::size_t dst_arity) {
    SizeChangeGraph g(src_arity, dst_arity);
    for (const auto& e : edges) {
        auto s = e.at(0).get<std::size_t>();
        auto d = e.at(1).get<std::size_t>();
        auto l = e.at(2).get<std::string>();
        if (s >= src_arity || d >= dst_arity) throw FormatError("edge " + std::to_string(s) + "->" + std::to_string(d) + " out of range");
        if (l != ">" && l != ">=") throw FormatError("edge label must be > or >=, got " + l);
        g.add(s, d, l == ">" ? EdgeLabel::Progressing : EdgeLabel::Preserving);
    }
    return g;
}

std::set<SortId> sorts_from(const json& j) {
    if (!j.contains("inductive_sorts")) return {kDefaultSort};
    return j["inductive_sorts"].get<std::set<SortId>>();
}

json term_json(const Term& t) { return t.bound ? json(t.index) : json(t.name); }

Term term_from(const json& j) {
    if (j.is_string()) return Term::free(j.get<std::string>());
    if (j.is_number_unsigned()) return Term::at(j.get<std::size_t>());
    throw FormatError("term must be a name or a bound index");
}

json formula_json(const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::Atom: {
            json args = json::array();
            for (const auto& t : f.args()) args.push_back(term_json(t));
            return {"atom", f.head(), args};
        }
        case FormulaKind::Geq: return {"geq", f.head(), term_json(f.args()[0]), term_json(f.args()[1])};
        case FormulaKind::Gt: return {"gt", f.head(), term_json(f.args()[0]), term_json(f.args()[1])};
        case FormulaKind::Imp: return {"imp", formula_json(f.lhs()), formula_json(f.rhs())};
        case FormulaKind::Forall: return {"forall", f.head(), formula_json(f.body())};
    }
    throw FormatError("unknown formula kind");
}

Formula formula_from(const json& j) {
    if (!j.is_array() || j.empty()) throw FormatError("formula must be a non-empty array");
    auto k = j.at(0).get<std::string>();
    auto arity = [&](std::size_t n) {
        if (j.size() != n) throw FormatError("formula " + k + " expects " + std::to_string(n - 1) + " fields");
    };
    if (k == "atom") {
        arity(3);
        std::vector<Term> args;
        for (const auto& t : j.at(2)) args.push_back(term_from(t));
        return Formula::atom(j.at(1).get<std::string>(), std::move(args));
    }
    if (k == "geq" || k == "gt") {
        arity(4);
        auto s = j.at(1).get<SortId>();
        auto l = term_from(j.at(2)), r = term_from(j.at(3));
        return k == "geq" ? Formula::geq(s, l, r) : Formula::gt(s, l, r);
    }
    if (k == "imp") {
        arity(3);
        return Formula::imp(formula_from(j.at(1)), formula_from(j.at(2)));
    }
    if (k == "forall") {
        arity(3);
        return Formula::forall(j.at(1).get<SortId>(), formula_from(j.at(2)));
    }
    throw FormatError("unknown formula kind " + k);
}

json var_json(const VarRef& v) { return {v.depth, v.position}; }
VarRef var_from(const json& j) { return {j.at(0).get<std::size_t>(), j.at(1).get<std::size_t>()}; }
json binding_json(const Binding& b) { return {{"var", var_json(b.var)}, {"intro", b.intro_depth}}; }
Binding binding_from(const json& j) { return {var_from(j.at("var")), j.at("intro").get<std::size_t>()}; }

json names_json(const std::vector<Name>& ns) {
    json out = json::array();
    for (auto n : ns) out.push_back(n.index);
    return out;
}

std::vector<Name> names_from(const json& j) {
    std::vector<Name> out;
    for (const auto& n : j) out.push_back(Name{n.get<std::size_t>()});
    return out;
}

json stacks_json(const std::vector<Stack>& ss) {
    json out = json::array();
    for (const auto& s : ss) out.push_back(names_json(s));
    return out;
}

std::vector<Stack> stacks_from(const json& j) {
    std::vector<Stack> out;
    for (const auto& s : j) out.push_back(names_from(s));
    return out;
}

json annotation_json(const Annotation& a) {
    json bindings = json::array();
    for (const auto& [n, b] : a.binding) bindings.push_back({n.index, binding_json(b)});
    json resets = json::array();
    for (const auto& r : a.resets)
        resets.push_back({{"name", r.name.index}, {"cover", r.cover.index}, {"cover_binding", binding_json(r.cover_binding)}});
    return {{"names", names_json(a.names)},
            {"stacks", stacks_json(a.stacks)},
            {"binding", bindings},
            {"resets", resets},
            {"raw_stacks", stacks_json(a.raw_stacks)}};
}

Annotation annotation_from(const json& j) {
    Annotation a;
    a.names = names_from(j.at("names"));
    a.stacks = stacks_from(j.at("stacks"));
    for (const auto& b : j.at("binding")) a.binding[Name{b.at(0).get<std::size_t>()}] = binding_from(b.at(1));
    for (const auto& r : j.at("resets"))
        a.resets.push_back({Name{r.at("name").get<std::size_t>()}, Name{r.at("cover").get<std::size_t>()},
                            binding_from(r.at("cover_binding"))});
    a.raw_stacks = stacks_from(j.at("raw_stacks"));
    return a;
}

json sequent_json(const Sequent& s) {
    json ctx = json::array();
    for (const auto& [n, sort] : s.ctx) ctx.push_back({n, sort});
    json hyps = json::array();
    for (const auto& h : s.hyps) hyps.push_back(formula_json(h));
    return {{"ctx", ctx}, {"hyps", hyps}, {"concl", formula_json(s.concl)}};
}

Sequent sequent_from(const json& j) {
    Sequent s;
    for (const auto& p : j.at("ctx")) s.ctx.emplace_back(p.at(0).get<std::string>(), p.at(1).get<SortId>());
    for (const auto& h : j.at("hyps")) s.hyps.push_back(formula_from(h));
    s.concl = formula_from(j.at("concl"));
    return s;
}

void flatten_proof(const ProofNode& p, json& out) {
    auto self = out.size();
    out.push_back(json::object());
    json premises = json::array();
    for (const auto& q : p.premises) {
        premises.push_back(out.size());
        flatten_proof(q, out);
    }
    json node{{"rule", to_string(p.tag)}, {"sequent", sequent_json(p.conclusion)}, {"premises", premises}};
    json params = json::object();
    if (p.tag == RuleTag::Exchange || p.index) params["index"] = p.index;
    if (!p.var.empty()) params["var"] = p.var;
    if (!p.rule_id.empty()) params["rule_id"] = p.rule_id;
    if (!p.fresh.empty()) params["fresh"] = p.fresh;
    if (!p.note.empty()) params["note"] = p.note;
    if (!params.empty()) node["params"] = params;
    out[self] = std::move(node);
}

// Premises must point forward in preorder so the list is a tree.
ProofNode rebuild_proof(const json& nodes, std::size_t i) {
    const auto& j = nodes.at(i);
    ProofNode p;
    auto rule = j.at("rule").get<std::string>();
    auto tag = parse_rule_tag(rule);
    if (!tag) throw FormatError("node " + std::to_string(i) + ": unknown rule " + rule);
    p.tag = *tag;
    p.conclusion = sequent_from(j.at("sequent"));
    if (j.contains("params")) {
        const auto& q = j["params"];
        p.index = q.value("index", std::size_t{0});
        p.var = q.value("var", std::string{});
        p.rule_id = q.value("rule_id", std::string{});
        p.fresh = q.value("fresh", std::vector<std::string>{});
        p.note = q.value("note", std::string{});
    }
    std::size_t expect = i + 1;
    for (const auto& k : j.at("premises")) {
        auto c = k.get<std::size_t>();
        if (c != expect || c >= nodes.size()) throw FormatError("node " + std::to_string(i) + ": premises are not in preorder");
        p.premises.push_back(rebuild_proof(nodes, c));
        expect = c + count_nodes(p.premises.back());
    }
    return p;
}

}  // namespace

std::string document_kind(const std::string& text) {
    auto j = load(text);
    if (!j.is_object() || !j.contains("format") || !j["format"].is_string()) throw FormatError("document has no format tag");
    auto f = j["format"].get<std::string>();
    for (const char* k : {"calls", "cyclic", "rep", "proof"})
        if (f == kPrefix + std::string(k) + kVersion) return k;
    throw FormatError("unsupported format " + f);
}

std::string emit_calls(const CallSystem& cs) {
    json fs = json::array();
    for (const auto& f : cs.functions) fs.push_back({{"id", f.id}, {"sorts", f.sorts}});
    json calls = json::array();
    for (const auto& c : cs.calls) calls.push_back({{"id", c.id}, {"dom", c.dom}, {"codom", c.codom}, {"edges", edges_json(c.graph)}});
    json doc{{"format", "unravel/calls/1"}, {"inductive_sorts", cs.inductive_sorts}, {"functions", fs}, {"calls", calls}};
    return doc.dump(2) + "\n";
}

CallSystem parse_calls(const std::string& text) {
    auto j = load_kind(text, "calls");
    return guarded("calls", [&] {
        CallSystem cs;
        cs.inductive_sorts = sorts_from(j);
        for (const auto& f : j.at("functions")) cs.functions.push_back({f.at("id").get<std::string>(), f.at("sorts").get<std::vector<SortId>>()});
        for (const auto& c : j.at("calls")) {
            auto dom = c.at("dom").get<std::string>(), codom = c.at("codom").get<std::string>();
            const auto* fd = cs.find(dom);
            const auto* fc = cs.find(codom);
            if (!fd || !fc) throw FormatError("call " + c.at("id").get<std::string>() + " names an unknown function");
            cs.calls.push_back({c.at("id").get<std::string>(), dom, codom, graph_from(c.at("edges"), fd->arity(), fc->arity())});
        }
        return cs;
    });
}

namespace {

json cyclic_json(const CyclicDocument& d) {
    json js = json::array();
    for (const auto& [id, j] : d.system.judgments) js.push_back({{"id", id}, {"sorts", j.sorts}});
    json rs = json::array();
    for (const auto& [id, r] : d.system.rules) {
        json graphs = json::array();
        for (const auto& g : r.graphs) graphs.push_back(edges_json(g));
        rs.push_back({{"id", id}, {"conclusion", r.conclusion}, {"premises", r.premises}, {"graphs", graphs}});
    }
    json doc{{"format", "unravel/cyclic/1"}, {"inductive_sorts", d.system.inductive_sorts}, {"judgments", js}, {"rules", rs}};
    if (d.derivation) {
        json nodes = json::array();
        for (const auto& n : d.derivation->nodes) nodes.push_back({{"rule", n.rule}, {"children", n.children}});
        doc["derivation"] = {{"root", d.derivation->root}, {"nodes", nodes}};
    }
    return doc;
}

CyclicDocument cyclic_from(const json& j) {
    return guarded("cyclic", [&] {
        CyclicDocument d;
        d.system.inductive_sorts = sorts_from(j);
        for (const auto& x : j.at("judgments")) {
            auto id = x.at("id").get<std::string>();
            d.system.judgments[id] = {id, x.at("sorts").get<std::vector<SortId>>()};
        }
        for (const auto& x : j.at("rules")) {
            RuleScheme r{x.at("id").get<std::string>(), x.at("conclusion").get<std::string>(),
                         x.at("premises").get<std::vector<std::string>>(), {}};
            auto arity = [&](const std::string& jid) -> std::size_t {
                auto it = d.system.judgments.find(jid);
                if (it == d.system.judgments.end()) throw FormatError("rule " + r.id + " names unknown judgment " + jid);
                return it->second.ob();
            };
            const auto& graphs = x.at("graphs");
            if (graphs.size() != r.premises.size()) throw FormatError("rule " + r.id + " needs one graph per premise");
            for (std::size_t i = 0; i < graphs.size(); ++i)
                r.graphs.push_back(graph_from(graphs[i], arity(r.conclusion), arity(r.premises[i])));
            d.system.rules[r.id] = std::move(r);
        }
        if (j.contains("derivation")) {
            RegularDerivation rd;
            const auto& x = j["derivation"];
            rd.root = x.at("root").get<std::size_t>();
            for (const auto& n : x.at("nodes")) rd.nodes.push_back({n.at("rule").get<std::string>(), n.at("children").get<std::vector<std::size_t>>()});
            d.derivation = std::move(rd);
        }
        return d;
    });
}

}  // namespace

std::string emit_cyclic(const CyclicDocument& d) { return cyclic_json(d).dump(2) + "\n"; }

CyclicDocument parse_cyclic(const std::string& text) { return cyclic_from(load_kind(text, "cyclic")); }

std::string emit_rep(const ResetRep& rep) {
    json nodes = json::array();
    for (const auto& n : rep.nodes) {
        json x{{"graph_node", n.graph_node},
               {"rule", n.rule},
               {"depth", n.depth},
               {"children", n.children},
               {"annotation", annotation_json(n.annotation)}};
        if (n.parent) x["parent"] = *n.parent;
        if (n.origin) x["origin"] = *n.origin;
        if (n.bud)
            x["bud"] = {{"sprout", n.bud->sprout},
                        {"prog", n.bud->prog.index},
                        {"cov", n.bud->cov.index},
                        {"cov_binding", binding_json(n.bud->cov_binding)}};
        nodes.push_back(std::move(x));
    }
    json doc{{"format", "unravel/rep/1"}, {"root", rep.root}, {"nodes", nodes}};
    return doc.dump(2) + "\n";
}

ResetRep parse_rep(const std::string& text) {
    auto j = load_kind(text, "rep");
    return guarded("rep", [&] {
        ResetRep rep;
        rep.root = j.at("root").get<std::size_t>();
        for (const auto& x : j.at("nodes")) {
            RepNode n;
            n.graph_node = x.at("graph_node").get<std::size_t>();
            n.rule = x.at("rule").get<std::string>();
            n.depth = x.at("depth").get<std::size_t>();
            n.children = x.at("children").get<std::vector<std::size_t>>();
            n.annotation = annotation_from(x.at("annotation"));
            if (x.contains("parent")) n.parent = x["parent"].get<std::size_t>();
            if (x.contains("origin")) n.origin = x["origin"].get<std::size_t>();
            if (x.contains("bud")) {
                const auto& b = x["bud"];
                n.bud = BudInfo{b.at("sprout").get<std::size_t>(), Name{b.at("prog").get<std::size_t>()},
                                Name{b.at("cov").get<std::size_t>()}, binding_from(b.at("cov_binding"))};
            }
            rep.nodes.push_back(std::move(n));
        }
        for (std::size_t i = 0; i < rep.nodes.size(); ++i) {
            for (auto c : rep.nodes[i].children)
                if (c >= rep.nodes.size()) throw FormatError("rep node " + std::to_string(i) + " has a dangling child");
            if (rep.nodes[i].bud && rep.nodes[i].bud->sprout >= rep.nodes.size())
                throw FormatError("rep node " + std::to_string(i) + " has a dangling sprout");
        }
        if (!rep.nodes.empty() && rep.root >= rep.nodes.size()) throw FormatError("rep root out of range");
        return rep;
    });
}

std::string emit_proof(const ProofDocument& d) {
    json nodes = json::array();
    flatten_proof(d.proof, nodes);
    // One record per line keeps large proofs diffable without the bulk of
    // full indentation.
    std::string out = "{\"format\": \"unravel/proof/1\",\n";
    if (d.system) {
        auto sys = cyclic_json({*d.system, std::nullopt});
        sys.erase("format");
        out += "\"system\": " + sys.dump() + ",\n";
    }
    out += "\"nodes\": [\n";
    for (std::size_t i = 0; i < nodes.size(); ++i) out += nodes[i].dump() + (i + 1 < nodes.size() ? ",\n" : "\n");
    return out + "]}\n";
}

ProofDocument parse_proof(const std::string& text) {
    auto j = load_kind(text, "proof");
    return guarded("proof", [&] {
        ProofDocument d;
        const auto& nodes = j.at("nodes");
        if (!nodes.is_array() || nodes.empty()) throw FormatError("proof has no nodes");
        d.proof = rebuild_proof(nodes, 0);
        if (count_nodes(d.proof) != nodes.size()) throw FormatError("proof node list has unreachable entries");
        if (j.contains("system")) {
            if (j["system"].contains("derivation")) throw FormatError("embedded system carries a derivation");
            d.system = cyclic_from(j["system"]).system;
        }
        return d;
    });
}

}  // namespace unravel
