// One PASS/FAIL line per acceptance criterion, details indented below it.
// Exit status 1 when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "unravel/minidefs.hpp"
#include "unravel/sct.hpp"
#include "unravel/translate.hpp"

using namespace unravel;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t) { return std::chrono::duration<double, std::milli>(Clock::now() - t).count(); }

struct Verdict {
    bool pass = true;
    std::vector<std::string> lines;
    void fail(const std::string& why) {
        pass = false;
        note(why);
    }
    void note(const std::string& s) { lines.push_back(s); }
};

int failures = 0;

void report(int n, const std::string& title, const Verdict& v) {
    std::cout << (v.pass ? "PASS" : "FAIL") << " " << n << " " << title << "\n";
    std::size_t shown = 0;
    for (const auto& l : v.lines)
        if (shown++ < 12) std::cout << "    " << l << "\n";
    if (v.lines.size() > 12) std::cout << "    ... " << v.lines.size() - 12 << " more\n";
    std::cout.flush();
    if (!v.pass) ++failures;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

// ---------------------------------------------------------------- goldens

struct Token {
    std::string name;
    bool struck = false;
};
using Stacks = std::vector<std::vector<Token>>;

// "(ab{cd}),(e)"; labels are single letters or n<digits>.
Stacks parse_stacks(const std::string& s) {
    Stacks out;
    bool in_braces = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(') out.emplace_back();
        else if (c == '{') in_braces = true;
        else if (c == '}') in_braces = false;
        else if (c >= 'a' && c <= 'z') {
            std::string name(1, c);
            if (c == 'n')
                while (i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1]))) name += s[++i];
            out.back().push_back({name, in_braces});
        }
    }
    return out;
}

struct GoldNode {
    std::string rule;
    Stacks stacks;
    std::optional<std::size_t> sprout;
    std::string prog;
    std::vector<std::size_t> children;
};

struct Golden {
    std::optional<std::vector<std::size_t>> keep;  // nullopt keeps all children
    std::vector<GoldNode> nodes;
};

Golden read_golden(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    Golden g;
    std::string line;
    std::vector<std::size_t> open;  // open[depth] = last node at that depth
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("keep", 0) == 0) {
            std::istringstream ks(line.substr(4));
            std::string w;
            std::vector<std::size_t> keep;
            while (ks >> w)
                if (w != "all") keep.push_back(std::stoul(w));
            if (!keep.empty()) g.keep = keep;
            continue;
        }
        auto indent = line.find_first_not_of(' ');
        auto depth = indent / 2;
        std::istringstream ls(line);
        std::string id, rule, stacks, arrow, sprout, progword, prog;
        ls >> id >> rule >> stacks >> arrow >> sprout >> progword >> prog;
        GoldNode n{rule, parse_stacks(stacks), std::nullopt, {}, {}};
        if (arrow == "->") {
            n.sprout = std::stoul(sprout.substr(1));
            n.prog = prog;
        }
        auto idx = g.nodes.size();
        if (depth > 0) g.nodes[open.at(depth - 1)].children.push_back(idx);
        open.resize(depth + 1);
        open[depth] = idx;
        g.nodes.push_back(std::move(n));
    }
    return g;
}

// Compares the golden tree with the rep projected onto the kept children.
// Names match up to a bijection between incarnations on each branch: a name
// continues its incarnation from a node into a child only while it survives.
class GoldenCompare {
public:
    GoldenCompare(const Golden& g, const ResetRep& rep) : g_(g), rep_(rep) {}

    std::vector<std::string> run() {
        Branch b;
        walk(0, rep_.root, b);
        return errors_;
    }

private:
    using Inc = std::pair<std::string, std::size_t>;  // name, birth node
    struct Branch {
        std::map<std::string, Inc> g_live, o_live;
        std::map<Inc, Inc> fwd, back;
    };

    void err(std::size_t gi, const std::string& what) { errors_.push_back("#" + std::to_string(gi) + ": " + what); }

    static Inc incarnation(const std::map<std::string, Inc>& live, const std::string& name, std::size_t here) {
        auto it = live.find(name);
        return it == live.end() ? Inc{name, here} : it->second;
    }

    bool bind(Branch& b, const Inc& gi, const Inc& oi) {
        auto f = b.fwd.find(gi);
        auto k = b.back.find(oi);
        if (f != b.fwd.end() && f->second != oi) return false;
        if (k != b.back.end() && k->second != gi) return false;
        b.fwd[gi] = oi;
        b.back[oi] = gi;
        return true;
    }

    void walk(std::size_t gi, std::size_t oi, Branch b) {
        const auto& gn = g_.nodes[gi];
        const auto& on = rep_.nodes[oi];
        ours_[gi] = oi;
        if (gn.rule != on.rule) return err(gi, "rule " + on.rule + ", expected " + gn.rule);
        auto os = parse_stacks(format_stacks(on.annotation));
        if (os.size() != gn.stacks.size()) return err(gi, "stack count differs");
        for (std::size_t j = 0; j < os.size(); ++j) {
            if (os[j].size() != gn.stacks[j].size()) return err(gi, "stack " + std::to_string(j) + " is " + format_stacks(on.annotation));
            for (std::size_t k = 0; k < os[j].size(); ++k) {
                const auto& gt = gn.stacks[j][k];
                const auto& ot = os[j][k];
                if (gt.struck != ot.struck) return err(gi, "struck names differ: " + format_stacks(on.annotation));
                if (!bind(b, incarnation(b.g_live, gt.name, gi), incarnation(b.o_live, ot.name, oi)))
                    return err(gi, "no consistent renaming: " + gt.name + " vs " + ot.name + " in " + format_stacks(on.annotation));
            }
        }
        if (gn.sprout) {
            if (!on.bud) return err(gi, "expected a bud");
            auto want = ours_.find(*gn.sprout);
            if (want == ours_.end() || want->second != on.bud->sprout)
                return err(gi, "closes to #" + std::to_string(on.bud->sprout) + " in ours");
            auto gp = b.fwd.find(incarnation(b.g_live, gn.prog, gi));
            if (gp == b.fwd.end() || gp->second != incarnation(b.o_live, label(on.bud->prog), oi))
                return err(gi, "prog " + label(on.bud->prog) + " does not correspond to " + gn.prog);
            return;
        }
        if (on.bud) return err(gi, "ours is a bud closing to #" + std::to_string(on.bud->sprout));

        std::vector<std::size_t> kids;
        if (g_.keep) {
            for (auto k : *g_.keep)
                if (k < on.children.size()) kids.push_back(on.children[k]);
        } else {
            kids = on.children;
        }
        if (kids.size() != gn.children.size())
            return err(gi, std::to_string(kids.size()) + " kept children, expected " + std::to_string(gn.children.size()));

        Branch next = b;
        next.g_live.clear();
        next.o_live.clear();
        for (std::size_t j = 0; j < os.size(); ++j)
            for (std::size_t k = 0; k < os[j].size(); ++k) {
                if (!gn.stacks[j][k].struck) next.g_live[gn.stacks[j][k].name] = incarnation(b.g_live, gn.stacks[j][k].name, gi);
                if (!os[j][k].struck) next.o_live[os[j][k].name] = incarnation(b.o_live, os[j][k].name, oi);
            }
        for (std::size_t c = 0; c < kids.size(); ++c) walk(gn.children[c], kids[c], next);
    }

    const Golden& g_;
    const ResetRep& rep_;
    std::map<std::size_t, std::size_t> ours_;
    std::vector<std::string> errors_;
};

// ------------------------------------------------------------ criteria

Verdict sct_verdicts() {
    Verdict v;
    double worst = 0;
    for (const auto& e : fixtures::examples()) {
        auto cs = parse_minidefs(e.defs);
        auto t = Clock::now();
        auto verdict = decide_termination(cs);
        auto ms = ms_since(t);
        worst = std::max(worst, ms);
        if (!verdict.terminating) v.fail(e.name + ": not terminating");
        if (ms >= 100) v.fail(e.name + ": " + fmt(ms) + " ms");
        auto again = decide_termination(e.graphs);
        if (!again.terminating) v.fail(e.name + ": hand-written graphs not terminating");
    }
    v.note("5 examples terminating, slowest " + fmt(worst) + " ms");
    return v;
}

Verdict oracle_equivalence() {
    Verdict v;
    std::mt19937 rng(2024);
    oracle::Shape shape;  // 3 functions, arity 3, 4 calls
    const int count = 600;
    int negative = 0, disagree = 0, bad_lasso = 0;
    auto t = Clock::now();
    for (int i = 0; i < count; ++i) {
        auto cs = oracle::random_system(rng, shape);
        auto ours = decide_termination(cs);
        if (ours.terminating != oracle::terminates(cs)) {
            ++disagree;
            v.fail("case " + std::to_string(i) + ": verdict differs");
        }
        if (!ours.terminating) {
            ++negative;
            if (!ours.counterexample || !oracle::refutes(cs, ours.counterexample->prefix, ours.counterexample->cycle)) {
                ++bad_lasso;
                v.fail("case " + std::to_string(i) + ": lasso does not refute");
            }
        }
    }
    auto secs = ms_since(t) / 1000;
    if (secs >= 60) v.fail("took " + fmt(secs) + " s");
    v.note(std::to_string(count) + " systems, " + std::to_string(negative) + " non-terminating, " +
           std::to_string(disagree) + " disagreements, " + std::to_string(bad_lasso) + " bad lassos, " + fmt(secs) + " s");
    return v;
}

Verdict golden_traces() {
    Verdict v;
    const char* dir = std::getenv("UNRAVEL_GOLDEN_DIR");
    std::string base = dir ? dir : "tests/golden";
    const std::vector<std::pair<std::string, std::string>> panels{
        {"plus", "plus.txt"}, {"ackermann", "ackermann.txt"}, {"fg", "fg.txt"}, {"d_nat", "d.txt"}};
    for (const auto& [name, file] : panels) {
        const auto& e = fixtures::example(name);
        auto r = fixtures::run(e.graphs, e.root, false);
        if (!r.error.empty()) {
            v.fail(name + ": " + r.error);
            continue;
        }
        Golden g;
        try {
            g = read_golden(base + "/" + file);
        } catch (const std::exception& ex) {
            v.fail(ex.what());
            continue;
        }
        auto errs = GoldenCompare(g, r.ordered).run();
        for (const auto& x : errs) v.fail(name + " " + x);
        if (errs.empty()) v.note(name + ": " + std::to_string(g.nodes.size()) + " nodes match");
    }

    auto plus = fixtures::run(fixtures::example("plus").graphs, "+", false);
    if (plus.ordered.buds().size() != 1) v.fail("plus: expected one back-edge");

    auto ack = fixtures::run(fixtures::example("ackermann").graphs, "A", false);
    std::set<std::size_t> root_progs;
    for (auto b : ack.ordered.buds()) {
        const auto& n = ack.ordered.nodes[b];
        if (n.bud->sprout == 0) root_progs.insert(n.annotation.binding.at(n.bud->prog).var.position);
    }
    if (root_progs != std::set<std::size_t>{0, 1}) v.fail("ackermann: root back-edges do not progress on both arguments");

    // d: the three premises of every node above the leaves close as siblings
    // to sprouts on their own branch, and the two closing on one name share it.
    auto d = fixtures::run(fixtures::example("d_nat").graphs, "d", false);
    std::size_t families = 0;
    for (const auto& n : d.ordered.nodes) {
        if (n.bud || n.children.empty()) continue;
        bool all_buds = std::all_of(n.children.begin(), n.children.end(), [&](auto c) { return d.ordered.nodes[c].bud.has_value(); });
        if (!all_buds) continue;
        ++families;
        std::map<std::string, std::set<std::size_t>> sprouts;
        for (auto c : n.children) sprouts[label(d.ordered.nodes[c].bud->prog)].insert(d.ordered.nodes[c].bud->sprout);
        for (const auto& [p, s] : sprouts)
            if (s.size() != 1) v.fail("d: sibling buds on prog " + p + " close to different sprouts");
    }
    if (!families) v.fail("d: no node whose premises are all buds");
    v.note("d: " + std::to_string(families) + " all-bud sibling groups");
    return v;
}

// Criteria 4 to 8 share one pass over the fixtures and the fuzz corpus.
struct PipelineStats {
    std::size_t cases = 0, fuzz = 0;
    Verdict invariants, order, verify, skeleton, names;
    std::size_t under_sprout_violations = 0, reach_cases = 0;
    std::vector<std::string> reach_examples;
    std::size_t largest_proof = 0;
    double seconds = 0;
};

bool within_name_bound(const ResetRep& rep, std::size_t m, std::string& why) {
    const std::size_t cap = m < 20 ? (std::size_t{1} << m) : std::size_t{1} << 20;
    for (std::size_t i = 0; i < rep.nodes.size(); ++i) {
        const auto& a = rep.nodes[i].annotation;
        if (a.names.size() > cap) {
            why = "node " + std::to_string(i) + " holds " + std::to_string(a.names.size()) + " names";
            return false;
        }
        auto check_index = [&](Name n) {
            if (n.index <= cap + m) return true;
            why = "node " + std::to_string(i) + " uses index " + std::to_string(n.index);
            return false;
        };
        for (const auto& ss : {a.stacks, a.raw_stacks})
            for (const auto& s : ss)
                for (auto n : s)
                    if (!check_index(n)) return false;
    }
    return true;
}

void one_case(PipelineStats& st, const std::string& what, const CallSystem& cs, const std::string& root) {
    ++st.cases;
    auto r = fixtures::run(cs, root);
    if (!r.error.empty()) {
        st.verify.fail(what + ": " + r.error);
        return;
    }
    const auto& sys = r.induced.system;
    for (const auto* rep : {&r.rep, &r.ordered})
        for (const auto& d : check_reset_invariants(*rep, sys)) st.invariants.fail(what + ": " + to_string(d));

    auto reach = check_induction_order(r.ordered, OrderScope::Reachable);
    auto local = check_induction_order(r.ordered, OrderScope::UnderSprout);
    st.under_sprout_violations += local.size();
    for (const auto& d : local) st.order.fail(what + " (local): " + to_string(d));
    if (!reach.empty()) {
        ++st.reach_cases;
        st.order.fail(what + ": " + to_string(reach.front()) + (reach.size() > 1 ? " (+" + std::to_string(reach.size() - 1) + ")" : ""));
    }

    auto res = check(*r.proof, sys);
    if (!res.ok()) st.verify.fail(what + ": " + to_string(res.diagnostics.front()));
    st.largest_proof = std::max(st.largest_proof, count_nodes(*r.proof));

    try {
        if (!(extract_skeleton(*r.proof) == rep_skeleton(r.ordered))) st.skeleton.fail(what + ": skeleton differs");
    } catch (const std::exception& e) {
        st.skeleton.fail(what + ": " + e.what());
    }

    std::string why;
    auto m = sys.max_ob();
    for (const auto* rep : {&r.rep, &r.ordered})
        if (!within_name_bound(*rep, m, why)) {
            st.names.fail(what + ": " + why);
            break;
        }
}

PipelineStats pipeline() {
    PipelineStats st;
    auto t = Clock::now();
    for (const auto& e : fixtures::examples()) one_case(st, e.name, e.graphs, e.root);
    std::mt19937 rng(1);
    oracle::Shape shape{3, 2, 3, 30, 20};
    auto corpus = oracle::sound_systems(rng, 200, shape);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        one_case(st, "fuzz " + std::to_string(i), corpus[i], corpus[i].functions.front().id);
        ++st.fuzz;
    }
    st.seconds = ms_since(t) / 1000;
    return st;
}

Verdict end_to_end(PipelineStats& st) {
    Verdict v = st.verify;
    v.note(std::to_string(st.cases) + " cases checked, largest proof " + std::to_string(st.largest_proof) + " nodes, " +
           fmt(st.seconds) + " s for criteria 4-8");

    auto ind_notes = [](const std::string& name) {
        const auto& e = fixtures::example(name);
        auto r = fixtures::run(e.graphs, e.root);
        return r.proof ? notes_with_prefix(*r.proof, "ind'") : std::vector<std::string>{};
    };
    auto base = [](std::string s) { return s.substr(0, s.find('\'', 5)); };

    auto plus = ind_notes("plus");
    if (plus.size() != 1) v.fail("plus: " + std::to_string(plus.size()) + " ind' expansions, expected 1");

    auto ack = ind_notes("ackermann");
    std::string listed;
    for (const auto& n : ack) listed += (listed.empty() ? "" : ", ") + n;
    if (ack.size() != 2) v.fail("ackermann: " + std::to_string(ack.size()) + " ind' expansions, expected 2 [" + listed + "]");
    if (ack.size() < 2 || base(ack[0]) != "ind' x0_0" || base(ack[1]) != "ind' x0_1")
        v.fail("ackermann: root does not introduce x0 before x1 [" + listed + "]");
    else
        v.note("ackermann: root introduces x0 then x1");
    return v;
}

Verdict sorted_pipeline() {
    Verdict v;
    auto to_nat = [](const SortId&) { return SortId("Nat"); };
    for (const auto* name : {"plus", "ackermann", "fg", "d_nat"}) {
        const auto& e = fixtures::example(name);
        auto star = fixtures::run(e.graphs, e.root);
        auto nat = fixtures::run(fixtures::with_sort(e.graphs, "Nat"), e.root);
        if (!star.proof || !nat.proof) {
            v.fail(std::string(name) + ": " + star.error + nat.error);
            continue;
        }
        if (!(map_sorts(*star.proof, to_nat) == *nat.proof)) v.fail(std::string(name) + ": proofs differ beyond sort tags");
        if (!(map_sorts(star.induced.system, to_nat) == nat.induced.system)) v.fail(std::string(name) + ": systems differ");
        if (!check(*nat.proof, nat.induced.system).ok()) v.fail(std::string(name) + ": Nat proof does not check");
    }
    const auto& tree = fixtures::example("d_tree");
    auto cs = parse_minidefs(tree.defs);
    if (cs.inductive_sorts != std::set<SortId>{"Tree"} || cs.functions.front().sorts != std::vector<SortId>{"Tree", "Tree"})
        v.fail("d_tree: definitions do not give Tree arguments");
    auto r = fixtures::run(cs, "d");
    if (!r.proof) {
        v.fail("d_tree: " + r.error);
    } else {
        auto res = check(*r.proof, r.induced.system);
        if (!res.ok()) v.fail("d_tree: " + to_string(res.diagnostics.front()));
        else v.note("d_tree verifies over Tree (" + std::to_string(count_nodes(*r.proof)) + " nodes)");
    }
    return v;
}

// ------------------------------------------------------------ mutations

void collect_paths(const ProofNode& p, const std::string& path, std::vector<std::string>& out) {
    out.push_back(path);
    for (std::size_t i = 0; i < p.premises.size(); ++i) collect_paths(p.premises[i], path + "." + std::to_string(i), out);
}

ProofNode& at_path(ProofNode& p, const std::string& path) {
    ProofNode* n = &p;
    std::istringstream is(path.substr(4));
    std::string step;
    while (std::getline(is, step, '.'))
        if (!step.empty()) n = &n->premises[std::stoul(step)];
    return *n;
}

std::string parent_of(const std::string& path) {
    auto dot = path.rfind('.');
    return dot == std::string::npos ? path : path.substr(0, dot);
}

// Each returns false when it does not apply to the node.
using Mutation = std::function<bool(ProofNode&)>;

std::vector<std::pair<std::string, Mutation>> mutations() {
    return {
        {"retag", [](ProofNode& n) {
             n.tag = n.tag == RuleTag::Identity ? RuleTag::GeqSubsum : RuleTag::Identity;
             return true;
         }},
        {"drop-hypothesis", [](ProofNode& n) {
             if (n.conclusion.hyps.empty()) return false;
             n.conclusion.hyps.pop_back();
             return true;
         }},
        {"swap-arguments", [](ProofNode& n) {
             auto& c = n.conclusion.concl;
             if (c.kind() == FormulaKind::Atom || c.is_order()) {
                 auto args = c.args();
                 std::reverse(args.begin(), args.end());
                 if (args == c.args()) return false;
                 c = c.kind() == FormulaKind::Atom ? Formula::atom(c.head(), args)
                     : c.kind() == FormulaKind::Gt ? Formula::gt(c.head(), args[0], args[1])
                                                   : Formula::geq(c.head(), args[0], args[1]);
                 return true;
             }
             return false;
         }},
        {"rename-variable", [](ProofNode& n) {
             if (n.var.empty()) return false;
             n.var = "zz";
             return true;
         }},
        {"drop-premise", [](ProofNode& n) {
             if (n.premises.empty()) return false;
             n.premises.pop_back();
             return true;
         }},
        {"reuse-fresh", [](ProofNode& n) {
             if (n.fresh.empty() || n.conclusion.ctx.empty()) return false;
             n.fresh[0] = n.conclusion.ctx.front().first;
             return true;
         }},
        {"unknown-rule", [](ProofNode& n) {
             if (n.tag != RuleTag::CRule) return false;
             n.rule_id = "no-such-rule";
             return true;
         }},
        {"shift-exchange", [](ProofNode& n) {
             if (n.tag != RuleTag::Exchange) return false;
             n.index += 1;
             return true;
         }},
        {"weaken-order", [](ProofNode& n) {
             auto& c = n.conclusion.concl;
             if (c.kind() != FormulaKind::Gt) return false;
             c = Formula::geq(c.head(), c.args()[0], c.args()[1]);
             return true;
         }},
        {"drop-context", [](ProofNode& n) {
             if (n.conclusion.ctx.empty()) return false;
             n.conclusion.ctx.pop_back();
             return true;
         }},
    };
}

Verdict adversarial() {
    Verdict v;
    std::mt19937 rng(99);
    auto kinds = mutations();
    std::size_t tried = 0, rejected = 0, located = 0;
    std::map<std::string, std::size_t> per_kind;
    for (const auto* name : {"plus", "fg", "ackermann"}) {
        const auto& e = fixtures::example(name);
        auto r = fixtures::run(e.graphs, e.root);
        if (!r.proof) {
            v.fail(std::string(name) + ": " + r.error);
            continue;
        }
        std::vector<std::string> paths;
        collect_paths(*r.proof, "root", paths);
        for (const auto& [kind, mutate] : kinds) {
            std::size_t done = 0;
            for (int attempt = 0; attempt < 400 && done < 3; ++attempt) {
                const auto& path = paths[std::uniform_int_distribution<std::size_t>(0, paths.size() - 1)(rng)];
                auto mutant = *r.proof;
                if (!mutate(at_path(mutant, path)) || mutant == *r.proof) continue;
                ++done;
                ++tried;
                ++per_kind[kind];
                auto res = check(mutant, r.induced.system);
                if (res.ok()) {
                    v.fail(std::string(name) + " " + kind + " at " + path + ": accepted");
                    continue;
                }
                ++rejected;
                bool here = std::any_of(res.diagnostics.begin(), res.diagnostics.end(), [&](const Diagnostic& d) {
                    return d.where == path || d.where == parent_of(path);
                });
                if (here) ++located;
                else v.fail(std::string(name) + " " + kind + " at " + path + ": first diagnostic at " + res.diagnostics.front().where);
            }
        }
    }
    if (tried < 50) v.fail("only " + std::to_string(tried) + " mutations applied");
    v.note(std::to_string(tried) + " mutations, " + std::to_string(rejected) + " rejected, " + std::to_string(located) +
           " located at the node or its parent, " + std::to_string(per_kind.size()) + " kinds");
    return v;
}

}  // namespace

int main() {
    std::cout << std::unitbuf;
    report(1, "sct verdicts on the examples", sct_verdicts());
    report(2, "oracle equivalence", oracle_equivalence());
    report(3, "annotation traces match the goldens", golden_traces());

    auto st = pipeline();
    st.invariants.note(std::to_string(st.cases) + " cases (" + std::to_string(st.fuzz) + " fuzzed), both phases");
    report(4, "reset-proof invariants", st.invariants);

    Verdict order = st.order;
    order.lines.insert(order.lines.begin(),
                       "reachable pairs violated in " + std::to_string(st.reach_cases) + " of " + std::to_string(st.cases) +
                           " cases; pairs under the sprout violated " + std::to_string(st.under_sprout_violations) + " times");
    report(5, "induction order over mutually reachable buds", order);

    report(6, "end-to-end verification", end_to_end(st));
    st.skeleton.note(std::to_string(st.cases) + " cases");
    report(7, "skeleton matches the representation", st.skeleton);
    st.names.note(std::to_string(st.cases) + " cases, |names| <= 2^m and index <= 2^m + m");
    report(8, "name bound", st.names);
    report(9, "sorted pipeline", sorted_pipeline());
    report(10, "checker rejects mutated proofs", adversarial());

    std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed")) << "\n";
    return failures ? 1 : 0;
}
