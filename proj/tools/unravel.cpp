// unravel: size-change termination and cyclic-proof unravelling from the
// command line. Exit status 0 ok, 1 negative verdict, 2 error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

#include "unravel/formats.hpp"
#include "unravel/minidefs.hpp"
#include "unravel/proof.hpp"
#include "unravel/sct.hpp"
#include "unravel/translate.hpp"
#include "unravel/unfold.hpp"

using namespace unravel;

namespace {

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw CliError("cannot write " + path);
}

bool looks_like_json(const std::string& text) {
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) return c == '{';
    return false;
}

// Everything the pipeline can start from.
struct Input {
    std::optional<CallSystem> calls;
    std::optional<CyclicDocument> cyclic;
    std::optional<ResetRep> rep;
    std::optional<ProofDocument> proof;
};

Input read_input(const std::string& path) {
    auto text = slurp(path);
    Input in;
    if (!looks_like_json(text)) {
        in.calls = parse_minidefs(text);
        return in;
    }
    auto kind = document_kind(text);
    if (kind == "calls") in.calls = parse_calls(text);
    else if (kind == "cyclic") in.cyclic = parse_cyclic(text);
    else if (kind == "rep") in.rep = parse_rep(text);
    else in.proof = parse_proof(text);
    return in;
}

void fail_on(const std::vector<Diagnostic>& ds) {
    if (ds.empty()) return;
    std::string msg = "invalid input";
    for (const auto& d : ds) msg += "\n  " + to_string(d);
    throw CliError(msg);
}

std::string join(const std::vector<std::string>& xs, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
    return out;
}

void report(const SctVerdict& v, bool as_json) {
    if (as_json) {
        nlohmann::json j{{"terminating", v.terminating}, {"closure_size", v.closure_size}};
        if (v.counterexample) j["counterexample"] = {{"prefix", v.counterexample->prefix}, {"cycle", v.counterexample->cycle}};
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::cout << (v.terminating ? "terminating" : "not terminating") << " (closure " << v.closure_size << ")\n";
    if (v.counterexample)
        std::cout << "lasso: " << join(v.counterexample->prefix, " ") << " (" << join(v.counterexample->cycle, " ") << ")^w\n";
}

// A cyclic system with the derivation to unravel.
struct Problem {
    CyclicSystem system;
    RegularDerivation derivation;
};

Problem problem_from(const Input& in, const std::string& root) {
    if (in.calls) {
        fail_on(validate_calls(*in.calls));
        auto ind = induced_proof_system(*in.calls);
        auto name = root.empty() ? (in.calls->functions.empty() ? std::string{} : in.calls->functions.front().id) : root;
        auto it = ind.derivations.find(name);
        if (it == ind.derivations.end()) throw CliError("no function named '" + name + "'");
        return {std::move(ind.system), it->second};
    }
    if (in.cyclic) {
        if (!in.cyclic->derivation) throw CliError("cyclic document has no derivation");
        if (!root.empty()) throw CliError("--root applies to call systems only");
        fail_on(validate_system(in.cyclic->system));
        fail_on(validate_derivation(*in.cyclic->derivation, in.cyclic->system));
        return {in.cyclic->system, *in.cyclic->derivation};
    }
    throw CliError("expected a call system, definitions or a cyclic document");
}

int cmd_sct(const std::string& path, const std::vector<std::string>& roots, bool as_json) {
    auto in = read_input(path);
    SctVerdict v;
    if (in.calls) {
        fail_on(validate_calls(*in.calls));
        std::optional<std::set<std::string>> r;
        if (!roots.empty()) {
            r.emplace(roots.begin(), roots.end());
            for (const auto& f : roots)
                if (!in.calls->find(f)) throw CliError("no function named '" + f + "'");
        }
        v = decide_termination(*in.calls, r);
    } else {
        auto p = problem_from(in, "");
        v = check_soundness(p.derivation, p.system);
    }
    report(v, as_json);
    return v.terminating ? 0 : 1;
}

struct UnravelOpts {
    std::string path, out, dot, root;
    bool trace = false;
};

int cmd_unravel(const UnravelOpts& o) {
    auto p = problem_from(read_input(o.path), o.root);
    ResetRep rep;
    try {
        rep = respect_induction_order(build_reset_rep(p.derivation, p.system), p.system);
    } catch (const UnsoundInput& e) {
        std::cerr << "input is not size-change terminating\n";
        report(e.verdict, false);
        return 1;
    }
    if (o.trace) std::cout << format_trace(rep);
    if (!o.dot.empty()) spit(o.dot, to_dot(rep));
    auto proof = translate(rep, p.system);
    auto result = check(proof, p.system);
    for (const auto& d : result.diagnostics) std::cerr << to_string(d) << "\n";
    if (!result.ok()) throw CliError("internal: generated proof does not check");
    auto doc = emit_proof({proof, p.system});
    if (o.out.empty()) {
        if (!o.trace) std::cout << doc;
    } else {
        spit(o.out, doc);
    }
    std::cerr << count_nodes(proof) << " proof nodes, " << notes_with_prefix(proof, "ind'").size() << " ind' expansions\n";
    return 0;
}

int cmd_verify(const std::string& path, const std::string& system_path) {
    auto text = slurp(path);
    auto doc = parse_proof(text);
    std::optional<CyclicSystem> sys = doc.system;
    if (!system_path.empty()) {
        auto in = read_input(system_path);
        if (in.calls) sys = induced_proof_system(*in.calls).system;
        else if (in.cyclic) sys = in.cyclic->system;
        else throw CliError("--system expects a call system, definitions or a cyclic document");
    }
    if (!sys) throw CliError("proof carries no system; pass --system");
    fail_on(validate_system(*sys));
    auto result = check(doc.proof, *sys);
    for (const auto& d : result.diagnostics) std::cerr << to_string(d) << "\n";
    if (result.ok()) std::cout << "ok (" << count_nodes(doc.proof) << " nodes)\n";
    return result.ok() ? 0 : 1;
}

int cmd_show(const std::string& path, const std::string& dot) {
    auto in = read_input(path);
    if (in.calls) {
        for (const auto& f : in.calls->functions) std::cout << f.id << " : " << join(f.sorts, " x ") << "\n";
        for (const auto& c : in.calls->calls) std::cout << c.id << " : " << c.dom << " -> " << c.codom << " " << to_string(c.graph) << "\n";
    } else if (in.cyclic) {
        for (const auto& [id, r] : in.cyclic->system.rules) {
            std::cout << id << " : " << r.conclusion << " <-";
            for (std::size_t i = 0; i < r.premises.size(); ++i) std::cout << " " << r.premises[i] << to_string(r.graphs[i]);
            std::cout << "\n";
        }
        if (in.cyclic->derivation) std::cout << in.cyclic->derivation->nodes.size() << " derivation nodes\n";
    } else if (in.rep) {
        std::cout << format_trace(*in.rep);
        if (!dot.empty()) spit(dot, to_dot(*in.rep));
    } else {
        std::cout << format_proof(in.proof->proof);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"size-change termination and cyclic proof unravelling"};
    app.require_subcommand(1);

    std::string path, out, dot, root, system_path;
    std::vector<std::string> roots;
    bool as_json = false, trace = false;

    auto* sct = app.add_subcommand("sct", "decide size-change termination");
    sct->add_option("file", path, "definitions, call system or cyclic document")->required();
    sct->add_option("--roots", roots, "restrict to call sequences starting here")->delimiter(',');
    sct->add_flag("--json", as_json, "machine-readable report");

    auto* unr = app.add_subcommand("unravel", "build a checked inductive proof");
    unr->add_option("file", path)->required();
    unr->add_option("--out", out, "proof file (stdout when absent)");
    unr->add_option("--dot", dot, "write the reset representation as DOT");
    unr->add_flag("--trace", trace, "print the annotated representation");
    unr->add_option("--root", root, "function to unravel (default: the first)");

    auto* ver = app.add_subcommand("verify", "check a proof file");
    ver->add_option("file", path)->required();
    ver->add_option("--system", system_path, "system to check against when the proof has none");

    auto* show = app.add_subcommand("show", "print any input in readable form");
    show->add_option("file", path)->required();
    show->add_option("--dot", dot, "write a representation as DOT");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        auto rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*sct) return cmd_sct(path, roots, as_json);
        if (*unr) return cmd_unravel({path, out, dot, root, trace});
        if (*ver) return cmd_verify(path, system_path);
        return cmd_show(path, dot);
    } catch (const ParseError& e) {
        std::cerr << path << ":" << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
}
