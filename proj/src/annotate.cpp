#include "unravel/annotate.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace unravel {

std::string label(Name n) {
    if (n.index < 26) return std::string(1, static_cast<char>('a' + n.index));
    return "n" + std::to_string(n.index);
}

bool Annotation::was_reset(Name n) const { return reset_record(n) != nullptr; }

const ResetRecord* Annotation::reset_record(Name n) const {
    for (const auto& r : resets)
        if (r.name == n) return &r;
    return nullptr;
}

std::size_t Annotation::position_of(Name n) const {
    auto it = std::find(names.begin(), names.end(), n);
    if (it == names.end()) throw std::out_of_range("name " + label(n) + " not in annotation");
    return static_cast<std::size_t>(it - names.begin());
}

bool Annotation::has(Name n) const { return std::find(names.begin(), names.end(), n) != names.end(); }

bool same_shape(const Annotation& a, const Annotation& b) {
    return a.names == b.names && a.stacks == b.stacks;
}

namespace {

// Shared worker over abstract tokens ranked by age (lower rank = older).
template <typename Token, typename Rank>
int compare_by_rank(const std::vector<Token>& s1, const std::vector<Token>& s2, Rank rank) {
    std::set<Token> a(s1.begin(), s1.end()), b(s2.begin(), s2.end());
    std::optional<Token> oldest;
    bool in_first = false;
    auto consider = [&](const std::set<Token>& from, const std::set<Token>& other, bool first) {
        for (const auto& t : from)
            if (!other.count(t) && (!oldest || rank(t) < rank(*oldest))) {
                oldest = t;
                in_first = first;
            }
    };
    consider(a, b, true);
    consider(b, a, false);
    if (!oldest) return 0;
    return in_first ? -1 : 1;
}

template <typename Token, typename Rank>
std::vector<std::pair<Token, Token>> covers_of(const std::vector<Token>& names,
                                               const std::vector<std::vector<Token>>& stacks, Rank rank) {
    std::vector<std::pair<Token, Token>> out;
    auto on = [&](const std::vector<Token>& s, const Token& t) { return std::find(s.begin(), s.end(), t) != s.end(); };
    for (const auto& a : names) {
        std::optional<Token> best;
        for (const auto& b : names) {
            if (!(rank(a) < rank(b))) continue;
            bool covers = true;
            bool occurs = false;
            for (const auto& s : stacks) {
                if (!on(s, a)) continue;
                occurs = true;
                if (!on(s, b)) {
                    covers = false;
                    break;
                }
            }
            if (covers && occurs && (!best || rank(b) < rank(*best))) best = b;
        }
        if (best) out.emplace_back(a, *best);
    }
    return out;
}

template <typename Token>
void truncate_at(std::vector<std::vector<Token>>& stacks, const Token& a) {
    for (auto& s : stacks) {
        auto it = std::find(s.begin(), s.end(), a);
        if (it != s.end()) s.erase(it + 1, s.end());
    }
}

template <typename Token>
std::vector<Token> surviving(const std::vector<Token>& names, const std::vector<std::vector<Token>>& stacks) {
    std::vector<Token> out;
    for (const auto& n : names)
        for (const auto& s : stacks)
            if (std::find(s.begin(), s.end(), n) != s.end()) {
                out.push_back(n);
                break;
            }
    return out;
}

}  // namespace

Age stack_age_compare(const Stack& s1, const Stack& s2, const std::vector<Name>& names) {
    auto rank = [&](Name n) {
        auto it = std::find(names.begin(), names.end(), n);
        return it == names.end() ? std::numeric_limits<std::size_t>::max() : static_cast<std::size_t>(it - names.begin());
    };
    switch (compare_by_rank(s1, s2, rank)) {
        case -1: return Age::Older;
        case 1: return Age::Younger;
        default: return Age::Equal;
    }
}

Annotation init_annotation(std::size_t ob) {
    Annotation ann;
    for (std::size_t j = 0; j < ob; ++j) {
        Name n{j};
        ann.names.push_back(n);
        ann.stacks.push_back({n});
        ann.binding[n] = Binding{VarRef{0, j}, 0};
    }
    return ann;
}

std::vector<std::pair<Name, Name>> uniform_covers(const Annotation& ann) {
    auto rank = [&](Name n) { return ann.position_of(n); };
    return covers_of(ann.names, ann.stacks, rank);
}

Annotation reset_on(const Annotation& ann, Name a, Name cover) {
    if (!ann.has(a)) throw std::invalid_argument("reset_on: name " + label(a) + " absent");
    Annotation out = ann;
    truncate_at(out.stacks, a);
    out.names = surviving(out.names, out.stacks);
    Binding cb{};
    if (auto it = ann.binding.find(cover); it != ann.binding.end()) cb = it->second;
    out.resets.push_back({a, cover, cb});
    for (auto it = out.binding.begin(); it != out.binding.end();)
        it = out.has(it->first) ? std::next(it) : out.binding.erase(it);
    return out;
}

namespace {

// Tokens below kFresh are parent names; kFresh + j is the fresh name for
// target position j.
constexpr std::size_t kFresh = std::size_t{1} << 40;

}  // namespace

Annotation step(const Annotation& ann, const SizeChangeGraph& g, std::size_t depth) {
    if (g.src_arity() != ann.stacks.size())
        throw std::invalid_argument("step: graph has " + std::to_string(g.src_arity()) +
                                    " sources but annotation has " + std::to_string(ann.stacks.size()) + " stacks");
    using Tok = std::size_t;
    auto rank = [&](Tok t) { return t >= kFresh ? ann.names.size() + (t - kFresh) : ann.position_of(Name{t}); };

    std::vector<std::vector<Tok>> stacks(g.dst_arity());
    for (std::size_t tj = 0; tj < g.dst_arity(); ++tj) {
        std::optional<std::vector<Tok>> best;
        for (std::size_t sj = 0; sj < g.src_arity(); ++sj) {
            if (!g.has(sj, tj)) continue;
            std::vector<Tok> cand;
            for (auto n : ann.stacks[sj]) cand.push_back(n.index);
            if (g.strict(sj, tj)) cand.push_back(kFresh + tj);
            if (!best || compare_by_rank(cand, *best, rank) < 0) best = std::move(cand);
        }
        stacks[tj] = best ? std::move(*best) : std::vector<Tok>{kFresh + tj};
    }

    std::vector<Tok> all;
    for (auto n : ann.names) all.push_back(n.index);
    for (std::size_t tj = 0; tj < g.dst_arity(); ++tj) all.push_back(kFresh + tj);
    std::vector<Tok> names = surviving(all, stacks);
    auto raw = stacks;
    std::vector<std::pair<Tok, Tok>> resets;
    for (;;) {
        auto covers = covers_of(names, stacks, rank);
        if (covers.empty()) break;
        auto youngest = *std::max_element(covers.begin(), covers.end(),
                                          [&](const auto& x, const auto& y) { return rank(x.first) < rank(y.first); });
        truncate_at(stacks, youngest.first);
        names = surviving(names, stacks);
        resets.push_back(youngest);
    }

    // Label fresh tokens: survivors first, then the ones that only show up
    // in traces or as covers. None may reuse a name the parent held, even one
    // that has just been dropped, or a bud could match a sprout whose name
    // meant a different variable.
    std::map<Tok, Name> fresh;
    std::set<std::size_t> used;
    for (auto n : ann.names) used.insert(n.index);
    auto label_fresh = [&](Tok t) {
        std::size_t i = 0;
        while (used.count(i)) ++i;
        used.insert(i);
        fresh[t] = Name{i};
    };
    for (auto t : names)
        if (t >= kFresh) label_fresh(t);
    for (std::size_t tj = 0; tj < g.dst_arity(); ++tj) {
        Tok t = kFresh + tj;
        if (fresh.count(t)) continue;
        if (std::any_of(raw.begin(), raw.end(), [&](const auto& s) { return std::find(s.begin(), s.end(), t) != s.end(); }))
            label_fresh(t);
    }

    auto to_name = [&](Tok t) { return t >= kFresh ? fresh.at(t) : Name{t}; };
    auto binding_of = [&](Tok t) {
        return t >= kFresh ? Binding{VarRef{depth, t - kFresh}, depth} : ann.binding.at(Name{t});
    };
    auto convert = [&](const std::vector<std::vector<Tok>>& ss) {
        std::vector<Stack> out;
        for (const auto& s : ss) {
            Stack st;
            for (auto t : s) st.push_back(to_name(t));
            out.push_back(std::move(st));
        }
        return out;
    };

    Annotation out;
    for (auto t : names) {
        out.names.push_back(to_name(t));
        out.binding[to_name(t)] = binding_of(t);
    }
    out.stacks = convert(stacks);
    out.raw_stacks = convert(raw);
    for (const auto& [a, c] : resets) out.resets.push_back({to_name(a), to_name(c), binding_of(c)});
    return out;
}

std::string format_names(const std::vector<Name>& names) {
    std::string s;
    for (auto n : names) s += label(n);
    return s;
}

std::string format_stacks(const Annotation& ann) {
    const auto& shown = ann.raw_stacks.empty() ? ann.stacks : ann.raw_stacks;
    std::string out;
    for (std::size_t j = 0; j < shown.size(); ++j) {
        if (j) out += ",";
        out += "(";
        const auto& kept = ann.stacks[j];
        bool struck = false;
        for (std::size_t k = 0; k < shown[j].size(); ++k) {
            bool gone = k >= kept.size();
            if (gone && !struck) out += "{";
            struck = gone;
            out += label(shown[j][k]);
        }
        if (struck) out += "}";
        out += ")";
    }
    return out;
}

}  // namespace unravel
