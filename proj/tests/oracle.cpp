#include "oracle.hpp"

#include <map>
#include <set>
#include <tuple>

namespace oracle {

namespace {

// rows x cols, 0 none, 1 >=, 2 >
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<int> v;
    int at(std::size_t i, std::size_t j) const { return v[i * cols + j]; }
    auto key() const { return std::tie(rows, cols, v); }
    bool operator<(const Mat& o) const { return key() < o.key(); }
    bool operator==(const Mat& o) const { return key() == o.key(); }
};

Mat from_graph(const SizeChangeGraph& g) {
    Mat m{g.src_arity(), g.dst_arity(), std::vector<int>(g.src_arity() * g.dst_arity(), 0)};
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) m.v[i * m.cols + j] = g.cell(i, j);
    return m;
}

Mat times(const Mat& a, const Mat& b) {
    Mat c{a.rows, b.cols, std::vector<int>(a.rows * b.cols, 0)};
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            if (!a.at(i, k)) continue;
            for (std::size_t j = 0; j < b.cols; ++j) {
                if (!b.at(k, j)) continue;
                int l = std::max(a.at(i, k), b.at(k, j));
                auto& cell = c.v[i * c.cols + j];
                cell = std::max(cell, l);
            }
        }
    return c;
}

// Some power of a square matrix is idempotent; check that one.
bool power_progresses(const Mat& g) {
    std::vector<Mat> powers{g};
    for (;;) {
        auto next = times(powers.back(), g);
        for (const auto& p : powers)
            if (p == next) goto cycle;
        powers.push_back(next);
    }
cycle:
    for (const auto& p : powers) {
        if (!(times(p, p) == p)) continue;
        for (std::size_t i = 0; i < p.rows; ++i)
            if (p.at(i, i) == 2) return true;
        return false;
    }
    return true;  // unreachable: the power sequence always contains an idempotent
}

std::map<std::string, const Call*> by_id(const CallSystem& cs) {
    std::map<std::string, const Call*> out;
    for (const auto& c : cs.calls) out[c.id] = &c;
    return out;
}

}  // namespace

bool terminates(const CallSystem& cs) {
    using Triple = std::tuple<std::string, std::string, Mat>;
    std::set<Triple> all;
    std::set<Triple> level;
    for (const auto& c : cs.calls) level.insert({c.dom, c.codom, from_graph(c.graph)});
    all = level;
    while (!level.empty()) {
        std::set<Triple> next;
        for (const auto& [s, d, g] : level)
            for (const auto& c : cs.calls) {
                if (c.dom != d) continue;
                Triple t{s, c.codom, times(g, from_graph(c.graph))};
                if (!all.count(t)) next.insert(t);
            }
        for (const auto& t : next) all.insert(t);
        level = std::move(next);
    }
    for (const auto& [s, d, g] : all)
        if (s == d && !power_progresses(g)) return false;
    return true;
}

bool refutes(const CallSystem& cs, const std::vector<std::string>& prefix, const std::vector<std::string>& cycle) {
    auto calls = by_id(cs);
    if (cycle.empty()) return false;
    std::vector<std::string> path = prefix;
    path.insert(path.end(), cycle.begin(), cycle.end());
    for (const auto& id : path)
        if (!calls.count(id)) return false;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        if (calls[path[i]]->codom != calls[path[i + 1]]->dom) return false;
    if (calls[cycle.back()]->codom != calls[cycle.front()]->dom) return false;
    Mat g = from_graph(calls[cycle.front()]->graph);
    for (std::size_t i = 1; i < cycle.size(); ++i) g = times(g, from_graph(calls[cycle[i]]->graph));
    return !power_progresses(g);
}

SizeChangeGraph random_graph(std::mt19937& rng, std::size_t m, std::size_t n, int strict_percent, int weak_percent) {
    std::uniform_int_distribution<int> pct(0, 99);
    SizeChangeGraph g(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            int r = pct(rng);
            if (r < strict_percent) g.add(i, j, EdgeLabel::Progressing);
            else if (r < strict_percent + weak_percent) g.add(i, j, EdgeLabel::Preserving);
        }
    return g;
}

CallSystem random_system(std::mt19937& rng, const Shape& shape) {
    auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
    CallSystem cs;
    auto nf = pick(1, shape.max_functions);
    for (std::size_t i = 0; i < nf; ++i)
        cs.functions.push_back({"f" + std::to_string(i), std::vector<SortId>(pick(1, shape.max_arity), kDefaultSort)});
    auto nc = pick(0, shape.max_calls);
    for (std::size_t k = 0; k < nc; ++k) {
        const auto& a = cs.functions[pick(0, nf - 1)];
        const auto& b = cs.functions[pick(0, nf - 1)];
        cs.calls.push_back({"c" + std::to_string(k), a.id, b.id,
                            random_graph(rng, a.arity(), b.arity(), shape.strict_percent, shape.weak_percent)});
    }
    return cs;
}

std::vector<CallSystem> sound_systems(std::mt19937& rng, std::size_t count, const Shape& shape) {
    std::vector<CallSystem> out;
    while (out.size() < count) {
        auto cs = random_system(rng, shape);
        if (cs.calls.empty() || !terminates(cs)) continue;
        // a self-loop or a two-function cycle somewhere
        bool cyclic = false;
        for (const auto& c : cs.calls) {
            if (c.dom == c.codom) cyclic = true;
            for (const auto& d : cs.calls)
                if (c.codom == d.dom && d.codom == c.dom) cyclic = true;
        }
        if (cyclic) out.push_back(std::move(cs));
    }
    return out;
}

}  // namespace oracle
