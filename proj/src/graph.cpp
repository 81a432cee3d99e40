#include "unravel/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace unravel {

SizeChangeGraph::SizeChangeGraph(std::size_t src_arity, std::size_t dst_arity)
    : src_arity_(src_arity), dst_arity_(dst_arity), cells_(src_arity * dst_arity, 0) {}

SizeChangeGraph::SizeChangeGraph(std::size_t src_arity, std::size_t dst_arity,
                                 const std::vector<Edge>& edges)
    : SizeChangeGraph(src_arity, dst_arity) {
    for (const auto& e : edges) add(e.src, e.dst, e.label);
}

SizeChangeGraph SizeChangeGraph::identity(std::size_t n) {
    SizeChangeGraph g(n, n);
    for (std::size_t j = 0; j < n; ++j) g.add(j, j, EdgeLabel::Preserving);
    return g;
}

void SizeChangeGraph::add(std::size_t src, std::size_t dst, EdgeLabel label) {
    if (src >= src_arity_ || dst >= dst_arity_)
        throw std::out_of_range("edge endpoint out of range");
    auto& c = cells_[src * dst_arity_ + dst];
    c = std::max<std::uint8_t>(c, label == EdgeLabel::Progressing ? 2 : 1);
}

std::vector<Edge> SizeChangeGraph::edges() const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < src_arity_; ++i)
        for (std::size_t j = 0; j < dst_arity_; ++j)
            if (auto c = cell(i, j))
                out.push_back({i, j, c == 2 ? EdgeLabel::Progressing : EdgeLabel::Preserving});
    return out;
}

bool SizeChangeGraph::empty() const {
    return std::all_of(cells_.begin(), cells_.end(), [](auto c) { return c == 0; });
}

bool SizeChangeGraph::is_idempotent() const {
    return src_arity_ == dst_arity_ && compose(*this, *this) == *this;
}

bool SizeChangeGraph::has_progressing_self_edge() const {
    for (std::size_t j = 0; j < std::min(src_arity_, dst_arity_); ++j)
        if (strict(j, j)) return true;
    return false;
}

SizeChangeGraph compose(const SizeChangeGraph& g, const SizeChangeGraph& h) {
    if (g.dst_arity() != h.src_arity())
        throw std::invalid_argument("compose: arity mismatch (" + std::to_string(g.dst_arity()) +
                                    " vs " + std::to_string(h.src_arity()) + ")");
    SizeChangeGraph out(g.src_arity(), h.dst_arity());
    for (std::size_t i = 0; i < g.src_arity(); ++i)
        for (std::size_t k = 0; k < h.dst_arity(); ++k) {
            std::uint8_t best = 0;
            for (std::size_t j = 0; j < g.dst_arity() && best < 2; ++j) {
                auto a = g.cell(i, j), b = h.cell(j, k);
                if (a && b) best = std::max<std::uint8_t>(best, std::max(a, b));
            }
            if (best) out.add(i, k, best == 2 ? EdgeLabel::Progressing : EdgeLabel::Preserving);
        }
    return out;
}

std::string to_string(const SizeChangeGraph& g) {
    std::string s = "{";
    bool first = true;
    for (const auto& e : g.edges()) {
        if (!first) s += ", ";
        first = false;
        s += std::to_string(e.src) + (e.label == EdgeLabel::Progressing ? ">" : ">=") +
             std::to_string(e.dst);
    }
    return s + "}";
}

}  // namespace unravel
