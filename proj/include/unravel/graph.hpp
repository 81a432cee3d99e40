#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace unravel {

// Progressing sorts before Preserving: when both labels could apply to a
// pair, the smaller one wins.
enum class EdgeLabel : std::uint8_t { Progressing, Preserving };

struct Edge {
    std::size_t src;
    std::size_t dst;
    EdgeLabel label;
    friend bool operator==(const Edge&, const Edge&) = default;
};

// Dense bipartite graph src positions -> dst positions. At most one edge per
// pair; adding a weaker label over a stronger one is a no-op.
class SizeChangeGraph {
public:
    SizeChangeGraph() = default;
    SizeChangeGraph(std::size_t src_arity, std::size_t dst_arity);
    SizeChangeGraph(std::size_t src_arity, std::size_t dst_arity, const std::vector<Edge>& edges);

    static SizeChangeGraph identity(std::size_t n);

    std::size_t src_arity() const { return src_arity_; }
    std::size_t dst_arity() const { return dst_arity_; }

    void add(std::size_t src, std::size_t dst, EdgeLabel label);
    bool has(std::size_t src, std::size_t dst) const { return cell(src, dst) != 0; }
    bool strict(std::size_t src, std::size_t dst) const { return cell(src, dst) == 2; }
    // 0 no edge, 1 preserving, 2 progressing
    std::uint8_t cell(std::size_t src, std::size_t dst) const { return cells_[src * dst_arity_ + dst]; }

    // Sorted by (src, dst).
    std::vector<Edge> edges() const;
    bool empty() const;

    bool is_idempotent() const;
    bool has_progressing_self_edge() const;

    friend bool operator==(const SizeChangeGraph&, const SizeChangeGraph&) = default;
    friend bool operator<(const SizeChangeGraph& a, const SizeChangeGraph& b) {
        if (a.src_arity_ != b.src_arity_) return a.src_arity_ < b.src_arity_;
        if (a.dst_arity_ != b.dst_arity_) return a.dst_arity_ < b.dst_arity_;
        return a.cells_ < b.cells_;
    }

private:
    std::size_t src_arity_ = 0;
    std::size_t dst_arity_ = 0;
    std::vector<std::uint8_t> cells_;
};

// Throws std::invalid_argument when g.dst_arity() != h.src_arity().
SizeChangeGraph compose(const SizeChangeGraph& g, const SizeChangeGraph& h);

// "{0>1, 1>=0}" style, edges in (src, dst) order.
std::string to_string(const SizeChangeGraph& g);

}  // namespace unravel
