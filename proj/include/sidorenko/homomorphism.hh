#pragma once

#include <sidorenko/graph.hh>
#include <sidorenko/numeric.hh>

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace sidorenko
{
    class HomomorphismError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// A mapping V(H) -> V(G), indexed by H-vertex.
    using Mapping = std::vector<Vertex>;

    struct BruteForceLimits
    {
        int max_pattern_vertices = 10;
        int max_target_vertices = 8;
    };

    struct CountOptions
    {
        /// Worker threads; the total never depends on this value.
        unsigned workers = 1;
    };

    /// Order in which the enumerators assign H-vertices: BFS from the smallest
    /// unvisited vertex of each component.
    auto bfs_order(const Graph & h) -> std::vector<Vertex>;

    /// Visits every homomorphism H -> G. Visiting order is lexicographic in the
    /// images along bfs_order(h). No size guard; the callback sees each mapping
    /// once.
    auto for_each_homomorphism(const Graph & h, const Graph & g, const std::function<void(const Mapping &)> & visit)
        -> void;

    auto is_homomorphism(const Graph & h, const Graph & g, std::span<const Vertex> mapping) -> bool;

    /// Pruned enumeration. Throws HomomorphismError beyond `limits` (use the DP).
    auto count_hom_bruteforce(const Graph & h, const Graph & g, const CountOptions & options = {},
        const BruteForceLimits & limits = {}) -> BigCount;

    struct TreeDecomposition
    {
        std::vector<std::vector<Vertex>> bags; // each sorted
        std::vector<std::pair<int, int>> tree; // edges between bag indices

        auto width() const -> int;
    };

    /// Heuristic decomposition from a min-fill elimination ordering (ties by
    /// min degree, then smallest index). Bags contained in a neighbouring bag
    /// are contracted away.
    auto tree_decomposition(const Graph & h) -> TreeDecomposition;

    /// Throws HomomorphismError naming the first violated condition.
    auto validate_tree_decomposition(const Graph & h, const TreeDecomposition & td) -> void;

    /// Exact |Hom(H, G)| by dynamic programming over the nice form of `td`.
    auto count_hom_dp(const Graph & h, const Graph & g, const TreeDecomposition & td) -> BigCount;

    /// Convenience: DP over the heuristic decomposition.
    auto count_hom(const Graph & h, const Graph & g) -> BigCount;

    /// t_H(G) = |Hom(H,G)| / |V(G)|^|V(H)|.
    auto density(const Graph & h, const Graph & g) -> Rational;

    /// Symmetric non-negative rational matrix: a step function on [0,1]^2 with
    /// n equal steps.
    class WeightMatrix
    {
    public:
        /// Throws HomomorphismError unless square, symmetric and non-negative.
        explicit WeightMatrix(std::vector<std::vector<Rational>> entries);

        static auto adjacency(const Graph & g) -> WeightMatrix;
        static auto constant(int n, const Rational & c) -> WeightMatrix;

        auto size() const -> int { return static_cast<int>(_entries.size()); }
        auto operator()(int i, int j) const -> const Rational & { return _entries[i][j]; }

    private:
        std::vector<std::vector<Rational>> _entries;
    };

    /// n^-|V(H)| times the sum over all maps V(H) -> [n] of the product of
    /// w-entries along the edges of H.
    auto weighted_density(const Graph & h, const WeightMatrix & w) -> Rational;
}
