#pragma once

#include <sidorenko/numeric.hh>

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace sidorenko
{
    using Vertex = int;
    using Edge = std::pair<Vertex, Vertex>;

    class GraphError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Finite simple graph on vertices 0..n-1. Immutable once built; use
    /// GraphBuilder (or the edge-list constructor) to make one.
    class Graph
    {
    public:
        Graph() = default;

        /// Self-loops and out-of-range endpoints throw; duplicate edges collapse.
        Graph(int n, std::span<const Edge> edges);
        Graph(int n, std::initializer_list<Edge> edges);

        auto size() const -> int { return _n; }
        auto edge_count() const -> std::size_t { return _edge_count; }
        auto empty() const -> bool { return _n == 0; }

        auto neighbours(Vertex v) const -> std::span<const Vertex> { return _adj[v]; }
        auto degree(Vertex v) const -> int { return static_cast<int>(_adj[v].size()); }
        auto adjacent(Vertex u, Vertex v) const -> bool
        {
            return _matrix[static_cast<std::size_t>(u) * _n + v];
        }

        /// Edges with u < v, in lexicographic order.
        auto edges() const -> std::vector<Edge>;

        auto max_degree() const -> int;

        friend auto operator==(const Graph &, const Graph &) -> bool;

    private:
        friend class GraphBuilder;

        int _n = 0;
        std::size_t _edge_count = 0;
        std::vector<std::vector<Vertex>> _adj;
        std::vector<bool> _matrix;
    };

    class GraphBuilder
    {
    public:
        explicit GraphBuilder(int n);

        auto add_edge(Vertex u, Vertex v) -> GraphBuilder &;
        auto build() && -> Graph;

    private:
        Graph _g;
    };

    /// One side assignment A | B. Both sides sorted.
    struct Bipartition
    {
        std::vector<Vertex> side_a;
        std::vector<Vertex> side_b;

        friend auto operator==(const Bipartition &, const Bipartition &) -> bool = default;
    };

    /// The 2-colouring of one connected component; side_0 holds the smallest
    /// vertex of the component, which makes the colouring canonical.
    struct ComponentColouring
    {
        std::vector<Vertex> side_0;
        std::vector<Vertex> side_1;
    };

    /// Per-component colourings of a bipartite graph plus the enumeration of the
    /// 2^c global assignments. Assignment index bit i swaps component i.
    class BipartiteStructure
    {
    public:
        explicit BipartiteStructure(std::vector<ComponentColouring> components) :
            _components(std::move(components))
        {
        }

        auto components() const -> const std::vector<ComponentColouring> & { return _components; }
        auto assignment_count() const -> std::uint64_t;
        auto assignment(std::uint64_t index) const -> Bipartition;

    private:
        std::vector<ComponentColouring> _components;
    };

    /// Vertices of an odd closed walk v0 v1 ... v_{k-1} (v_{k-1} ~ v0), k odd.
    struct OddCycle
    {
        std::vector<Vertex> cycle;
    };

    using BipartitionResult = std::variant<BipartiteStructure, OddCycle>;

    /// Thrown by graph6 decoding; offset is the byte position of the problem.
    class ParseError : public GraphError
    {
    public:
        ParseError(const std::string & what, std::size_t offset) :
            GraphError(what + " at byte " + std::to_string(offset)),
            _offset(offset)
        {
        }

        auto offset() const -> std::size_t { return _offset; }

    private:
        std::size_t _offset;
    };

    /// Decodes one graph6 line. An optional ">>graph6<<" header and a trailing
    /// newline are accepted; anything else outside the encoding is an error.
    auto parse_graph6(std::string_view text) -> Graph;

    /// Encodes with the 1-byte size form for n <= 62, the 4-byte form up to
    /// 258047 and the 8-byte form beyond.
    auto write_graph6(const Graph & g) -> std::string;

    /// G(n, p) driven by std::mt19937_64 seeded with `seed`. Pairs (i, j), i < j,
    /// are visited in lexicographic order and each consumes one raw 64-bit draw
    /// x; the pair is an edge iff x * q < p_num * 2^64 for p = p_num / q.
    auto random_gnp(int n, const Rational & p, std::uint64_t seed) -> Graph;

    auto bipartitions(const Graph & g) -> BipartitionResult;
    auto is_bipartite(const Graph & g) -> bool;

    auto connected_components(const Graph & g) -> std::vector<std::vector<Vertex>>;
    auto is_connected(const Graph & g) -> bool;

    /// Induced subgraph; vertex i of the result is vertices[i].
    auto induced_subgraph(const Graph & g, std::span<const Vertex> vertices) -> Graph;

    auto isolated_vertices(const Graph & g) -> std::vector<Vertex>;

    /// Induced subgraph on non-isolated vertices, relabelled in ascending order.
    auto remove_isolated(const Graph & g) -> Graph;

    /// Vertex v of g becomes perm[v].
    auto relabel(const Graph & g, std::span<const Vertex> perm) -> Graph;

    auto disjoint_union(const Graph & g1, const Graph & g2) -> Graph;

    /// Backtracking search with degree pruning; fine up to a dozen or so vertices.
    auto is_isomorphic(const Graph & g1, const Graph & g2) -> bool;

    /// Connected and acyclic; K_1 counts as a tree, the empty graph does not.
    auto is_tree(const Graph & g) -> bool;
}
