#pragma once

#include <sidorenko/graph.hh>
#include <sidorenko/homomorphism.hh>
#include <sidorenko/numeric.hh>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sidorenko
{
    class ConstructionError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// A graph on V(left) x V(right) with vertex (w, v) at index w * |V(right)| + v.
    struct PairIndexedGraph
    {
        Graph graph;
        int left_size = 0;
        int right_size = 0;

        auto index(Vertex w, Vertex v) const -> Vertex { return w * right_size + v; }
        auto pair(Vertex idx) const -> std::pair<Vertex, Vertex> { return {idx / right_size, idx % right_size}; }
    };

    /// H1 □ H2: (u1,u2) ~ (v1,v2) iff u1 ~ v1 and u2 = v2, or u1 = v1 and u2 ~ v2.
    auto cartesian_product(const Graph & h1, const Graph & h2) -> PairIndexedGraph;

    /// G1 ⊗ G2: (u1,u2) ~ (v1,v2) iff u1 ~ v1 and u2 ~ v2. Same index formula.
    auto tensor_product(const Graph & g1, const Graph & g2) -> PairIndexedGraph;

    /// ψ_T(G): vertices are Hom(T, G) sorted lexicographically by the image
    /// tuple (image of T-vertex 0 first); h1 ~ h2 iff h1(w) ~ h2(w) for every w.
    struct HomIndexedGraph
    {
        Graph graph;
        std::vector<Mapping> homs;

        /// Index of `hom` in `homs`, or -1.
        auto index_of(const Mapping & hom) const -> Vertex;
    };

    struct PsiLimits
    {
        std::size_t max_vertices = 20000;
    };

    auto psi(const Graph & t, const Graph & g, const PsiLimits & limits = {}) -> HomIndexedGraph;

    /// Hom(T □ H, G) -> Hom(H, ψ_T(G)): vertex v of H goes to w ↦ hom(w, v).
    /// `hom` is indexed by the pair index of cartesian_product(t, h).
    auto lift_hom(const Graph & t, const Graph & h, const Graph & g, const HomIndexedGraph & psi_t_g,
        const Mapping & hom) -> Mapping;

    /// Inverse of lift_hom: (w, v) ↦ hom(v)(w).
    auto project_hom(const Graph & t, const Graph & h, const Graph & g, const HomIndexedGraph & psi_t_g,
        const Mapping & hom) -> Mapping;

    /// Bipartite double: copies v and n + v; i ~ n + j iff i = j or i ~ j in H.
    auto phi(const Graph & h) -> Graph;

    /// Output of degree splitting: the split graph, each new vertex's original
    /// vertex, and the average degree Δ = 2|E| / |V| used for the split.
    struct DegreeSplit
    {
        Graph graph;
        std::vector<Vertex> projection;
        Rational delta;
    };

    /// Vertices processed in ascending order; v becomes t = min(deg v, ⌈deg v / Δ⌉)
    /// copies, and its current neighbours, ordered by (original vertex, copy
    /// number), are dealt out in consecutive runs of ⌈deg/t⌉ or ⌊deg/t⌋, larger
    /// runs first. Isolated vertices disappear. New vertices are numbered in
    /// creation order, so the copies of v are contiguous. Edge count is kept,
    /// |V'| <= 2|V|, and projection is a homomorphism G' -> G that is injective
    /// on the edges over each edge of G.
    auto degree_split(const Graph & g) -> DegreeSplit;

    namespace named
    {
        auto path(int n) -> Graph;
        auto cycle(int n) -> Graph;
        /// K_{1,k}, centre 0.
        auto star(int k) -> Graph;
        auto complete(int n) -> Graph;
        /// K_{m,n}: side 0..m-1 against m..m+n-1.
        auto complete_bipartite(int m, int n) -> Graph;
        /// P_{d1} □ ... □ P_{dk}, flattened with the first coordinate most significant.
        auto grid(const std::vector<int> & dims) -> Graph;
        /// K_2 □ ... □ K_2 (d factors); vertex bits are the coordinates.
        auto hypercube(int d) -> Graph;
        /// K_{5,5} on a_i = i and b_i = 5 + i minus the Hamilton cycle
        /// a0 b0 a1 b1 a2 b2 a3 b3 a4 b4 a0, so a_i ~ b_j iff j ∉ {i, i - 1 mod 5}.
        auto k55_minus_c10() -> Graph;
    }

    /// Keys accepted by named_graph (stable CLI strings).
    auto named_graph_keys() -> const std::vector<std::string> &;

    /// Catalogue lookup, e.g. ("grid", {3, 4}). Throws ConstructionError on an
    /// unknown key or bad parameters.
    auto named_graph(std::string_view key, const std::vector<int> & params) -> Graph;
}
