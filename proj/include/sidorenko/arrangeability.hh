#pragma once

#include <sidorenko/graph.hh>

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

/// Tree-arrangeability of bipartite graphs.
///
/// A side A of a bipartite graph H is T-arrangeable for a tree T on A when
/// every pair u, v in A satisfies  N(u) ∩ N(v) = ∩_{w on the T-path u..v} N(w).
/// Equivalently, for every b on the other side the set S_b = {a : b ∈ N(a)}
/// spans a subtree of T, i.e. T is a junction tree for {N(a) ∪ {a}}. The
/// decider searches that junction tree with a maximum-weight spanning tree
/// (weights |N(u) ∩ N(v)|), which succeeds iff one exists.
///
/// The decider answers arrangeability only. It is a sufficient condition for
/// Sidorenko's property, not a necessary one: C_6 is not arrangeable.
namespace sidorenko
{
    class ArrangementError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Neighbourhoods of one independent side. lambda[i] is the sorted
    /// neighbourhood of side_a[i].
    struct NeighbourhoodFamily
    {
        std::vector<Vertex> side_a;
        std::vector<std::vector<Vertex>> lambda;

        auto size() const -> std::size_t { return side_a.size(); }
        auto position(Vertex a) const -> std::size_t;
        auto neighbourhood(Vertex a) const -> const std::vector<Vertex> &;
    };

    /// Throws ArrangementError if side_a is not an independent set of h.
    auto neighbourhood_family(const Graph & h, std::span<const Vertex> side_a) -> NeighbourhoodFamily;

    /// Sub-family restricted to `subset` (which must be a subset of fam.side_a).
    auto restrict_family(const NeighbourhoodFamily & fam, std::span<const Vertex> subset) -> NeighbourhoodFamily;

    /// Tree on A as H-vertex edges.
    using TreeEdges = std::vector<Edge>;

    /// Vertices of the tree path from u to v, both ends included.
    auto tree_path(const NeighbourhoodFamily & fam, const TreeEdges & tree, Vertex u, Vertex v) -> std::vector<Vertex>;

    /// b's support is disconnected in the tree; `path` runs between two of its
    /// pieces, so the intersection along it misses b while N(u) ∩ N(v) holds it.
    struct ArrangementViolation
    {
        Vertex b;
        Vertex u;
        Vertex v;
        std::vector<Vertex> path;
        std::vector<Vertex> endpoint_intersection;
        std::vector<Vertex> path_intersection;
    };

    struct ArrangementCheck
    {
        bool arrangeable;
        std::optional<ArrangementViolation> violation;
    };

    /// Throws ArrangementError unless `tree` is a spanning tree on fam.side_a.
    auto validate_spanning_tree(const NeighbourhoodFamily & fam, const TreeEdges & tree) -> void;

    auto check_arrangement(const NeighbourhoodFamily & fam, const TreeEdges & tree) -> ArrangementCheck;

    /// Sum over edges of |N(u) ∩ N(v)|.
    auto tree_weight(const NeighbourhoodFamily & fam, const TreeEdges & tree) -> long;

    /// Sum over b with non-empty support of (|S_b| - 1): the weight every
    /// junction tree attains and no spanning tree exceeds.
    auto junction_weight_bound(const NeighbourhoodFamily & fam) -> long;

    /// Kruskal on the complete graph over A with weights |N(u) ∩ N(v)|. Edges
    /// sorted by weight descending, then (u, v) ascending.
    auto mwst_candidate_tree(const NeighbourhoodFamily & fam) -> TreeEdges;

    struct CoveringReduction
    {
        /// One representative (the first in side order) per maximal neighbourhood.
        std::vector<Vertex> covering_set;
        /// a -> u(a) with N(a) ⊆ N(u(a)) for every a outside the covering set.
        std::map<Vertex, Vertex> attachment;
        NeighbourhoodFamily reduced;
    };

    auto neighbor_covering_reduction(const NeighbourhoodFamily & fam) -> CoveringReduction;

    /// Adds every non-covering vertex as a leaf on its attachment.
    auto extend_by_leaves(const TreeEdges & tree, const CoveringReduction & reduction) -> TreeEdges;

    /// Why one side assignment failed. Any spanning tree on the covering set
    /// weighs at most `tree_weight`, which is below `weight_bound`, so none is a
    /// junction tree.
    struct SideRefutation
    {
        Bipartition bipartition;
        std::vector<Vertex> covering_set;
        TreeEdges candidate_tree;
        long tree_weight;
        long weight_bound;
        ArrangementViolation violation;
    };

    struct ArrangementCertificate
    {
        bool arrangeable = false;
        /// Present iff arrangeable: the side playing A and a witness tree on it.
        std::optional<Bipartition> bipartition;
        TreeEdges tree;
        /// Present iff not arrangeable: one entry per side assignment tried.
        std::vector<SideRefutation> refutations;
    };

    /// Tries every side assignment (isolated vertices stay on side A, where
    /// they become leaves). Throws ArrangementError if h is not bipartite.
    auto decide_tree_arrangeable(const Graph & h) -> ArrangementCertificate;

    /// Decision for one fixed side A.
    auto decide_side(const Graph & h, const Bipartition & bipartition) -> std::variant<TreeEdges, SideRefutation>;
}
