#pragma once

#include <sidorenko/arrangeability.hh>
#include <sidorenko/graph.hh>
#include <sidorenko/homomorphism.hh>
#include <sidorenko/numeric.hh>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Exact evaluation of the normalised functionals behind the tree-arrangeable
// case, on instances small enough to enumerate every map V(H) -> V(G).
//
// For u on side A, with x a map V(H) -> V(G), ρ(y) = deg(y)/n and ρ0 = 2|E|/n²:
//
//   f_u(x)  = (1[x_u ~ x(N(u))] + ε ρ(x_u)^|N(u)|) / (ρ0 ρ(x_u)^(|N(u)|-1))
//
// and, for a tree T on A rooted at r, with u_r the parent of u,
//
//   E[f_u | Γ(u;T_r)] = E_y[1[y ~ x(S)] / (ρ0 ρ(y)^(|S|-1))] + ε,  S = N(u) ∩ N(u_r)
//   E[f_r | Γ(r;T_r)] = 1 + ε
//   f_T_r(x) = Π_a f_a(x) / E[f_a | Γ(a;T_r)](x).
//
// Under T-arrangeability f_T_r does not depend on r, E[f_T_r] = 1, and
// E[g f_T_r] (1 + ε) = E[g f_u] for every g determined by (x_u, x(N(u))).
// (f_a, a ∈ A) is then a Markov random field along T; nothing here models that
// beyond these identities.
namespace sidorenko
{
    class ProofError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    inline constexpr Vertex unassigned = -1;

    /// Partial or full map V(H) -> V(G), indexed by H-vertex; `unassigned` marks gaps.
    using Assignment = std::vector<Vertex>;

    auto rho(const Graph & g, Vertex v) -> Rational;
    auto rho0(const Graph & g) -> Rational;

    struct RootedArrangement
    {
        NeighbourhoodFamily fam;
        TreeEdges tree;
        Vertex root;
        std::map<Vertex, Vertex> parent; // u -> u_r for u != root
        bool arrangeable;                // whether tree passes check_arrangement
    };

    /// Throws ArrangementError if `tree` is not a spanning tree on fam.side_a or
    /// `root` is not in it. Non-arrangeable trees are accepted and flagged.
    auto make_rooted_arrangement(const NeighbourhoodFamily & fam, const TreeEdges & tree, Vertex root)
        -> RootedArrangement;

    /// Re-roots the same tree.
    auto reroot(const RootedArrangement & ra, Vertex root) -> RootedArrangement;

    /// Requires x defined on u and N(u), no isolated vertex in g, eps > 0.
    auto f_u(const NeighbourhoodFamily & fam, const Graph & g, Vertex u, const Assignment & x, const Rational & eps)
        -> Rational;

    /// Closed form of E[f_u | Γ(u;T_r)]; reads x only on N(u) ∩ N(u_r).
    auto cond_expectation_f(const RootedArrangement & ra, const Graph & g, Vertex u, const Assignment & x,
        const Rational & eps) -> Rational;

    auto f_tree(const RootedArrangement & ra, const Graph & g, const Assignment & x, const Rational & eps) -> Rational;

    struct IdentityResult
    {
        std::string name;
        bool passed = true;
        std::string detail;
        std::optional<Assignment> witness;
    };

    struct Section2Report
    {
        std::vector<IdentityResult> identities;

        auto all_passed() const -> bool;
    };

    struct EnumerationLimits
    {
        std::uint64_t max_assignments = 2'000'000;
    };

    /// Full enumeration of V(H) -> V(G) checking, exactly:
    ///   "f-normalisation"     E[f_u] = 1 + ε for every u in A
    ///   "root-invariance"     f_T_r(x) = f_T_s(x) for all x and roots r, s
    ///   "tree-normalisation"  E[f_T_r] = 1 for every root r
    ///   "observable-identity" E[g f_T_r] (1 + ε) = E[g f_u] for every root r,
    ///                         every u and every indicator g of a fixed
    ///                         (x_u, x(N(u))) pattern
    /// `tree` must span `side_a`, which must be an independent side of h.
    auto check_section2_identities(const Graph & h, const std::vector<Vertex> & side_a, const TreeEdges & tree,
        const Graph & g, const Rational & eps, const EnumerationLimits & limits = {}) -> Section2Report;
}
