#pragma once

#include <sidorenko/graph.hh>
#include <sidorenko/numeric.hh>

#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sidorenko
{
    class VerifyError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Outcome of t_H(G) >= t_K2(G)^|E(H)|, decided on integers:
    /// lhs = |Hom(H,G)| n^(2|E(H)| - |V(H)|), rhs = (2|E(G)|)^|E(H)| once isolated
    /// vertices of H are dropped (then 2|E(H)| >= |V(H)|).
    struct InequalityVerdict
    {
        bool holds = false;
        BigCount lhs;
        BigCount rhs;
        /// t_H(G) - t_K2(G)^|E(H)|
        Rational margin;
        BigCount hom_count;
        /// isolated vertices removed from H before counting
        int removed_isolated = 0;
    };

    /// Throws VerifyError for non-bipartite or edgeless H, or empty G.
    auto sidorenko_check(const Graph & h, const Graph & g) -> InequalityVerdict;

    /// One graph of a corpus: either a graph or the reason it could not be read.
    struct CorpusItem
    {
        std::string id;
        std::optional<Graph> graph;
        std::optional<std::string> error;
    };

    /// One item per non-empty line; ids are "<prefix>:<line number>". Parse
    /// failures become error items and reading continues.
    auto corpus_from_graph6(std::istream & in, const std::string & prefix) -> std::vector<CorpusItem>;

    /// `count` graphs G(n, p); graph i uses seed `seed + i` and has id
    /// "gnp:<n>:<p>:<seed + i>".
    auto corpus_from_random(int n, const Rational & p, std::uint64_t seed, std::size_t count)
        -> std::vector<CorpusItem>;

    struct CorpusRecord
    {
        std::string h_id;
        std::string g_id;
        std::string h_graph6;
        std::string g_graph6;
        std::optional<InequalityVerdict> verdict;
        std::optional<std::string> error;
        double count_ms = 0;
    };

    struct CorpusSummary
    {
        std::size_t pairs = 0;
        std::size_t holds = 0;
        std::size_t violations = 0;
        std::size_t errors = 0;
        std::optional<Rational> min_margin;
        std::string min_margin_h_id;
        std::string min_margin_g_id;
        std::vector<std::pair<std::string, std::string>> violating_pairs;
    };

    struct CorpusOptions
    {
        unsigned workers = 1;
    };

    /// Checks every (H, G) pair, H-major. Records reach `emit` in input order
    /// whatever the worker count.
    auto corpus_run(const std::vector<CorpusItem> & hs, const std::vector<CorpusItem> & gs,
        const CorpusOptions & options, const std::function<void(const CorpusRecord &)> & emit) -> CorpusSummary;

    enum class ClassificationStatus
    {
        tree_arrangeable,
        closure_derived,
        unknown
    };

    auto to_string(ClassificationStatus status) -> std::string;

    /// One rule application. `graph6` is the graph the step certifies; for
    /// "cartesian-tree-factor" it equals T □ factor, and the factor's own
    /// derivation follows immediately.
    struct DerivationStep
    {
        std::string rule; // "tree-arrangeable", "known-family:<name>", "cartesian-tree-factor"
        std::string graph6;
        std::string tree_graph6;
        std::string factor_graph6;
    };

    struct ClassificationRecord
    {
        std::string graph6;
        ClassificationStatus status = ClassificationStatus::unknown;
        std::vector<DerivationStep> derivation;
        int removed_isolated = 0;
    };

    struct ClassifyOptions
    {
        int max_tree_factor = 6;
    };

    /// What this toolkit can certify: tree-arrangeable; otherwise closure-derived
    /// when H is an even cycle or hypercube, or H ≅ T □ H' for a tree T on at most
    /// max_tree_factor vertices and a certified H'; otherwise unknown. Isolated
    /// vertices are dropped first. Throws VerifyError for non-bipartite H.
    auto classify(const Graph & h, const ClassifyOptions & options = {}) -> ClassificationRecord;

    /// Re-applies every step of the derivation; true iff they all check out
    /// and reproduce the recorded status.
    auto replay(const ClassificationRecord & record) -> bool;

    /// Pairwise non-isomorphic trees on n vertices.
    auto nonisomorphic_trees(int n) -> std::vector<Graph>;
}
