#include <sidorenko/verify.hh>

#include <sidorenko/arrangeability.hh>
#include <sidorenko/constructions.hh>
#include <sidorenko/homomorphism.hh>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <istream>
#include <map>
#include <mutex>
#include <thread>

namespace sidorenko
{
    auto sidorenko_check(const Graph & h, const Graph & g) -> InequalityVerdict
    {
        if (! is_bipartite(h))
            throw VerifyError{"H is not bipartite; the inequality fails for any G containing an edge"};
        if (h.edge_count() == 0)
            throw VerifyError{"H has no edges"};
        if (g.size() == 0)
            throw VerifyError{"G is empty"};

        InequalityVerdict verdict;
        auto reduced = remove_isolated(h);
        verdict.removed_isolated = h.size() - reduced.size();

        auto m = static_cast<long>(reduced.edge_count());
        auto k = static_cast<long>(reduced.size());
        BigCount n = g.size();
        BigCount edge_ends = static_cast<unsigned long>(2 * g.edge_count());

        verdict.hom_count = count_hom(reduced, g);
        if (2 * m >= k) {
            verdict.lhs = verdict.hom_count * pow(n, static_cast<unsigned long>(2 * m - k));
            verdict.rhs = pow(edge_ends, static_cast<unsigned long>(m));
        }
        else {
            verdict.lhs = verdict.hom_count;
            verdict.rhs = pow(edge_ends, static_cast<unsigned long>(m)) * pow(n, static_cast<unsigned long>(k - 2 * m));
        }
        verdict.holds = verdict.lhs >= verdict.rhs;

        Rational t_h{verdict.hom_count, pow(n, static_cast<unsigned long>(k))};
        t_h.canonicalize();
        Rational t_k2{edge_ends, n * n};
        t_k2.canonicalize();
        verdict.margin = t_h - pow(t_k2, static_cast<unsigned long>(m));
        return verdict;
    }

    auto corpus_from_graph6(std::istream & in, const std::string & prefix) -> std::vector<CorpusItem>
    {
        std::vector<CorpusItem> items;
        std::string line;
        for (std::size_t number = 1; std::getline(in, line); ++number) {
            if (! line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.empty())
                continue;
            CorpusItem item{prefix + ":" + std::to_string(number), std::nullopt, std::nullopt};
            try {
                item.graph = parse_graph6(line);
            }
            catch (const ParseError & e) {
                item.error = "line " + std::to_string(number) + ": " + e.what();
            }
            items.push_back(std::move(item));
        }
        return items;
    }

    auto corpus_from_random(int n, const Rational & p, std::uint64_t seed, std::size_t count)
        -> std::vector<CorpusItem>
    {
        std::vector<CorpusItem> items;
        for (std::size_t i = 0; i < count; ++i) {
            auto s = seed + i;
            items.push_back({"gnp:" + std::to_string(n) + ":" + to_fraction_string(p) + ":" + std::to_string(s),
                random_gnp(n, p, s), std::nullopt});
        }
        return items;
    }

    namespace
    {
        auto check_pair(const CorpusItem & h, const CorpusItem & g) -> CorpusRecord
        {
            CorpusRecord record;
            record.h_id = h.id;
            record.g_id = g.id;
            if (h.error || g.error) {
                record.error = h.error ? *h.error : *g.error;
                return record;
            }
            record.h_graph6 = write_graph6(*h.graph);
            record.g_graph6 = write_graph6(*g.graph);
            auto start = std::chrono::steady_clock::now();
            try {
                record.verdict = sidorenko_check(*h.graph, *g.graph);
            }
            catch (const std::exception & e) {
                record.error = e.what();
            }
            record.count_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            return record;
        }
    }

    auto corpus_run(const std::vector<CorpusItem> & hs, const std::vector<CorpusItem> & gs,
        const CorpusOptions & options, const std::function<void(const CorpusRecord &)> & emit) -> CorpusSummary
    {
        auto total = hs.size() * gs.size();
        std::vector<std::optional<CorpusRecord>> slots(total);
        CorpusSummary summary;
        std::mutex lock;
        std::size_t next_emit = 0;

        // called with `lock` held
        auto flush = [&] {
            for (; next_emit < total && slots[next_emit]; ++next_emit) {
                auto & record = *slots[next_emit];
                ++summary.pairs;
                if (record.error)
                    ++summary.errors;
                else if (record.verdict->holds)
                    ++summary.holds;
                else {
                    ++summary.violations;
                    summary.violating_pairs.emplace_back(record.h_id, record.g_id);
                }
                if (record.verdict && (! summary.min_margin || record.verdict->margin < *summary.min_margin)) {
                    summary.min_margin = record.verdict->margin;
                    summary.min_margin_h_id = record.h_id;
                    summary.min_margin_g_id = record.g_id;
                }
                if (emit)
                    emit(record);
                slots[next_emit].reset();
            }
        };

        std::atomic<std::size_t> next{0};
        auto work = [&] {
            for (std::size_t i; (i = next.fetch_add(1)) < total;) {
                auto record = check_pair(hs[i / gs.size()], gs[i % gs.size()]);
                std::lock_guard guard{lock};
                slots[i] = std::move(record);
                flush();
            }
        };

        unsigned workers = std::max(1U, options.workers);
        if (workers == 1 || total < 2)
            work();
        else {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < workers; ++t)
                pool.emplace_back(work);
        }
        return summary;
    }

    auto to_string(ClassificationStatus status) -> std::string
    {
        switch (status) {
        case ClassificationStatus::tree_arrangeable: return "tree-arrangeable";
        case ClassificationStatus::closure_derived: return "closure-derived";
        case ClassificationStatus::unknown: return "unknown";
        }
        return "unknown";
    }

    auto nonisomorphic_trees(int n) -> std::vector<Graph>
    {
        if (n < 1)
            return {};
        if (n <= 2)
            return {named::path(n)};

        // decode every Prüfer sequence, keep one per isomorphism class
        std::vector<Graph> result;
        std::vector<int> code(n - 2, 0);
        for (bool more = true; more;) {
            std::vector<int> degree(n, 1);
            for (auto c : code)
                ++degree[c];
            GraphBuilder builder{n};
            for (auto c : code) {
                int leaf = static_cast<int>(std::find(degree.begin(), degree.end(), 1) - degree.begin());
                builder.add_edge(leaf, c);
                --degree[leaf];
                --degree[c];
            }
            std::vector<int> last;
            for (int v = 0; v < n; ++v)
                if (degree[v] == 1)
                    last.push_back(v);
            builder.add_edge(last[0], last[1]);
            auto tree = std::move(builder).build();
            if (std::none_of(result.begin(), result.end(), [&](const Graph & t) { return is_isomorphic(t, tree); }))
                result.push_back(std::move(tree));

            more = false;
            for (auto & c : code) {
                if (++c < n) {
                    more = true;
                    break;
                }
                c = 0;
            }
        }
        return result;
    }

    namespace
    {
        auto known_family(const Graph & h) -> std::optional<std::string>
        {
            int n = h.size();
            if (n >= 4 && n % 2 == 0 && is_isomorphic(h, named::cycle(n)))
                return "even-cycle";
            if (n >= 1 && (n & (n - 1)) == 0) {
                int d = 0;
                while ((1 << d) < n)
                    ++d;
                if (is_isomorphic(h, named::hypercube(d)))
                    return "hypercube";
            }
            return std::nullopt;
        }

        // calls visit on each k-subset of {1..n-1} joined with vertex 0, until visit returns true
        template <typename Visit>
        auto subsets_with_zero(int n, int k, Visit && visit) -> bool
        {
            std::vector<Vertex> subset{0};
            auto recurse = [&](auto & self, Vertex from) -> bool {
                if (static_cast<int>(subset.size()) == k)
                    return visit(subset);
                for (Vertex v = from; v < n; ++v) {
                    subset.push_back(v);
                    if (self(self, v + 1))
                        return true;
                    subset.pop_back();
                }
                return false;
            };
            return recurse(recurse, 1);
        }

        auto classify_reduced(const Graph & h, const ClassifyOptions & options) -> ClassificationRecord
        {
            ClassificationRecord record;
            record.graph6 = write_graph6(h);

            if (decide_tree_arrangeable(h).arrangeable) {
                record.status = ClassificationStatus::tree_arrangeable;
                record.derivation.push_back({"tree-arrangeable", record.graph6, "", ""});
                return record;
            }

            if (is_connected(h))
                if (auto family = known_family(h)) {
                    record.status = ClassificationStatus::closure_derived;
                    record.derivation.push_back({"known-family:" + *family, record.graph6, "", ""});
                    return record;
                }

            int n = h.size();
            auto edges = static_cast<long>(h.edge_count());
            for (int tau = 2; tau <= options.max_tree_factor; ++tau) {
                if (n % tau != 0 || n / tau < 1)
                    continue;
                int k = n / tau;
                long rest = edges - static_cast<long>(tau - 1) * k;
                if (rest < 0 || rest % tau != 0)
                    continue;
                long factor_edges = rest / tau;

                for (auto & tree : nonisomorphic_trees(tau)) {
                    std::vector<Graph> tried;
                    std::optional<ClassificationRecord> found;
                    subsets_with_zero(n, k, [&](const std::vector<Vertex> & subset) {
                        auto candidate = induced_subgraph(h, subset);
                        if (static_cast<long>(candidate.edge_count()) != factor_edges)
                            return false;
                        for (auto & seen : tried)
                            if (is_isomorphic(seen, candidate))
                                return false;
                        tried.push_back(candidate);
                        if (! is_isomorphic(cartesian_product(tree, candidate).graph, h))
                            return false;
                        auto inner = remove_isolated(candidate);
                        auto sub = inner.edge_count() == 0 ? std::optional<ClassificationRecord>{}
                                                           : classify_reduced(inner, options);
                        if (sub && sub->status == ClassificationStatus::unknown)
                            return false;
                        ClassificationRecord result;
                        result.graph6 = write_graph6(h);
                        result.status = ClassificationStatus::closure_derived;
                        result.derivation.push_back(
                            {"cartesian-tree-factor", result.graph6, write_graph6(tree), write_graph6(candidate)});
                        if (sub)
                            result.derivation.insert(result.derivation.end(), sub->derivation.begin(),
                                sub->derivation.end());
                        found = std::move(result);
                        return true;
                    });
                    if (found)
                        return *found;
                }
            }

            record.status = ClassificationStatus::unknown;
            return record;
        }

        // consumes steps starting at `at`; returns false if any fails to re-check
        auto replay_from(const std::vector<DerivationStep> & steps, std::size_t & at) -> bool
        {
            if (at >= steps.size())
                return false;
            const auto & step = steps[at++];
            auto h = parse_graph6(step.graph6);
            if (step.rule == "tree-arrangeable")
                return decide_tree_arrangeable(h).arrangeable;
            if (step.rule.starts_with("known-family:"))
                return known_family(h) == step.rule.substr(std::string_view{"known-family:"}.size());
            if (step.rule == "cartesian-tree-factor") {
                auto tree = parse_graph6(step.tree_graph6);
                auto factor = parse_graph6(step.factor_graph6);
                if (! is_tree(tree) || ! is_isomorphic(cartesian_product(tree, factor).graph, h))
                    return false;
                auto inner = remove_isolated(factor);
                if (inner.edge_count() == 0)
                    return true;
                if (at >= steps.size() || steps[at].graph6 != write_graph6(inner))
                    return false;
                return replay_from(steps, at);
            }
            return false;
        }
    }

    auto classify(const Graph & h, const ClassifyOptions & options) -> ClassificationRecord
    {
        if (! is_bipartite(h))
            throw VerifyError{"H is not bipartite"};
        auto reduced = remove_isolated(h);
        auto record = classify_reduced(reduced, options);
        record.removed_isolated = h.size() - reduced.size();
        return record;
    }

    auto replay(const ClassificationRecord & record) -> bool
    {
        if (record.status == ClassificationStatus::unknown)
            return record.derivation.empty();
        if (record.derivation.empty() || record.derivation.front().graph6 != record.graph6)
            return false;
        auto expected = record.derivation.front().rule == "tree-arrangeable" ? ClassificationStatus::tree_arrangeable
                                                                            : ClassificationStatus::closure_derived;
        if (expected != record.status)
            return false;
        std::size_t at = 0;
        return replay_from(record.derivation, at) && at == record.derivation.size();
    }
}
