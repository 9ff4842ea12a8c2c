#include <sidorenko/arrangeability.hh>

#include <algorithm>
#include <numeric>
#include <tuple>

namespace sidorenko
{
    namespace
    {
        auto intersect(const std::vector<Vertex> & a, const std::vector<Vertex> & b) -> std::vector<Vertex>
        {
            std::vector<Vertex> out;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
            return out;
        }

        auto intersection_size(const std::vector<Vertex> & a, const std::vector<Vertex> & b) -> long
        {
            long count = 0;
            auto i = a.begin();
            auto j = b.begin();
            while (i != a.end() && j != b.end()) {
                if (*i < *j)
                    ++i;
                else if (*j < *i)
                    ++j;
                else {
                    ++count;
                    ++i;
                    ++j;
                }
            }
            return count;
        }

        struct DisjointSets
        {
            std::vector<int> parent;

            explicit DisjointSets(std::size_t n) :
                parent(n)
            {
                std::iota(parent.begin(), parent.end(), 0);
            }

            auto find(int x) -> int
            {
                while (parent[x] != x)
                    x = parent[x] = parent[parent[x]];
                return x;
            }

            auto unite(int x, int y) -> bool
            {
                x = find(x);
                y = find(y);
                if (x == y)
                    return false;
                parent[std::max(x, y)] = std::min(x, y);
                return true;
            }
        };

        // supports[b] = positions in fam whose neighbourhood contains b
        auto supports(const NeighbourhoodFamily & fam) -> std::map<Vertex, std::vector<std::size_t>>
        {
            std::map<Vertex, std::vector<std::size_t>> result;
            for (std::size_t i = 0; i < fam.size(); ++i)
                for (auto b : fam.lambda[i])
                    result[b].push_back(i);
            return result;
        }

        auto adjacency_by_position(const NeighbourhoodFamily & fam, const TreeEdges & tree)
            -> std::vector<std::vector<std::size_t>>
        {
            std::vector<std::vector<std::size_t>> adj(fam.size());
            for (auto [u, v] : tree) {
                auto pu = fam.position(u), pv = fam.position(v);
                adj[pu].push_back(pv);
                adj[pv].push_back(pu);
            }
            return adj;
        }
    }

    auto NeighbourhoodFamily::position(Vertex a) const -> std::size_t
    {
        auto it = std::find(side_a.begin(), side_a.end(), a);
        if (it == side_a.end())
            throw ArrangementError{"vertex " + std::to_string(a) + " is not in the family"};
        return static_cast<std::size_t>(it - side_a.begin());
    }

    auto NeighbourhoodFamily::neighbourhood(Vertex a) const -> const std::vector<Vertex> &
    {
        return lambda[position(a)];
    }

    auto neighbourhood_family(const Graph & h, std::span<const Vertex> side_a) -> NeighbourhoodFamily
    {
        NeighbourhoodFamily fam;
        fam.side_a.assign(side_a.begin(), side_a.end());
        for (std::size_t i = 0; i < side_a.size(); ++i) {
            if (side_a[i] < 0 || side_a[i] >= h.size())
                throw ArrangementError{"vertex " + std::to_string(side_a[i]) + " out of range"};
            for (std::size_t j = i + 1; j < side_a.size(); ++j)
                if (h.adjacent(side_a[i], side_a[j]) || side_a[i] == side_a[j])
                    throw ArrangementError{"side is not an independent set: " + std::to_string(side_a[i]) + ", " +
                        std::to_string(side_a[j])};
            auto nbrs = h.neighbours(side_a[i]);
            fam.lambda.emplace_back(nbrs.begin(), nbrs.end());
        }
        return fam;
    }

    auto restrict_family(const NeighbourhoodFamily & fam, std::span<const Vertex> subset) -> NeighbourhoodFamily
    {
        NeighbourhoodFamily result;
        for (auto a : subset) {
            result.side_a.push_back(a);
            result.lambda.push_back(fam.neighbourhood(a));
        }
        return result;
    }

    auto validate_spanning_tree(const NeighbourhoodFamily & fam, const TreeEdges & tree) -> void
    {
        if (fam.size() == 0) {
            if (! tree.empty())
                throw ArrangementError{"tree has edges but the side is empty"};
            return;
        }
        if (tree.size() != fam.size() - 1)
            throw ArrangementError{"tree has " + std::to_string(tree.size()) + " edges, a spanning tree on " +
                std::to_string(fam.size()) + " vertices needs " + std::to_string(fam.size() - 1)};
        DisjointSets sets{fam.size()};
        for (auto [u, v] : tree) {
            auto pu = fam.position(u), pv = fam.position(v);
            if (! sets.unite(static_cast<int>(pu), static_cast<int>(pv)))
                throw ArrangementError{"tree edge {" + std::to_string(u) + ", " + std::to_string(v) + "} closes a cycle"};
        }
    }

    auto tree_path(const NeighbourhoodFamily & fam, const TreeEdges & tree, Vertex u, Vertex v) -> std::vector<Vertex>
    {
        auto adj = adjacency_by_position(fam, tree);
        auto start = fam.position(u), goal = fam.position(v);
        std::vector<std::ptrdiff_t> parent(fam.size(), -1);
        std::vector<std::size_t> queue{start};
        parent[start] = static_cast<std::ptrdiff_t>(start);
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (auto w : adj[queue[head]])
                if (parent[w] == -1) {
                    parent[w] = static_cast<std::ptrdiff_t>(queue[head]);
                    queue.push_back(w);
                }
        if (parent[goal] == -1)
            throw ArrangementError{"no tree path between " + std::to_string(u) + " and " + std::to_string(v)};
        std::vector<Vertex> path;
        for (auto at = goal; at != start; at = static_cast<std::size_t>(parent[at]))
            path.push_back(fam.side_a[at]);
        path.push_back(u);
        std::reverse(path.begin(), path.end());
        return path;
    }

    auto check_arrangement(const NeighbourhoodFamily & fam, const TreeEdges & tree) -> ArrangementCheck
    {
        validate_spanning_tree(fam, tree);

        for (auto & [b, support] : supports(fam)) {
            // the support spans a subtree iff it induces |S_b| - 1 tree edges
            DisjointSets pieces{fam.size()};
            std::size_t internal = 0;
            for (auto [u, v] : tree) {
                auto pu = fam.position(u), pv = fam.position(v);
                if (std::binary_search(fam.lambda[pu].begin(), fam.lambda[pu].end(), b) &&
                    std::binary_search(fam.lambda[pv].begin(), fam.lambda[pv].end(), b)) {
                    ++internal;
                    pieces.unite(static_cast<int>(pu), static_cast<int>(pv));
                }
            }
            if (internal + 1 == support.size())
                continue;

            auto first = support.front();
            auto other = *std::find_if(support.begin(), support.end(),
                [&](std::size_t p) { return pieces.find(static_cast<int>(p)) != pieces.find(static_cast<int>(first)); });
            ArrangementViolation violation;
            violation.b = b;
            violation.u = fam.side_a[first];
            violation.v = fam.side_a[other];
            violation.path = tree_path(fam, tree, violation.u, violation.v);
            violation.endpoint_intersection = intersect(fam.lambda[first], fam.lambda[other]);
            violation.path_intersection = fam.neighbourhood(violation.path.front());
            for (auto w : violation.path)
                violation.path_intersection = intersect(violation.path_intersection, fam.neighbourhood(w));
            return {false, std::move(violation)};
        }
        return {true, std::nullopt};
    }

    auto tree_weight(const NeighbourhoodFamily & fam, const TreeEdges & tree) -> long
    {
        long total = 0;
        for (auto [u, v] : tree)
            total += intersection_size(fam.neighbourhood(u), fam.neighbourhood(v));
        return total;
    }

    auto junction_weight_bound(const NeighbourhoodFamily & fam) -> long
    {
        long total = 0;
        for (auto & [b, support] : supports(fam))
            total += static_cast<long>(support.size()) - 1;
        return total;
    }

    auto mwst_candidate_tree(const NeighbourhoodFamily & fam) -> TreeEdges
    {
        struct Candidate
        {
            long weight;
            Vertex u, v;
            std::size_t pu, pv;
        };
        std::vector<Candidate> candidates;
        for (std::size_t i = 0; i < fam.size(); ++i)
            for (std::size_t j = i + 1; j < fam.size(); ++j) {
                auto u = fam.side_a[i], v = fam.side_a[j];
                auto [pu, pv] = u < v ? std::pair{i, j} : std::pair{j, i};
                candidates.push_back({intersection_size(fam.lambda[i], fam.lambda[j]), std::min(u, v), std::max(u, v), pu, pv});
            }
        std::sort(candidates.begin(), candidates.end(), [](const Candidate & x, const Candidate & y) {
            return std::tuple{-x.weight, x.u, x.v} < std::tuple{-y.weight, y.u, y.v};
        });

        TreeEdges tree;
        DisjointSets sets{fam.size()};
        for (auto & c : candidates)
            if (sets.unite(static_cast<int>(c.pu), static_cast<int>(c.pv)))
                tree.emplace_back(c.u, c.v);
        return tree;
    }

    auto neighbor_covering_reduction(const NeighbourhoodFamily & fam) -> CoveringReduction
    {
        CoveringReduction result;
        auto contains = [&](std::size_t big, std::size_t small) {
            return std::includes(fam.lambda[big].begin(), fam.lambda[big].end(), fam.lambda[small].begin(),
                fam.lambda[small].end());
        };

        std::vector<std::size_t> representatives;
        for (std::size_t i = 0; i < fam.size(); ++i) {
            bool dominated = false;
            for (std::size_t j = 0; j < fam.size() && ! dominated; ++j) {
                if (j == i || ! contains(j, i))
                    continue;
                // strictly larger, or an equal neighbourhood that comes first
                dominated = fam.lambda[j].size() > fam.lambda[i].size() || j < i;
            }
            if (! dominated)
                representatives.push_back(i);
        }

        for (auto r : representatives)
            result.covering_set.push_back(fam.side_a[r]);
        for (std::size_t i = 0; i < fam.size(); ++i) {
            if (std::find(representatives.begin(), representatives.end(), i) != representatives.end())
                continue;
            for (auto r : representatives)
                if (contains(r, i)) {
                    result.attachment.emplace(fam.side_a[i], fam.side_a[r]);
                    break;
                }
        }
        result.reduced = restrict_family(fam, result.covering_set);
        return result;
    }

    auto extend_by_leaves(const TreeEdges & tree, const CoveringReduction & reduction) -> TreeEdges
    {
        auto result = tree;
        for (auto [a, u] : reduction.attachment)
            result.emplace_back(std::min(a, u), std::max(a, u));
        return result;
    }

    auto decide_side(const Graph & h, const Bipartition & bipartition) -> std::variant<TreeEdges, SideRefutation>
    {
        auto fam = neighbourhood_family(h, bipartition.side_a);
        auto reduction = neighbor_covering_reduction(fam);
        auto candidate = mwst_candidate_tree(reduction.reduced);
        auto check = check_arrangement(reduction.reduced, candidate);
        if (check.arrangeable) {
            auto full = extend_by_leaves(candidate, reduction);
            if (! check_arrangement(fam, full).arrangeable)
                throw ArrangementError{"internal: leaf extension broke the arrangement"};
            return full;
        }
        return SideRefutation{bipartition, reduction.covering_set, candidate, tree_weight(reduction.reduced, candidate),
            junction_weight_bound(reduction.reduced), std::move(*check.violation)};
    }

    auto decide_tree_arrangeable(const Graph & h) -> ArrangementCertificate
    {
        auto parts = bipartitions(h);
        if (auto odd = std::get_if<OddCycle>(&parts))
            throw ArrangementError{"graph is not bipartite (odd cycle of length " + std::to_string(odd->cycle.size()) +
                ")"};
        auto & structure = std::get<BipartiteStructure>(parts);

        // side choices only matter for components with an edge
        std::vector<std::size_t> free_components;
        for (std::size_t c = 0; c < structure.components().size(); ++c)
            if (! structure.components()[c].side_1.empty())
                free_components.push_back(c);
        if (free_components.size() >= 63)
            throw ArrangementError{"too many components to enumerate side assignments"};

        ArrangementCertificate certificate;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_components.size()); ++mask) {
            std::uint64_t index = 0;
            for (std::size_t k = 0; k < free_components.size(); ++k)
                if ((mask >> k) & 1U)
                    index |= std::uint64_t{1} << free_components[k];
            auto bipartition = structure.assignment(index);
            auto outcome = decide_side(h, bipartition);
            if (auto tree = std::get_if<TreeEdges>(&outcome)) {
                certificate.arrangeable = true;
                certificate.bipartition = bipartition;
                certificate.tree = std::move(*tree);
                certificate.refutations.clear();
                return certificate;
            }
            certificate.refutations.push_back(std::move(std::get<SideRefutation>(outcome)));
        }
        return certificate;
    }
}
