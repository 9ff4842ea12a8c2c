#pragma once

// Slow, direct implementations used to cross-check the library. Each one
// follows the definition literally and touches only Graph accessors.

#include <sidorenko/graph.hh>
#include <sidorenko/numeric.hh>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle
{
    using sidorenko::Graph;
    using sidorenko::Vertex;

    // every map V(H) -> V(G), odometer order
    inline auto for_each_map(int k, int n, const std::function<void(const std::vector<Vertex> &)> & visit) -> void
    {
        if (n == 0 && k > 0)
            return;
        std::vector<Vertex> x(k, 0);
        for (bool more = true; more;) {
            visit(x);
            more = false;
            for (auto & v : x) {
                if (++v < n) {
                    more = true;
                    break;
                }
                v = 0;
            }
        }
    }

    inline auto hom_count(const Graph & h, const Graph & g) -> std::uint64_t
    {
        auto edges = h.edges();
        std::uint64_t count = 0;
        for_each_map(h.size(), g.size(), [&](const std::vector<Vertex> & x) {
            for (auto [u, v] : edges)
                if (! g.adjacent(x[u], x[v]))
                    return;
            ++count;
        });
        return count;
    }

    inline auto is_isomorphic(const Graph & a, const Graph & b) -> bool
    {
        if (a.size() != b.size() || a.edge_count() != b.edge_count())
            return false;
        std::vector<Vertex> perm(a.size());
        std::iota(perm.begin(), perm.end(), 0);
        auto edges = a.edges();
        do {
            if (std::all_of(edges.begin(), edges.end(), [&](auto e) { return b.adjacent(perm[e.first], perm[e.second]); }))
                return true;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return false;
    }

    // some proper 2-colouring by trying all of them
    inline auto is_bipartite(const Graph & g) -> bool
    {
        auto edges = g.edges();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.size()); ++mask)
            if (std::all_of(edges.begin(), edges.end(),
                    [&](auto e) { return ((mask >> e.first) & 1) != ((mask >> e.second) & 1); }))
                return true;
        return false;
    }

    // all proper 2-colourings as vertex sets of colour 0
    inline auto proper_colour_classes(const Graph & g) -> std::vector<std::vector<Vertex>>
    {
        std::vector<std::vector<Vertex>> out;
        auto edges = g.edges();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.size()); ++mask) {
            if (! std::all_of(edges.begin(), edges.end(),
                    [&](auto e) { return ((mask >> e.first) & 1) != ((mask >> e.second) & 1); }))
                continue;
            std::vector<Vertex> side;
            for (Vertex v = 0; v < g.size(); ++v)
                if (! ((mask >> v) & 1))
                    side.push_back(v);
            out.push_back(side);
        }
        return out;
    }

    // labelled trees on `labels` from every Prüfer sequence
    inline auto labelled_trees(const std::vector<Vertex> & labels) -> std::vector<std::vector<sidorenko::Edge>>
    {
        int k = static_cast<int>(labels.size());
        if (k <= 1)
            return {{}};
        if (k == 2)
            return {{{labels[0], labels[1]}}};
        std::vector<std::vector<sidorenko::Edge>> trees;
        std::vector<int> code(k - 2, 0);
        for (bool more = true; more;) {
            std::vector<int> degree(k, 1);
            for (auto c : code)
                ++degree[c];
            std::vector<sidorenko::Edge> tree;
            for (auto c : code) {
                int leaf = 0;
                while (degree[leaf] != 1)
                    ++leaf;
                tree.emplace_back(labels[leaf], labels[c]);
                --degree[leaf];
                --degree[c];
            }
            std::vector<int> last;
            for (int v = 0; v < k; ++v)
                if (degree[v] == 1)
                    last.push_back(v);
            tree.emplace_back(labels[last[0]], labels[last[1]]);
            trees.push_back(tree);
            more = false;
            for (auto & c : code) {
                if (++c < k) {
                    more = true;
                    break;
                }
                c = 0;
            }
        }
        return trees;
    }

    inline auto tree_path(const std::vector<sidorenko::Edge> & tree, Vertex from, Vertex to) -> std::vector<Vertex>
    {
        std::map<Vertex, Vertex> parent{{from, from}};
        std::vector<Vertex> queue{from};
        for (std::size_t i = 0; i < queue.size(); ++i)
            for (auto [a, b] : tree)
                for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}})
                    if (x == queue[i] && ! parent.contains(y)) {
                        parent[y] = x;
                        queue.push_back(y);
                    }
        std::vector<Vertex> path{to};
        while (path.back() != from)
            path.push_back(parent.at(path.back()));
        std::reverse(path.begin(), path.end());
        return path;
    }

    inline auto neighbour_set(const Graph & h, Vertex v) -> std::set<Vertex>
    {
        auto n = h.neighbours(v);
        return {n.begin(), n.end()};
    }

    // the pairwise path-intersection condition, as written
    inline auto satisfies_path_intersection(const Graph & h, const std::vector<sidorenko::Edge> & tree,
        const std::vector<Vertex> & side) -> bool
    {
        for (std::size_t i = 0; i < side.size(); ++i)
            for (std::size_t j = i + 1; j < side.size(); ++j) {
                auto path = tree_path(tree, side[i], side[j]);
                auto along = neighbour_set(h, path.front());
                for (auto w : path) {
                    std::set<Vertex> keep;
                    for (auto b : neighbour_set(h, w))
                        if (along.contains(b))
                            keep.insert(b);
                    along = keep;
                }
                std::set<Vertex> ends;
                auto nj = neighbour_set(h, side[j]);
                for (auto b : neighbour_set(h, side[i]))
                    if (nj.contains(b))
                        ends.insert(b);
                if (ends != along)
                    return false;
            }
        return true;
    }

    inline auto side_arrangeable(const Graph & h, const std::vector<Vertex> & side) -> bool
    {
        for (auto & tree : labelled_trees(side))
            if (satisfies_path_intersection(h, tree, side))
                return true;
        return false;
    }

    inline auto graph_arrangeable(const Graph & h) -> bool
    {
        for (auto & side : proper_colour_classes(h))
            if (side_arrangeable(h, side))
                return true;
        return false;
    }

    inline auto random_bipartite(int a, int b, int percent, std::uint64_t seed) -> Graph
    {
        std::mt19937_64 rng{seed};
        sidorenko::GraphBuilder builder{a + b};
        for (Vertex u = 0; u < a; ++u)
            for (Vertex v = 0; v < b; ++v)
                if (static_cast<int>(rng() % 100) < percent)
                    builder.add_edge(u, a + v);
        return std::move(builder).build();
    }

    inline auto random_graph(int n, int percent, std::uint64_t seed) -> Graph
    {
        std::mt19937_64 rng{seed};
        sidorenko::GraphBuilder builder{n};
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v)
                if (static_cast<int>(rng() % 100) < percent)
                    builder.add_edge(u, v);
        return std::move(builder).build();
    }

    inline auto read_lines(const std::string & path) -> std::vector<std::string>
    {
        std::ifstream in{path};
        std::vector<std::string> lines;
        for (std::string line; std::getline(in, line);)
            if (! line.empty())
                lines.push_back(line);
        return lines;
    }
}
