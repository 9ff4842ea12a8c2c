#include <sidorenko/graph.hh>

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>

namespace sidorenko
{
    Graph::Graph(int n, std::span<const Edge> edges)
    {
        GraphBuilder builder{n};
        for (auto [u, v] : edges)
            builder.add_edge(u, v);
        *this = std::move(builder).build();
    }

    Graph::Graph(int n, std::initializer_list<Edge> edges) :
        Graph(n, std::span<const Edge>{edges.begin(), edges.size()})
    {
    }

    auto Graph::edges() const -> std::vector<Edge>
    {
        std::vector<Edge> result;
        result.reserve(_edge_count);
        for (Vertex u = 0; u < _n; ++u)
            for (Vertex v : _adj[u])
                if (u < v)
                    result.emplace_back(u, v);
        return result;
    }

    auto Graph::max_degree() const -> int
    {
        int result = 0;
        for (Vertex v = 0; v < _n; ++v)
            result = std::max(result, degree(v));
        return result;
    }

    auto operator==(const Graph & a, const Graph & b) -> bool
    {
        return a._n == b._n && a._adj == b._adj;
    }

    GraphBuilder::GraphBuilder(int n)
    {
        if (n < 0)
            throw GraphError{"negative vertex count"};
        _g._n = n;
        _g._adj.resize(n);
        _g._matrix.assign(static_cast<std::size_t>(n) * n, false);
    }

    auto GraphBuilder::add_edge(Vertex u, Vertex v) -> GraphBuilder &
    {
        if (u < 0 || v < 0 || u >= _g._n || v >= _g._n)
            throw GraphError{"edge (" + std::to_string(u) + ", " + std::to_string(v) + ") out of range for n = " +
                std::to_string(_g._n)};
        if (u == v)
            throw GraphError{"self-loop at vertex " + std::to_string(u)};
        auto idx = static_cast<std::size_t>(u) * _g._n + v;
        if (! _g._matrix[idx]) {
            _g._matrix[idx] = true;
            _g._matrix[static_cast<std::size_t>(v) * _g._n + u] = true;
            _g._adj[u].push_back(v);
            _g._adj[v].push_back(u);
            ++_g._edge_count;
        }
        return *this;
    }

    auto GraphBuilder::build() && -> Graph
    {
        for (auto & list : _g._adj)
            std::sort(list.begin(), list.end());
        return std::move(_g);
    }

    auto BipartiteStructure::assignment_count() const -> std::uint64_t
    {
        if (_components.size() >= 64)
            throw GraphError{"too many components to enumerate side assignments"};
        return std::uint64_t{1} << _components.size();
    }

    auto BipartiteStructure::assignment(std::uint64_t index) const -> Bipartition
    {
        Bipartition result;
        for (std::size_t c = 0; c < _components.size(); ++c) {
            bool swap = (index >> c) & 1U;
            auto & a = swap ? _components[c].side_1 : _components[c].side_0;
            auto & b = swap ? _components[c].side_0 : _components[c].side_1;
            result.side_a.insert(result.side_a.end(), a.begin(), a.end());
            result.side_b.insert(result.side_b.end(), b.begin(), b.end());
        }
        std::sort(result.side_a.begin(), result.side_a.end());
        std::sort(result.side_b.begin(), result.side_b.end());
        return result;
    }

    namespace
    {
        constexpr int graph6_bias = 63;

        auto decode_size(std::string_view s, std::size_t & pos) -> long
        {
            auto need = [&](std::size_t count) {
                if (pos + count > s.size())
                    throw ParseError{"truncated graph6 size field", s.size()};
            };
            auto digit = [&](std::size_t at) -> long {
                auto c = static_cast<unsigned char>(s[at]);
                if (c < 63 || c > 126)
                    throw ParseError{"byte " + std::to_string(c) + " outside graph6 range 63..126", at};
                return c - graph6_bias;
            };

            need(1);
            if (static_cast<unsigned char>(s[pos]) != 126)
                return digit(pos++);

            need(2);
            if (static_cast<unsigned char>(s[pos + 1]) != 126) {
                need(4);
                long n = 0;
                for (std::size_t k = 1; k <= 3; ++k)
                    n = (n << 6) | digit(pos + k);
                if (n < 63)
                    throw ParseError{"non-canonical 4-byte size field", pos};
                pos += 4;
                return n;
            }

            need(8);
            long n = 0;
            for (std::size_t k = 2; k <= 7; ++k)
                n = (n << 6) | digit(pos + k);
            if (n < 258048)
                throw ParseError{"non-canonical 8-byte size field", pos};
            pos += 8;
            return n;
        }

        auto encode_size(long n) -> std::string
        {
            std::string out;
            if (n <= 62)
                out.push_back(static_cast<char>(n + graph6_bias));
            else if (n <= 258047) {
                out.push_back(126);
                for (int shift = 12; shift >= 0; shift -= 6)
                    out.push_back(static_cast<char>(((n >> shift) & 63) + graph6_bias));
            }
            else {
                out.append(2, static_cast<char>(126));
                for (int shift = 30; shift >= 0; shift -= 6)
                    out.push_back(static_cast<char>(((n >> shift) & 63) + graph6_bias));
            }
            return out;
        }
    }

    auto parse_graph6(std::string_view text) -> Graph
    {
        std::size_t pos = 0;
        constexpr std::string_view header = ">>graph6<<";
        if (text.starts_with(header))
            pos = header.size();

        auto end = text.size();
        if (end > pos && text[end - 1] == '\n')
            --end;
        if (end > pos && text[end - 1] == '\r')
            --end;
        auto body = text.substr(0, end);

        if (pos >= body.size())
            throw ParseError{"empty graph6 string", pos};

        long n = decode_size(body, pos);
        if (n > 100000)
            throw ParseError{"graph6 vertex count " + std::to_string(n) + " too large", 0};

        std::uint64_t bits = static_cast<std::uint64_t>(n) * (n - 1) / 2;
        std::size_t data_bytes = (bits + 5) / 6;
        if (body.size() - pos < data_bytes)
            throw ParseError{"truncated graph6 adjacency data, expected " + std::to_string(data_bytes) + " bytes",
                body.size()};
        if (body.size() - pos > data_bytes)
            throw ParseError{"trailing garbage after graph6 adjacency data", pos + data_bytes};

        for (std::size_t b = 0; b < data_bytes; ++b) {
            auto c = static_cast<unsigned char>(body[pos + b]);
            if (c < 63 || c > 126)
                throw ParseError{"byte " + std::to_string(c) + " outside graph6 range 63..126", pos + b};
        }
        auto bit_at = [&](std::uint64_t k) -> bool {
            unsigned chunk = static_cast<unsigned char>(body[pos + k / 6]) - graph6_bias;
            return (chunk >> (5 - k % 6)) & 1U;
        };
        for (std::uint64_t k = bits; k < data_bytes * 6; ++k)
            if (bit_at(k))
                throw ParseError{"non-zero padding bits", pos + k / 6};

        // upper triangle, column by column: (0,1), (0,2), (1,2), (0,3), ...
        GraphBuilder builder{static_cast<int>(n)};
        std::uint64_t k = 0;
        for (Vertex j = 1; j < n; ++j)
            for (Vertex i = 0; i < j; ++i, ++k)
                if (bit_at(k))
                    builder.add_edge(i, j);
        return std::move(builder).build();
    }

    auto write_graph6(const Graph & g) -> std::string
    {
        if (g.size() > 100000)
            throw GraphError{"graph too large for graph6 output"};
        std::string out = encode_size(g.size());
        unsigned chunk = 0;
        int filled = 0;
        for (Vertex j = 1; j < g.size(); ++j)
            for (Vertex i = 0; i < j; ++i) {
                chunk = (chunk << 1) | (g.adjacent(i, j) ? 1U : 0U);
                if (++filled == 6) {
                    out.push_back(static_cast<char>(chunk + graph6_bias));
                    chunk = 0;
                    filled = 0;
                }
            }
        if (filled > 0)
            out.push_back(static_cast<char>((chunk << (6 - filled)) + graph6_bias));
        return out;
    }

    auto random_gnp(int n, const Rational & p, std::uint64_t seed) -> Graph
    {
        if (p < 0 || p > 1)
            throw GraphError{"edge probability " + to_fraction_string(p) + " outside [0, 1]"};
        if (n < 0)
            throw GraphError{"negative vertex count"};

        // edge iff draw * den < num * 2^64
        mpz_class threshold = p.get_num();
        threshold <<= 64;
        const mpz_class & den = p.get_den();

        std::mt19937_64 engine{seed};
        GraphBuilder builder{n};
        mpz_class draw;
        for (Vertex i = 0; i < n; ++i)
            for (Vertex j = i + 1; j < n; ++j) {
                std::uint64_t x = engine();
                mpz_import(draw.get_mpz_t(), 1, 1, sizeof(x), 0, 0, &x);
                if (draw * den < threshold)
                    builder.add_edge(i, j);
            }
        return std::move(builder).build();
    }

    auto bipartitions(const Graph & g) -> BipartitionResult
    {
        std::vector<int> colour(g.size(), -1), parent(g.size(), -1), depth(g.size(), 0);
        std::vector<ComponentColouring> components;

        for (Vertex start = 0; start < g.size(); ++start) {
            if (colour[start] != -1)
                continue;
            ComponentColouring comp;
            colour[start] = 0;
            std::queue<Vertex> queue;
            queue.push(start);
            while (! queue.empty()) {
                auto v = queue.front();
                queue.pop();
                (colour[v] == 0 ? comp.side_0 : comp.side_1).push_back(v);
                for (auto w : g.neighbours(v)) {
                    if (colour[w] == -1) {
                        colour[w] = 1 - colour[v];
                        parent[w] = v;
                        depth[w] = depth[v] + 1;
                        queue.push(w);
                    }
                    else if (colour[w] == colour[v]) {
                        // climb both BFS-tree paths to their meeting point
                        std::vector<Vertex> left, right;
                        Vertex a = v, b = w;
                        while (depth[a] > depth[b]) {
                            left.push_back(a);
                            a = parent[a];
                        }
                        while (depth[b] > depth[a]) {
                            right.push_back(b);
                            b = parent[b];
                        }
                        while (a != b) {
                            left.push_back(a);
                            right.push_back(b);
                            a = parent[a];
                            b = parent[b];
                        }
                        left.push_back(a);
                        left.insert(left.end(), right.rbegin(), right.rend());
                        return OddCycle{std::move(left)};
                    }
                }
            }
            std::sort(comp.side_0.begin(), comp.side_0.end());
            std::sort(comp.side_1.begin(), comp.side_1.end());
            components.push_back(std::move(comp));
        }
        return BipartiteStructure{std::move(components)};
    }

    auto is_bipartite(const Graph & g) -> bool
    {
        return std::holds_alternative<BipartiteStructure>(bipartitions(g));
    }

    auto connected_components(const Graph & g) -> std::vector<std::vector<Vertex>>
    {
        std::vector<std::vector<Vertex>> result;
        std::vector<bool> seen(g.size(), false);
        for (Vertex start = 0; start < g.size(); ++start) {
            if (seen[start])
                continue;
            std::vector<Vertex> comp{start};
            seen[start] = true;
            for (std::size_t i = 0; i < comp.size(); ++i)
                for (auto w : g.neighbours(comp[i]))
                    if (! seen[w]) {
                        seen[w] = true;
                        comp.push_back(w);
                    }
            std::sort(comp.begin(), comp.end());
            result.push_back(std::move(comp));
        }
        return result;
    }

    auto is_connected(const Graph & g) -> bool
    {
        return connected_components(g).size() <= 1;
    }

    auto induced_subgraph(const Graph & g, std::span<const Vertex> vertices) -> Graph
    {
        GraphBuilder builder{static_cast<int>(vertices.size())};
        for (std::size_t i = 0; i < vertices.size(); ++i)
            for (std::size_t j = i + 1; j < vertices.size(); ++j)
                if (g.adjacent(vertices[i], vertices[j]))
                    builder.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
        return std::move(builder).build();
    }

    auto isolated_vertices(const Graph & g) -> std::vector<Vertex>
    {
        std::vector<Vertex> result;
        for (Vertex v = 0; v < g.size(); ++v)
            if (g.degree(v) == 0)
                result.push_back(v);
        return result;
    }

    auto remove_isolated(const Graph & g) -> Graph
    {
        std::vector<Vertex> keep;
        for (Vertex v = 0; v < g.size(); ++v)
            if (g.degree(v) > 0)
                keep.push_back(v);
        return induced_subgraph(g, keep);
    }

    auto relabel(const Graph & g, std::span<const Vertex> perm) -> Graph
    {
        if (perm.size() != static_cast<std::size_t>(g.size()))
            throw GraphError{"permutation size mismatch"};
        GraphBuilder builder{g.size()};
        for (auto [u, v] : g.edges())
            builder.add_edge(perm[u], perm[v]);
        return std::move(builder).build();
    }

    auto disjoint_union(const Graph & g1, const Graph & g2) -> Graph
    {
        GraphBuilder builder{g1.size() + g2.size()};
        for (auto [u, v] : g1.edges())
            builder.add_edge(u, v);
        for (auto [u, v] : g2.edges())
            builder.add_edge(u + g1.size(), v + g1.size());
        return std::move(builder).build();
    }

    namespace
    {
        // degree followed by the sorted neighbour degrees
        auto vertex_signature(const Graph & g, Vertex v) -> std::vector<int>
        {
            std::vector<int> sig;
            sig.reserve(g.degree(v) + 1);
            for (auto w : g.neighbours(v))
                sig.push_back(g.degree(w));
            std::sort(sig.begin(), sig.end());
            sig.insert(sig.begin(), g.degree(v));
            return sig;
        }

        struct IsomorphismSearch
        {
            const Graph & g1;
            const Graph & g2;
            std::vector<Vertex> order;
            std::vector<std::vector<Vertex>> candidates;
            std::vector<Vertex> map1;
            std::vector<bool> used2;

            auto extend(std::size_t depth) -> bool
            {
                if (depth == order.size())
                    return true;
                auto v = order[depth];
                for (auto w : candidates[v]) {
                    if (used2[w])
                        continue;
                    bool ok = true;
                    for (std::size_t k = 0; k < depth && ok; ++k) {
                        auto u = order[k];
                        ok = g1.adjacent(v, u) == g2.adjacent(w, map1[u]);
                    }
                    if (! ok)
                        continue;
                    map1[v] = w;
                    used2[w] = true;
                    if (extend(depth + 1))
                        return true;
                    used2[w] = false;
                    map1[v] = -1;
                }
                return false;
            }
        };
    }

    auto is_isomorphic(const Graph & g1, const Graph & g2) -> bool
    {
        if (g1.size() != g2.size() || g1.edge_count() != g2.edge_count())
            return false;
        int n = g1.size();

        std::vector<std::vector<int>> sig1(n), sig2(n);
        for (Vertex v = 0; v < n; ++v) {
            sig1[v] = vertex_signature(g1, v);
            sig2[v] = vertex_signature(g2, v);
        }
        auto sorted1 = sig1, sorted2 = sig2;
        std::sort(sorted1.begin(), sorted1.end());
        std::sort(sorted2.begin(), sorted2.end());
        if (sorted1 != sorted2)
            return false;

        IsomorphismSearch search{g1, g2, {}, std::vector<std::vector<Vertex>>(n), std::vector<Vertex>(n, -1),
            std::vector<bool>(n, false)};
        for (Vertex v = 0; v < n; ++v)
            for (Vertex w = 0; w < n; ++w)
                if (sig1[v] == sig2[w])
                    search.candidates[v].push_back(w);

        // greedy order: most already-ordered neighbours first, then fewest candidates
        std::vector<bool> placed(n, false);
        std::vector<int> links(n, 0);
        for (int step = 0; step < n; ++step) {
            Vertex best = -1;
            for (Vertex v = 0; v < n; ++v) {
                if (placed[v])
                    continue;
                if (best == -1 || links[v] > links[best] ||
                    (links[v] == links[best] && search.candidates[v].size() < search.candidates[best].size()))
                    best = v;
            }
            placed[best] = true;
            search.order.push_back(best);
            for (auto w : g1.neighbours(best))
                ++links[w];
        }

        return search.extend(0);
    }

    auto is_tree(const Graph & g) -> bool
    {
        return g.size() >= 1 && g.edge_count() == static_cast<std::size_t>(g.size() - 1) && is_connected(g);
    }
}
