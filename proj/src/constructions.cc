#include <sidorenko/constructions.hh>

#include <algorithm>
#include <set>

namespace sidorenko
{
    auto cartesian_product(const Graph & h1, const Graph & h2) -> PairIndexedGraph
    {
        PairIndexedGraph result{{}, h1.size(), h2.size()};
        GraphBuilder builder{h1.size() * h2.size()};
        for (Vertex w = 0; w < h1.size(); ++w)
            for (auto [u, v] : h2.edges())
                builder.add_edge(result.index(w, u), result.index(w, v));
        for (auto [u, w] : h1.edges())
            for (Vertex v = 0; v < h2.size(); ++v)
                builder.add_edge(result.index(u, v), result.index(w, v));
        result.graph = std::move(builder).build();
        return result;
    }

    auto tensor_product(const Graph & g1, const Graph & g2) -> PairIndexedGraph
    {
        PairIndexedGraph result{{}, g1.size(), g2.size()};
        GraphBuilder builder{g1.size() * g2.size()};
        for (auto [u1, v1] : g1.edges())
            for (auto [u2, v2] : g2.edges()) {
                builder.add_edge(result.index(u1, u2), result.index(v1, v2));
                builder.add_edge(result.index(u1, v2), result.index(v1, u2));
            }
        result.graph = std::move(builder).build();
        return result;
    }

    auto HomIndexedGraph::index_of(const Mapping & hom) const -> Vertex
    {
        auto it = std::lower_bound(homs.begin(), homs.end(), hom);
        if (it == homs.end() || *it != hom)
            return -1;
        return static_cast<Vertex>(it - homs.begin());
    }

    auto psi(const Graph & t, const Graph & g, const PsiLimits & limits) -> HomIndexedGraph
    {
        HomIndexedGraph result;
        for_each_homomorphism(t, g, [&](const Mapping & m) {
            if (result.homs.size() >= limits.max_vertices)
                throw ConstructionError{"psi: more than " + std::to_string(limits.max_vertices) +
                    " homomorphisms, raise the size guard to continue"};
            result.homs.push_back(m);
        });
        std::sort(result.homs.begin(), result.homs.end());

        auto count = static_cast<Vertex>(result.homs.size());
        GraphBuilder builder{count};
        for (Vertex i = 0; i < count; ++i)
            for (Vertex j = i + 1; j < count; ++j) {
                bool adjacent = true;
                for (Vertex w = 0; w < t.size() && adjacent; ++w)
                    adjacent = g.adjacent(result.homs[i][w], result.homs[j][w]);
                if (adjacent)
                    builder.add_edge(i, j);
            }
        result.graph = std::move(builder).build();
        return result;
    }

    auto lift_hom(const Graph & t, const Graph & h, const Graph & g, const HomIndexedGraph & psi_t_g,
        const Mapping & hom) -> Mapping
    {
        // checks the edges of T □ H in place; building the product per call dominates otherwise
        PairIndexedGraph product{{}, t.size(), h.size()};
        auto bad = [&] { throw ConstructionError{"lift_hom: mapping is not a homomorphism T □ H -> G"}; };
        if (hom.size() != static_cast<std::size_t>(t.size()) * h.size())
            bad();
        for (auto x : hom)
            if (x < 0 || x >= g.size())
                bad();
        auto h_edges = h.edges();
        for (Vertex w = 0; w < t.size(); ++w)
            for (auto [u, v] : h_edges)
                if (! g.adjacent(hom[product.index(w, u)], hom[product.index(w, v)]))
                    bad();
        for (auto [a, b] : t.edges())
            for (Vertex v = 0; v < h.size(); ++v)
                if (! g.adjacent(hom[product.index(a, v)], hom[product.index(b, v)]))
                    bad();

        Mapping result(h.size());
        Mapping fibre(t.size());
        for (Vertex v = 0; v < h.size(); ++v) {
            for (Vertex w = 0; w < t.size(); ++w)
                fibre[w] = hom[product.index(w, v)];
            result[v] = psi_t_g.index_of(fibre);
            if (result[v] < 0)
                throw ConstructionError{"lift_hom: fibre over vertex " + std::to_string(v) + " is not a vertex of psi"};
        }
        return result;
    }

    auto project_hom(const Graph & t, const Graph & h, const Graph &, const HomIndexedGraph & psi_t_g,
        const Mapping & hom) -> Mapping
    {
        if (! is_homomorphism(h, psi_t_g.graph, hom))
            throw ConstructionError{"project_hom: mapping is not a homomorphism H -> psi_T(G)"};

        PairIndexedGraph layout{{}, t.size(), h.size()};
        Mapping result(static_cast<std::size_t>(t.size()) * h.size());
        for (Vertex v = 0; v < h.size(); ++v)
            for (Vertex w = 0; w < t.size(); ++w)
                result[layout.index(w, v)] = psi_t_g.homs[hom[v]][w];
        return result;
    }

    auto phi(const Graph & h) -> Graph
    {
        int n = h.size();
        GraphBuilder builder{2 * n};
        for (Vertex v = 0; v < n; ++v)
            builder.add_edge(v, n + v);
        for (auto [u, v] : h.edges()) {
            builder.add_edge(u, n + v);
            builder.add_edge(v, n + u);
        }
        return std::move(builder).build();
    }

    auto degree_split(const Graph & g) -> DegreeSplit
    {
        if (g.edge_count() == 0)
            throw ConstructionError{"degree_split needs at least one edge"};

        int n = g.size();
        Rational delta{static_cast<long>(2 * g.edge_count()), n};
        delta.canonicalize();

        // ids 0..n-1 are unprocessed originals, n + c is the c-th copy
        std::vector<std::set<int>> adj(n);
        std::vector<Vertex> projection;
        std::vector<int> copy_number;
        for (auto [u, v] : g.edges()) {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        auto origin = [&](int id) { return id < n ? id : projection[id - n]; };
        auto ordinal = [&](int id) { return id < n ? -1 : copy_number[id - n]; };

        for (Vertex v = 0; v < n; ++v) {
            std::vector<int> nbrs(adj[v].begin(), adj[v].end());
            auto degree = static_cast<long>(nbrs.size());
            if (degree == 0)
                continue;
            std::sort(nbrs.begin(), nbrs.end(), [&](int x, int y) {
                return std::pair{origin(x), ordinal(x)} < std::pair{origin(y), ordinal(y)};
            });

            Rational ratio = Rational{degree} / delta;
            long copies = std::min(degree, ceil(ratio).get_si());
            long base = degree / copies, extra = degree % copies;

            std::size_t next = 0;
            for (long c = 0; c < copies; ++c) {
                int id = n + static_cast<int>(projection.size());
                projection.push_back(v);
                copy_number.push_back(static_cast<int>(c));
                adj.emplace_back();
                long share = base + (c < extra ? 1 : 0);
                for (long k = 0; k < share; ++k, ++next) {
                    auto x = nbrs[next];
                    adj[x].erase(v);
                    adj[x].insert(id);
                    adj[id].insert(x);
                }
            }
            adj[v].clear();
        }

        GraphBuilder builder{static_cast<int>(projection.size())};
        for (std::size_t c = 0; c < projection.size(); ++c)
            for (auto x : adj[n + c])
                builder.add_edge(static_cast<Vertex>(c), x - n);
        return {std::move(builder).build(), std::move(projection), delta};
    }

    namespace named
    {
        auto path(int n) -> Graph
        {
            if (n < 1)
                throw ConstructionError{"path needs n >= 1"};
            GraphBuilder builder{n};
            for (Vertex v = 0; v + 1 < n; ++v)
                builder.add_edge(v, v + 1);
            return std::move(builder).build();
        }

        auto cycle(int n) -> Graph
        {
            if (n < 3)
                throw ConstructionError{"cycle needs n >= 3"};
            GraphBuilder builder{n};
            for (Vertex v = 0; v < n; ++v)
                builder.add_edge(v, (v + 1) % n);
            return std::move(builder).build();
        }

        auto star(int k) -> Graph
        {
            if (k < 0)
                throw ConstructionError{"star needs k >= 0"};
            GraphBuilder builder{k + 1};
            for (Vertex v = 1; v <= k; ++v)
                builder.add_edge(0, v);
            return std::move(builder).build();
        }

        auto complete(int n) -> Graph
        {
            if (n < 1)
                throw ConstructionError{"complete needs n >= 1"};
            GraphBuilder builder{n};
            for (Vertex u = 0; u < n; ++u)
                for (Vertex v = u + 1; v < n; ++v)
                    builder.add_edge(u, v);
            return std::move(builder).build();
        }

        auto complete_bipartite(int m, int n) -> Graph
        {
            if (m < 1 || n < 1)
                throw ConstructionError{"complete_bipartite needs m, n >= 1"};
            GraphBuilder builder{m + n};
            for (Vertex u = 0; u < m; ++u)
                for (Vertex v = 0; v < n; ++v)
                    builder.add_edge(u, m + v);
            return std::move(builder).build();
        }

        auto grid(const std::vector<int> & dims) -> Graph
        {
            if (dims.empty())
                throw ConstructionError{"grid needs at least one dimension"};
            auto result = path(dims.front());
            for (std::size_t i = 1; i < dims.size(); ++i)
                result = cartesian_product(result, path(dims[i])).graph;
            return result;
        }

        auto hypercube(int d) -> Graph
        {
            if (d < 0 || d > 16)
                throw ConstructionError{"hypercube needs 0 <= d <= 16"};
            GraphBuilder builder{1 << d};
            for (Vertex v = 0; v < (1 << d); ++v)
                for (int bit = 0; bit < d; ++bit)
                    if (! (v & (1 << bit)))
                        builder.add_edge(v, v | (1 << bit));
            return std::move(builder).build();
        }

        auto k55_minus_c10() -> Graph
        {
            GraphBuilder builder{10};
            for (Vertex i = 0; i < 5; ++i)
                for (Vertex j = 0; j < 5; ++j)
                    if (j != i && j != (i + 4) % 5)
                        builder.add_edge(i, 5 + j);
            return std::move(builder).build();
        }
    }

    auto named_graph_keys() -> const std::vector<std::string> &
    {
        static const std::vector<std::string> keys{
            "path", "cycle", "star", "complete", "complete_bipartite", "grid", "hypercube", "k55_minus_c10"};
        return keys;
    }

    auto named_graph(std::string_view key, const std::vector<int> & params) -> Graph
    {
        auto expect = [&](std::size_t count) {
            if (params.size() != count)
                throw ConstructionError{"named graph '" + std::string{key} + "' takes " + std::to_string(count) +
                    " parameter(s), got " + std::to_string(params.size())};
        };
        if (key == "path") {
            expect(1);
            return named::path(params[0]);
        }
        if (key == "cycle") {
            expect(1);
            return named::cycle(params[0]);
        }
        if (key == "star") {
            expect(1);
            return named::star(params[0]);
        }
        if (key == "complete") {
            expect(1);
            return named::complete(params[0]);
        }
        if (key == "complete_bipartite") {
            expect(2);
            return named::complete_bipartite(params[0], params[1]);
        }
        if (key == "grid") {
            if (params.empty())
                throw ConstructionError{"named graph 'grid' needs at least one dimension"};
            return named::grid(params);
        }
        if (key == "hypercube") {
            expect(1);
            return named::hypercube(params[0]);
        }
        if (key == "k55_minus_c10") {
            expect(0);
            return named::k55_minus_c10();
        }
        throw ConstructionError{"unknown named graph '" + std::string{key} + "'"};
    }
}
