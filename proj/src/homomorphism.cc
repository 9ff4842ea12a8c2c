#include <sidorenko/homomorphism.hh>

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <thread>
#include <unordered_map>

namespace sidorenko
{
    auto bfs_order(const Graph & h) -> std::vector<Vertex>
    {
        std::vector<Vertex> order;
        order.reserve(h.size());
        std::vector<bool> seen(h.size(), false);
        for (Vertex start = 0; start < h.size(); ++start) {
            if (seen[start])
                continue;
            seen[start] = true;
            std::size_t head = order.size();
            order.push_back(start);
            for (; head < order.size(); ++head)
                for (auto w : h.neighbours(order[head]))
                    if (! seen[w]) {
                        seen[w] = true;
                        order.push_back(w);
                    }
        }
        return order;
    }

    namespace
    {
        // Backtracking state shared by the enumerator and the counter: vertices
        // of H in BFS order, each with its already-assigned neighbours.
        struct Enumeration
        {
            const Graph & h;
            const Graph & g;
            std::vector<Vertex> order;
            std::vector<std::vector<Vertex>> earlier;

            Enumeration(const Graph & h_, const Graph & g_) :
                h(h_),
                g(g_),
                order(bfs_order(h_)),
                earlier(h_.size())
            {
                std::vector<int> position(h.size());
                for (std::size_t i = 0; i < order.size(); ++i)
                    position[order[i]] = static_cast<int>(i);
                for (auto v : order)
                    for (auto w : h.neighbours(v))
                        if (position[w] < position[v])
                            earlier[v].push_back(w);
            }

            template <typename Leaf>
            auto extend(Mapping & mapping, std::size_t depth, Leaf & leaf) const -> void
            {
                if (depth == order.size()) {
                    leaf(mapping);
                    return;
                }
                auto v = order[depth];
                auto try_image = [&](Vertex y) {
                    for (auto u : earlier[v])
                        if (! g.adjacent(mapping[u], y))
                            return;
                    mapping[v] = y;
                    extend(mapping, depth + 1, leaf);
                };
                if (earlier[v].empty())
                    for (Vertex y = 0; y < g.size(); ++y)
                        try_image(y);
                else
                    for (auto y : g.neighbours(mapping[earlier[v].front()]))
                        try_image(y);
            }
        };
    }

    auto for_each_homomorphism(const Graph & h, const Graph & g, const std::function<void(const Mapping &)> & visit)
        -> void
    {
        Enumeration e{h, g};
        Mapping mapping(h.size(), -1);
        auto leaf = [&](const Mapping & m) { visit(m); };
        e.extend(mapping, 0, leaf);
    }

    auto is_homomorphism(const Graph & h, const Graph & g, std::span<const Vertex> mapping) -> bool
    {
        if (mapping.size() != static_cast<std::size_t>(h.size()))
            return false;
        for (auto y : mapping)
            if (y < 0 || y >= g.size())
                return false;
        for (auto [u, v] : h.edges())
            if (! g.adjacent(mapping[u], mapping[v]))
                return false;
        return true;
    }

    auto count_hom_bruteforce(const Graph & h, const Graph & g, const CountOptions & options,
        const BruteForceLimits & limits) -> BigCount
    {
        if (h.size() > limits.max_pattern_vertices || g.size() > limits.max_target_vertices)
            throw HomomorphismError{"brute force limited to |V(H)| <= " + std::to_string(limits.max_pattern_vertices) +
                " and |V(G)| <= " + std::to_string(limits.max_target_vertices) + "; use count_hom_dp"};
        if (h.size() == 0)
            return 1;
        if (g.size() == 0)
            return 0;

        Enumeration e{h, g};
        auto root = e.order.front();

        // one partial count per image of the first BFS vertex, summed in index order
        std::vector<std::uint64_t> partial(g.size(), 0);
        auto branch = [&](Vertex y) {
            Mapping mapping(h.size(), -1);
            mapping[root] = y;
            std::uint64_t count = 0;
            auto leaf = [&](const Mapping &) { ++count; };
            e.extend(mapping, 1, leaf);
            partial[y] = count;
        };

        unsigned workers = std::max(1U, std::min<unsigned>(options.workers, g.size()));
        if (workers == 1)
            for (Vertex y = 0; y < g.size(); ++y)
                branch(y);
        else {
            std::atomic<int> next{0};
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < workers; ++t)
                pool.emplace_back([&] {
                    for (int y; (y = next.fetch_add(1)) < g.size();)
                        branch(y);
                });
        }

        BigCount total = 0;
        for (auto c : partial)
            total += mpz_class{static_cast<unsigned long>(c)};
        return total;
    }

    auto TreeDecomposition::width() const -> int
    {
        int result = -1;
        for (auto & bag : bags)
            result = std::max(result, static_cast<int>(bag.size()) - 1);
        return result;
    }

    auto tree_decomposition(const Graph & h) -> TreeDecomposition
    {
        int n = h.size();
        TreeDecomposition td;
        if (n == 0)
            return td;

        std::vector<std::vector<bool>> fill(n, std::vector<bool>(n, false));
        for (auto [u, v] : h.edges())
            fill[u][v] = fill[v][u] = true;

        std::vector<bool> eliminated(n, false);
        std::vector<Vertex> order;
        std::vector<std::vector<Vertex>> later(n);

        auto live_neighbours = [&](Vertex v) {
            std::vector<Vertex> result;
            for (Vertex w = 0; w < n; ++w)
                if (! eliminated[w] && fill[v][w])
                    result.push_back(w);
            return result;
        };

        for (int step = 0; step < n; ++step) {
            Vertex best = -1;
            long best_fill = 0;
            std::size_t best_degree = 0;
            for (Vertex v = 0; v < n; ++v) {
                if (eliminated[v])
                    continue;
                auto nbrs = live_neighbours(v);
                long missing = 0;
                for (std::size_t i = 0; i < nbrs.size(); ++i)
                    for (std::size_t j = i + 1; j < nbrs.size(); ++j)
                        if (! fill[nbrs[i]][nbrs[j]])
                            ++missing;
                if (best == -1 || missing < best_fill || (missing == best_fill && nbrs.size() < best_degree)) {
                    best = v;
                    best_fill = missing;
                    best_degree = nbrs.size();
                }
            }
            auto nbrs = live_neighbours(best);
            for (std::size_t i = 0; i < nbrs.size(); ++i)
                for (std::size_t j = i + 1; j < nbrs.size(); ++j)
                    fill[nbrs[i]][nbrs[j]] = fill[nbrs[j]][nbrs[i]] = true;
            later[best] = nbrs;
            eliminated[best] = true;
            order.push_back(best);
        }

        std::vector<int> position(n);
        for (int i = 0; i < n; ++i)
            position[order[i]] = i;

        // bag i = {order[i]} + its later neighbours; parent = earliest later neighbour
        std::vector<std::vector<Vertex>> bags(n);
        std::vector<std::vector<int>> adjacent(n);
        for (int i = 0; i < n; ++i) {
            auto v = order[i];
            bags[i] = later[v];
            bags[i].push_back(v);
            std::sort(bags[i].begin(), bags[i].end());
            int parent = -1;
            for (auto w : later[v])
                if (parent == -1 || position[w] < parent)
                    parent = position[w];
            if (parent == -1 && i + 1 < n)
                parent = i + 1;
            if (parent != -1) {
                adjacent[i].push_back(parent);
                adjacent[parent].push_back(i);
            }
        }

        // contract tree edges whose bags are nested
        std::vector<bool> alive(n, true);
        for (bool changed = true; changed;) {
            changed = false;
            for (int x = 0; x < n && ! changed; ++x) {
                if (! alive[x])
                    continue;
                for (auto y : adjacent[x]) {
                    if (! std::includes(bags[y].begin(), bags[y].end(), bags[x].begin(), bags[x].end()))
                        continue;
                    for (auto z : adjacent[x])
                        if (z != y) {
                            std::replace(adjacent[z].begin(), adjacent[z].end(), x, y);
                            adjacent[y].push_back(z);
                        }
                    std::erase(adjacent[y], x);
                    adjacent[x].clear();
                    alive[x] = false;
                    changed = true;
                    break;
                }
            }
        }

        std::vector<int> new_index(n, -1);
        for (int x = 0; x < n; ++x)
            if (alive[x]) {
                new_index[x] = static_cast<int>(td.bags.size());
                td.bags.push_back(bags[x]);
            }
        for (int x = 0; x < n; ++x)
            for (auto y : adjacent[x])
                if (alive[x] && x < y)
                    td.tree.emplace_back(new_index[x], new_index[y]);
        return td;
    }

    auto validate_tree_decomposition(const Graph & h, const TreeDecomposition & td) -> void
    {
        auto bag_count = static_cast<int>(td.bags.size());
        for (auto & bag : td.bags) {
            for (auto v : bag)
                if (v < 0 || v >= h.size())
                    throw HomomorphismError{"invalid tree decomposition: bag contains out-of-range vertex " +
                        std::to_string(v)};
            if (! std::is_sorted(bag.begin(), bag.end()) || std::adjacent_find(bag.begin(), bag.end()) != bag.end())
                throw HomomorphismError{"invalid tree decomposition: bags must be sorted without repeats"};
        }

        if (bag_count > 0) {
            if (td.tree.size() != static_cast<std::size_t>(bag_count - 1))
                throw HomomorphismError{"invalid tree decomposition: bag tree has " + std::to_string(td.tree.size()) +
                    " edges for " + std::to_string(bag_count) + " bags, so it is not a tree"};
            GraphBuilder builder{bag_count};
            for (auto [x, y] : td.tree) {
                if (x < 0 || y < 0 || x >= bag_count || y >= bag_count || x == y)
                    throw HomomorphismError{"invalid tree decomposition: bad bag tree edge"};
                builder.add_edge(x, y);
            }
            auto tree = std::move(builder).build();
            if (! is_tree(tree))
                throw HomomorphismError{"invalid tree decomposition: bag tree is not a tree"};
        }
        else if (! td.tree.empty())
            throw HomomorphismError{"invalid tree decomposition: bag tree edges without bags"};

        std::vector<int> occurrences(h.size(), 0);
        for (auto & bag : td.bags)
            for (auto v : bag)
                ++occurrences[v];
        for (Vertex v = 0; v < h.size(); ++v)
            if (occurrences[v] == 0)
                throw HomomorphismError{"invalid tree decomposition: vertex coverage fails, vertex " +
                    std::to_string(v) + " is in no bag"};

        for (auto [u, v] : h.edges()) {
            bool covered = std::any_of(td.bags.begin(), td.bags.end(), [&](auto & bag) {
                return std::binary_search(bag.begin(), bag.end(), u) && std::binary_search(bag.begin(), bag.end(), v);
            });
            if (! covered)
                throw HomomorphismError{"invalid tree decomposition: edge coverage fails, edge {" + std::to_string(u) +
                    ", " + std::to_string(v) + "} is in no bag"};
        }

        for (Vertex v = 0; v < h.size(); ++v) {
            int internal = 0;
            for (auto [x, y] : td.tree)
                if (std::binary_search(td.bags[x].begin(), td.bags[x].end(), v) &&
                    std::binary_search(td.bags[y].begin(), td.bags[y].end(), v))
                    ++internal;
            if (internal != occurrences[v] - 1)
                throw HomomorphismError{"invalid tree decomposition: connectivity fails, bags containing vertex " +
                    std::to_string(v) + " do not form a subtree"};
        }
    }

    namespace
    {
        enum class NiceKind
        {
            leaf,
            introduce,
            forget,
            join
        };

        struct NiceNode
        {
            NiceKind kind;
            Vertex vertex = -1;
            std::vector<Vertex> bag; // sorted
            std::vector<int> children;
        };

        // Leaf / introduce / forget / join form of a decomposition, rooted with an
        // empty bag at `root`.
        struct NiceDecomposition
        {
            std::vector<NiceNode> nodes;
            int root = -1;

            auto add(NiceNode node) -> int
            {
                nodes.push_back(std::move(node));
                return static_cast<int>(nodes.size()) - 1;
            }

            auto morph(int from, const std::vector<Vertex> & target) -> int
            {
                auto current = from;
                for (auto v : std::vector<Vertex>(nodes[from].bag))
                    if (! std::binary_search(target.begin(), target.end(), v)) {
                        auto bag = nodes[current].bag;
                        std::erase(bag, v);
                        current = add({NiceKind::forget, v, std::move(bag), {current}});
                    }
                for (auto v : target)
                    if (! std::binary_search(nodes[current].bag.begin(), nodes[current].bag.end(), v)) {
                        auto bag = nodes[current].bag;
                        bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
                        current = add({NiceKind::introduce, v, std::move(bag), {current}});
                    }
                return current;
            }

            auto build(const TreeDecomposition & td, const std::vector<std::vector<int>> & tree_adj, int x, int parent)
                -> int
            {
                std::vector<int> branches;
                for (auto y : tree_adj[x])
                    if (y != parent)
                        branches.push_back(morph(build(td, tree_adj, y, x), td.bags[x]));
                if (branches.empty())
                    return morph(add({NiceKind::leaf, -1, {}, {}}), td.bags[x]);
                auto current = branches.front();
                for (std::size_t i = 1; i < branches.size(); ++i)
                    current = add({NiceKind::join, -1, td.bags[x], {current, branches[i]}});
                return current;
            }

            explicit NiceDecomposition(const TreeDecomposition & td)
            {
                std::vector<std::vector<int>> tree_adj(td.bags.size());
                for (auto [x, y] : td.tree) {
                    tree_adj[x].push_back(y);
                    tree_adj[y].push_back(x);
                }
                if (td.bags.empty())
                    root = add({NiceKind::leaf, -1, {}, {}});
                else
                    root = morph(build(td, tree_adj, 0, -1), {});
            }
        };

        using Key = std::uint64_t;

        // Encodes images of bag vertices (in bag order) in base n.
        struct Codec
        {
            Key base;

            auto decode(Key key, std::size_t length) const -> std::vector<Vertex>
            {
                std::vector<Vertex> images(length);
                for (std::size_t i = length; i-- > 0;) {
                    images[i] = static_cast<Vertex>(key % base);
                    key /= base;
                }
                return images;
            }

            auto encode(const std::vector<Vertex> & images) const -> Key
            {
                Key key = 0;
                for (auto y : images)
                    key = key * base + static_cast<Key>(y);
                return key;
            }
        };

        // Policy: `introduce` filters images of a new vertex against its bag
        // neighbours; `forget_factor` multiplies in the edges between a vertex
        // being forgotten and its remaining bag neighbours. Each edge of H is
        // seen at exactly one forget node (the first endpoint forgotten), while
        // introduce nodes may see it once per join branch.
        struct CountingPolicy
        {
            using Value = BigCount;
            const Graph & g;

            auto target_size() const -> int { return g.size(); }

            template <typename Emit>
            auto introduce(const std::vector<Vertex> & neighbour_images, Emit && emit) const -> void
            {
                if (neighbour_images.empty()) {
                    for (Vertex y = 0; y < g.size(); ++y)
                        emit(y);
                    return;
                }
                for (auto y : g.neighbours(neighbour_images.front())) {
                    bool ok = true;
                    for (std::size_t i = 1; i < neighbour_images.size() && ok; ++i)
                        ok = g.adjacent(y, neighbour_images[i]);
                    if (ok)
                        emit(y);
                }
            }

            // 0/1 edge factors are idempotent, so the introduce filter is exact
            auto forget_factor(Vertex, const std::vector<Vertex> &) const -> std::optional<Value> { return std::nullopt; }
        };

        struct WeightedPolicy
        {
            using Value = Rational;
            const WeightMatrix & w;

            auto target_size() const -> int { return w.size(); }

            // support only; weights are multiplied in at forget time
            template <typename Emit>
            auto introduce(const std::vector<Vertex> & neighbour_images, Emit && emit) const -> void
            {
                for (Vertex y = 0; y < w.size(); ++y)
                    if (std::all_of(neighbour_images.begin(), neighbour_images.end(),
                            [&](Vertex z) { return w(y, z) != 0; }))
                        emit(y);
            }

            auto forget_factor(Vertex y, const std::vector<Vertex> & neighbour_images) const -> std::optional<Value>
            {
                Rational factor = 1;
                for (auto z : neighbour_images)
                    factor *= w(y, z);
                return factor;
            }
        };

        template <typename Policy>
        auto run_dp(const Graph & h, const TreeDecomposition & td, const Policy & policy) -> typename Policy::Value
        {
            using Value = typename Policy::Value;
            using Table = std::unordered_map<Key, Value>;

            validate_tree_decomposition(h, td);
            if (h.size() == 0)
                return Value{1};
            if (policy.target_size() == 0)
                return Value{0};

            Codec codec{static_cast<Key>(policy.target_size())};
            {
                long double capacity = 1;
                for (int i = 0; i <= td.width(); ++i)
                    capacity *= policy.target_size();
                if (capacity >= static_cast<long double>(std::numeric_limits<Key>::max()))
                    throw HomomorphismError{"decomposition too wide for this target size"};
            }

            NiceDecomposition nice{td};

            auto solve = [&](auto & self, int id) -> Table {
                const auto & node = nice.nodes[id];
                Table result;
                switch (node.kind) {
                case NiceKind::leaf:
                    result.emplace(0, Value{1});
                    break;

                case NiceKind::introduce: {
                    auto child = self(self, node.children.front());
                    const auto & child_bag = nice.nodes[node.children.front()].bag;
                    auto slot = static_cast<std::size_t>(
                        std::lower_bound(node.bag.begin(), node.bag.end(), node.vertex) - node.bag.begin());
                    std::vector<std::size_t> bag_neighbours;
                    for (std::size_t i = 0; i < child_bag.size(); ++i)
                        if (h.adjacent(node.vertex, child_bag[i]))
                            bag_neighbours.push_back(i);

                    std::vector<Vertex> neighbour_images;
                    for (auto & [key, value] : child) {
                        auto images = codec.decode(key, child_bag.size());
                        neighbour_images.clear();
                        for (auto i : bag_neighbours)
                            neighbour_images.push_back(images[i]);
                        policy.introduce(neighbour_images, [&](Vertex y) {
                            auto extended = images;
                            extended.insert(extended.begin() + static_cast<std::ptrdiff_t>(slot), y);
                            result[codec.encode(extended)] += value;
                        });
                    }
                    break;
                }

                case NiceKind::forget: {
                    auto child = self(self, node.children.front());
                    const auto & child_bag = nice.nodes[node.children.front()].bag;
                    auto slot = static_cast<std::size_t>(
                        std::lower_bound(child_bag.begin(), child_bag.end(), node.vertex) - child_bag.begin());
                    std::vector<std::size_t> bag_neighbours;
                    for (std::size_t i = 0; i < child_bag.size(); ++i)
                        if (i != slot && h.adjacent(node.vertex, child_bag[i]))
                            bag_neighbours.push_back(i);
                    std::vector<Vertex> neighbour_images;
                    for (auto & [key, value] : child) {
                        auto images = codec.decode(key, child_bag.size());
                        neighbour_images.clear();
                        for (auto i : bag_neighbours)
                            neighbour_images.push_back(images[i]);
                        auto factor = policy.forget_factor(images[slot], neighbour_images);
                        images.erase(images.begin() + static_cast<std::ptrdiff_t>(slot));
                        if (factor)
                            result[codec.encode(images)] += value * *factor;
                        else
                            result[codec.encode(images)] += value;
                    }
                    break;
                }

                case NiceKind::join: {
                    auto left = self(self, node.children[0]);
                    auto right = self(self, node.children[1]);
                    if (left.size() > right.size())
                        std::swap(left, right);
                    for (auto & [key, value] : left)
                        if (auto it = right.find(key); it != right.end())
                            result.emplace(key, value * it->second);
                    break;
                }
                }
                return result;
            };

            auto table = solve(solve, nice.root);
            auto it = table.find(0);
            return it == table.end() ? Value{0} : it->second;
        }
    }

    auto count_hom_dp(const Graph & h, const Graph & g, const TreeDecomposition & td) -> BigCount
    {
        return run_dp(h, td, CountingPolicy{g});
    }

    auto count_hom(const Graph & h, const Graph & g) -> BigCount
    {
        return count_hom_dp(h, g, tree_decomposition(h));
    }

    auto density(const Graph & h, const Graph & g) -> Rational
    {
        if (g.size() == 0)
            throw HomomorphismError{"density undefined for an empty target graph"};
        Rational result{count_hom(h, g), pow(BigCount{g.size()}, static_cast<unsigned long>(h.size()))};
        result.canonicalize();
        return result;
    }

    WeightMatrix::WeightMatrix(std::vector<std::vector<Rational>> entries) :
        _entries(std::move(entries))
    {
        auto n = _entries.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (_entries[i].size() != n)
                throw HomomorphismError{"weight matrix is not square"};
            for (std::size_t j = 0; j < n; ++j)
                if (_entries[i][j] < 0)
                    throw HomomorphismError{"weight matrix has a negative entry at (" + std::to_string(i) + ", " +
                        std::to_string(j) + ")"};
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (_entries[i][j] != _entries[j][i])
                    throw HomomorphismError{"weight matrix is not symmetric at (" + std::to_string(i) + ", " +
                        std::to_string(j) + ")"};
    }

    auto WeightMatrix::adjacency(const Graph & g) -> WeightMatrix
    {
        std::vector<std::vector<Rational>> entries(g.size(), std::vector<Rational>(g.size(), 0));
        for (auto [u, v] : g.edges())
            entries[u][v] = entries[v][u] = 1;
        return WeightMatrix{std::move(entries)};
    }

    auto WeightMatrix::constant(int n, const Rational & c) -> WeightMatrix
    {
        return WeightMatrix{std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, c))};
    }

    auto weighted_density(const Graph & h, const WeightMatrix & w) -> Rational
    {
        if (w.size() == 0)
            throw HomomorphismError{"weighted density undefined for an empty weight matrix"};
        Rational total = run_dp(h, tree_decomposition(h), WeightedPolicy{w});
        Rational result = total / Rational{pow(BigCount{w.size()}, static_cast<unsigned long>(h.size()))};
        result.canonicalize();
        return result;
    }
}
