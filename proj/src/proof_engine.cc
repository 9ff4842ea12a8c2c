#include <sidorenko/proof_engine.hh>

#include <algorithm>

namespace sidorenko
{
    namespace
    {
        auto require_no_isolated(const Graph & g) -> void
        {
            if (g.size() == 0)
                throw ProofError{"target graph is empty"};
            for (Vertex v = 0; v < g.size(); ++v)
                if (g.degree(v) == 0)
                    throw ProofError{"target graph has isolated vertex " + std::to_string(v) +
                        "; remove isolated vertices first"};
        }

        auto require_positive(const Rational & eps) -> void
        {
            if (eps <= 0)
                throw ProofError{"eps must be a positive rational, got " + to_fraction_string(eps)};
        }

        auto assigned(const Assignment & x, Vertex v) -> Vertex
        {
            if (v < 0 || static_cast<std::size_t>(v) >= x.size() || x[v] == unassigned)
                throw ProofError{"assignment does not cover H-vertex " + std::to_string(v)};
            return x[v];
        }

        // ρ(y)^k for possibly negative k
        auto rho_power(const Graph & g, Vertex y, long k) -> Rational
        {
            auto r = rho(g, y);
            return k >= 0 ? pow(r, static_cast<unsigned long>(k)) : Rational{1} / pow(r, static_cast<unsigned long>(-k));
        }

        auto adjacent_to_all(const Graph & g, Vertex y, const std::vector<Vertex> & images) -> bool
        {
            return std::all_of(images.begin(), images.end(), [&](Vertex z) { return g.adjacent(y, z); });
        }

        auto intersect(const std::vector<Vertex> & a, const std::vector<Vertex> & b) -> std::vector<Vertex>
        {
            std::vector<Vertex> out;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
            return out;
        }
    }

    auto rho(const Graph & g, Vertex v) -> Rational
    {
        Rational r{g.degree(v), g.size()};
        r.canonicalize();
        return r;
    }

    auto rho0(const Graph & g) -> Rational
    {
        if (g.size() == 0)
            throw ProofError{"rho0 undefined for an empty graph"};
        Rational r{static_cast<long>(2 * g.edge_count()), static_cast<long>(g.size()) * g.size()};
        r.canonicalize();
        return r;
    }

    auto make_rooted_arrangement(const NeighbourhoodFamily & fam, const TreeEdges & tree, Vertex root)
        -> RootedArrangement
    {
        validate_spanning_tree(fam, tree);
        fam.position(root);

        RootedArrangement ra{fam, tree, root, {}, check_arrangement(fam, tree).arrangeable};
        std::vector<Vertex> stack{root};
        std::map<Vertex, bool> seen{{root, true}};
        while (! stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto [a, b] : tree) {
                Vertex other = a == v ? b : (b == v ? a : unassigned);
                if (other == unassigned || seen[other])
                    continue;
                seen[other] = true;
                ra.parent[other] = v;
                stack.push_back(other);
            }
        }
        return ra;
    }

    auto reroot(const RootedArrangement & ra, Vertex root) -> RootedArrangement
    {
        return make_rooted_arrangement(ra.fam, ra.tree, root);
    }

    auto f_u(const NeighbourhoodFamily & fam, const Graph & g, Vertex u, const Assignment & x, const Rational & eps)
        -> Rational
    {
        require_no_isolated(g);
        require_positive(eps);
        const auto & lambda = fam.neighbourhood(u);
        auto xu = assigned(x, u);
        std::vector<Vertex> images;
        for (auto b : lambda)
            images.push_back(assigned(x, b));

        auto k = static_cast<long>(lambda.size());
        Rational indicator = adjacent_to_all(g, xu, images) ? 1 : 0;
        Rational numerator = indicator + eps * rho_power(g, xu, k);
        Rational result = numerator / (rho0(g) * rho_power(g, xu, k - 1));
        result.canonicalize();
        return result;
    }

    auto cond_expectation_f(const RootedArrangement & ra, const Graph & g, Vertex u, const Assignment & x,
        const Rational & eps) -> Rational
    {
        require_no_isolated(g);
        require_positive(eps);
        if (u == ra.root)
            return 1 + eps;

        auto shared = intersect(ra.fam.neighbourhood(u), ra.fam.neighbourhood(ra.parent.at(u)));
        std::vector<Vertex> images;
        for (auto b : shared)
            images.push_back(assigned(x, b));

        auto k = static_cast<long>(shared.size());
        auto base = rho0(g);
        Rational sum = 0;
        for (Vertex y = 0; y < g.size(); ++y)
            if (adjacent_to_all(g, y, images))
                sum += Rational{1} / (base * rho_power(g, y, k - 1));
        Rational result = sum / g.size() + eps;
        result.canonicalize();
        return result;
    }

    auto f_tree(const RootedArrangement & ra, const Graph & g, const Assignment & x, const Rational & eps) -> Rational
    {
        Rational product = 1;
        for (auto a : ra.fam.side_a)
            product *= f_u(ra.fam, g, a, x, eps) / cond_expectation_f(ra, g, a, x, eps);
        product.canonicalize();
        return product;
    }

    auto Section2Report::all_passed() const -> bool
    {
        return std::all_of(identities.begin(), identities.end(), [](auto & r) { return r.passed; });
    }

    auto check_section2_identities(const Graph & h, const std::vector<Vertex> & side_a, const TreeEdges & tree,
        const Graph & g, const Rational & eps, const EnumerationLimits & limits) -> Section2Report
    {
        require_no_isolated(g);
        require_positive(eps);
        auto fam = neighbourhood_family(h, side_a);
        if (fam.size() == 0)
            throw ProofError{"side A is empty"};
        for (Vertex v = 0; v < h.size(); ++v) {
            bool in_a = std::find(side_a.begin(), side_a.end(), v) != side_a.end();
            if (in_a)
                continue;
            for (auto w : h.neighbours(v))
                if (std::find(side_a.begin(), side_a.end(), w) == side_a.end())
                    throw ProofError{"side A is not one side of a bipartition: edge {" + std::to_string(v) + ", " +
                        std::to_string(w) + "} avoids it"};
        }

        long double total = 1;
        for (int i = 0; i < h.size(); ++i)
            total *= g.size();
        if (total > static_cast<long double>(limits.max_assignments))
            throw ProofError{"enumeration of " + std::to_string(g.size()) + "^" + std::to_string(h.size()) +
                " assignments exceeds the limit of " + std::to_string(limits.max_assignments)};

        std::vector<RootedArrangement> rooted;
        for (auto r : fam.side_a)
            rooted.push_back(make_rooted_arrangement(fam, tree, r));

        IdentityResult normalisation{"f-normalisation", true, "E[f_u] = 1 + eps for every u in A", std::nullopt};
        IdentityResult invariance{"root-invariance", true, "f_T_r(x) = f_T_s(x) for all x, r, s", std::nullopt};
        IdentityResult tree_normal{"tree-normalisation", true, "E[f_T_r] = 1 for every root r", std::nullopt};
        IdentityResult observable{"observable-identity", true,
            "E[g f_T_r] (1 + eps) = E[g f_u] for indicators g of (x_u, x(N(u)))", std::nullopt};

        auto a_count = fam.size();
        std::vector<Rational> sum_f(a_count, 0), sum_tree(a_count, 0);
        // key: (root index, u index, x_u, x(N(u))...) -> (Σ f_T_r, Σ f_u)
        std::map<std::vector<Vertex>, std::pair<Rational, Rational>> patterns;

        Assignment x(h.size(), 0);
        std::vector<Rational> f_values(a_count), tree_values(a_count);
        for (bool more = true; more;) {
            for (std::size_t i = 0; i < a_count; ++i) {
                f_values[i] = f_u(fam, g, fam.side_a[i], x, eps);
                sum_f[i] += f_values[i];
            }
            for (std::size_t r = 0; r < a_count; ++r) {
                tree_values[r] = f_tree(rooted[r], g, x, eps);
                sum_tree[r] += tree_values[r];
                if (invariance.passed && tree_values[r] != tree_values[0]) {
                    invariance.passed = false;
                    invariance.detail = "roots " + std::to_string(fam.side_a[0]) + " and " +
                        std::to_string(fam.side_a[r]) + " give " + to_fraction_string(tree_values[0]) + " vs " +
                        to_fraction_string(tree_values[r]);
                    invariance.witness = x;
                }
            }
            for (std::size_t r = 0; r < a_count; ++r)
                for (std::size_t i = 0; i < a_count; ++i) {
                    std::vector<Vertex> key{static_cast<Vertex>(r), static_cast<Vertex>(i), x[fam.side_a[i]]};
                    for (auto b : fam.lambda[i])
                        key.push_back(x[b]);
                    auto & [s_tree, s_f] = patterns[key];
                    s_tree += tree_values[r];
                    s_f += f_values[i];
                }

            more = false;
            for (auto & value : x) {
                if (++value < g.size()) {
                    more = true;
                    break;
                }
                value = 0;
            }
        }

        Rational count = pow(Rational{g.size()}, static_cast<unsigned long>(h.size()));
        for (std::size_t i = 0; i < a_count && normalisation.passed; ++i)
            if (sum_f[i] / count != 1 + eps) {
                normalisation.passed = false;
                normalisation.detail = "E[f_" + std::to_string(fam.side_a[i]) + "] = " +
                    to_fraction_string(Rational{sum_f[i] / count});
            }
        for (std::size_t r = 0; r < a_count && tree_normal.passed; ++r)
            if (sum_tree[r] != count) {
                tree_normal.passed = false;
                tree_normal.detail = "root " + std::to_string(fam.side_a[r]) + ": E[f_T] = " +
                    to_fraction_string(Rational{sum_tree[r] / count});
            }
        for (auto & [key, sums] : patterns) {
            // both sides share the 1/|V(G)|^|V(H)| factor
            if (sums.first * (1 + eps) == sums.second)
                continue;
            observable.passed = false;
            auto u = fam.side_a[key[1]];
            Assignment witness(h.size(), unassigned);
            witness[u] = key[2];
            for (std::size_t k = 0; k < fam.lambda[key[1]].size(); ++k)
                witness[fam.lambda[key[1]][k]] = key[3 + k];
            observable.witness = witness;
            observable.detail = "root " + std::to_string(fam.side_a[key[0]]) + ", u = " + std::to_string(u) +
                ": E[g f_T] (1 + eps) = " + to_fraction_string(Rational{sums.first * (1 + eps) / count}) +
                " but E[g f_u] = " + to_fraction_string(Rational{sums.second / count});
            break;
        }

        return {{normalisation, invariance, tree_normal, observable}};
    }
}
