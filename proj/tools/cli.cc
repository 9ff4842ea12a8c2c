#include "cli.hh"

#include <sidorenko/constructions.hh>
#include <sidorenko/homomorphism.hh>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace sidorenko::cli
{
    namespace
    {
        auto split(const std::string & text, char sep) -> std::vector<std::string>
        {
            std::vector<std::string> parts;
            std::string part;
            std::istringstream in{text};
            while (std::getline(in, part, sep))
                parts.push_back(part);
            if (! text.empty() && text.back() == sep)
                parts.emplace_back();
            return parts;
        }

        auto parse_int(const std::string & word, const std::string & what) -> long
        {
            std::size_t used = 0;
            long value = 0;
            try {
                value = std::stol(word, &used);
            }
            catch (const std::exception &) {
                used = 0;
            }
            if (word.empty() || used != word.size())
                throw UsageError{what + ": expected an integer, got '" + word + "'"};
            return value;
        }

        auto read_graph6_file(const std::string & path) -> std::vector<CorpusItem>
        {
            std::ifstream in{path};
            if (! in)
                throw UsageError{"cannot open '" + path + "'"};
            return corpus_from_graph6(in, path);
        }

        auto named_from(const std::string & key, const std::vector<std::string> & words) -> Graph
        {
            std::vector<int> params;
            for (auto & w : words)
                params.push_back(static_cast<int>(parse_int(w, "parameter of '" + key + "'")));
            return named_graph(key, params);
        }

        auto vertex_list(const std::vector<Vertex> & vs) -> json
        {
            json out = json::array();
            for (auto v : vs)
                out.push_back(v);
            return out;
        }

        auto edge_list(const std::vector<Edge> & es) -> json
        {
            json out = json::array();
            for (auto [u, v] : es)
                out.push_back({u, v});
            return out;
        }

        auto parse_tree(const std::string & text) -> TreeEdges
        {
            TreeEdges tree;
            if (text.empty())
                return tree;
            for (auto & item : split(text, ',')) {
                auto ends = split(item, '-');
                if (ends.size() != 2)
                    throw UsageError{"--tree: expected edges like 0-1,1-2, got '" + item + "'"};
                tree.emplace_back(static_cast<Vertex>(parse_int(ends[0], "--tree")),
                    static_cast<Vertex>(parse_int(ends[1], "--tree")));
            }
            return tree;
        }

        auto parse_vertices(const std::string & text) -> std::vector<Vertex>
        {
            std::vector<Vertex> vs;
            if (text.empty())
                return vs;
            for (auto & item : split(text, ','))
                vs.push_back(static_cast<Vertex>(parse_int(item, "--side-a")));
            std::sort(vs.begin(), vs.end());
            return vs;
        }

        // exactly one of ref / named
        auto single_graph(const std::string & role, const std::string & ref,
            const std::vector<std::vector<std::string>> & named) -> Graph
        {
            if (! ref.empty() && ! named.empty())
                throw UsageError{"give " + role + " either as a reference or with --named, not both"};
            if (named.size() > 1)
                throw UsageError{"--named given more than once"};
            if (! named.empty())
                return load_named(named.front());
            if (ref.empty())
                throw UsageError{"missing graph " + role};
            return load_graph(ref);
        }

        auto named_id(const std::vector<std::string> & words) -> std::string
        {
            std::string id = "named";
            for (auto & w : words)
                id += ":" + w;
            return id;
        }

        auto write_output(const std::string & path, const std::string & text, std::ostream & out) -> void
        {
            if (path.empty()) {
                out << text;
                return;
            }
            std::ofstream file{path};
            if (! file)
                throw UsageError{"cannot write '" + path + "'"};
            file << text;
        }
    }

    auto load_graph(const std::string & ref) -> Graph
    {
        auto colon = ref.find(':');
        if (colon == std::string::npos)
            throw UsageError{"graph reference '" + ref + "' needs a named:, g6: or file: prefix"};
        auto kind = ref.substr(0, colon);
        auto body = ref.substr(colon + 1);
        if (kind == "named") {
            auto words = split(body, ':');
            if (words.empty() || words.front().empty())
                throw UsageError{"named: reference without a key"};
            return named_from(words.front(), {words.begin() + 1, words.end()});
        }
        if (kind == "g6")
            return parse_graph6(body);
        if (kind == "file") {
            auto items = read_graph6_file(body);
            if (items.size() != 1)
                throw UsageError{"'" + body + "' holds " + std::to_string(items.size()) +
                    " graphs; a single graph was expected"};
            if (items.front().error)
                throw UsageError{body + ": " + *items.front().error};
            return *items.front().graph;
        }
        throw UsageError{"unknown graph reference kind '" + kind + "'"};
    }

    auto load_named(const std::vector<std::string> & words) -> Graph
    {
        if (words.empty())
            throw UsageError{"--named needs a key"};
        return named_from(words.front(), {words.begin() + 1, words.end()});
    }

    auto to_json(const ArrangementCertificate & certificate) -> json
    {
        json out;
        out["arrangeable"] = certificate.arrangeable;
        if (certificate.bipartition) {
            out["side_a"] = vertex_list(certificate.bipartition->side_a);
            out["side_b"] = vertex_list(certificate.bipartition->side_b);
            out["tree"] = edge_list(certificate.tree);
        }
        json refutations = json::array();
        for (auto & r : certificate.refutations) {
            json v;
            v["b"] = r.violation.b;
            v["u"] = r.violation.u;
            v["v"] = r.violation.v;
            v["path"] = vertex_list(r.violation.path);
            v["endpoint_intersection"] = vertex_list(r.violation.endpoint_intersection);
            v["path_intersection"] = vertex_list(r.violation.path_intersection);
            json entry;
            entry["side_a"] = vertex_list(r.bipartition.side_a);
            entry["covering_set"] = vertex_list(r.covering_set);
            entry["candidate_tree"] = edge_list(r.candidate_tree);
            entry["tree_weight"] = r.tree_weight;
            entry["weight_bound"] = r.weight_bound;
            entry["violation"] = v;
            refutations.push_back(entry);
        }
        if (! certificate.arrangeable)
            out["refutations"] = refutations;
        return out;
    }

    auto to_json(const Section2Report & report) -> json
    {
        json identities = json::array();
        for (auto & r : report.identities) {
            json entry;
            entry["name"] = r.name;
            entry["passed"] = r.passed;
            entry["detail"] = r.detail;
            if (r.witness) {
                json w = json::array();
                for (auto x : *r.witness)
                    w.push_back(x == unassigned ? json(nullptr) : json(x));
                entry["witness"] = w;
            }
            identities.push_back(entry);
        }
        json out;
        out["all_passed"] = report.all_passed();
        out["identities"] = identities;
        return out;
    }

    auto to_json(const CorpusRecord & record, bool timings) -> json
    {
        json out;
        out["h_id"] = record.h_id;
        out["g_id"] = record.g_id;
        if (record.error) {
            out["error"] = *record.error;
            return out;
        }
        const auto & v = *record.verdict;
        out["holds"] = v.holds;
        out["lhs"] = to_decimal_string(v.lhs);
        out["rhs"] = to_decimal_string(v.rhs);
        out["margin"] = to_fraction_string(v.margin);
        out["hom_count"] = to_decimal_string(v.hom_count);
        out["removed_isolated"] = v.removed_isolated;
        out["h_graph6"] = record.h_graph6;
        out["g_graph6"] = record.g_graph6;
        if (timings)
            out["timings"] = {{"count_ms", record.count_ms}};
        return out;
    }

    auto to_json(const CorpusSummary & summary) -> json
    {
        json out;
        out["pairs"] = summary.pairs;
        out["holds"] = summary.holds;
        out["violations"] = summary.violations;
        out["errors"] = summary.errors;
        if (summary.min_margin) {
            out["min_margin"] = to_fraction_string(*summary.min_margin);
            out["min_margin_h_id"] = summary.min_margin_h_id;
            out["min_margin_g_id"] = summary.min_margin_g_id;
        }
        else
            out["min_margin"] = nullptr;
        json pairs = json::array();
        for (auto & [h, g] : summary.violating_pairs)
            pairs.push_back({{"h_id", h}, {"g_id", g}});
        out["violating_pairs"] = pairs;
        return {{"summary", out}};
    }

    auto to_json(const ClassificationRecord & record) -> json
    {
        json steps = json::array();
        for (auto & s : record.derivation) {
            json step;
            step["rule"] = s.rule;
            step["graph6"] = s.graph6;
            if (! s.tree_graph6.empty()) {
                step["tree"] = s.tree_graph6;
                step["factor"] = s.factor_graph6;
            }
            steps.push_back(step);
        }
        json out;
        out["graph6"] = record.graph6;
        out["status"] = to_string(record.status);
        out["removed_isolated"] = record.removed_isolated;
        out["derivation"] = steps;
        return out;
    }

    namespace
    {
        using NamedList = std::vector<std::vector<std::string>>;

        auto add_named(CLI::App * app, NamedList & target, const std::string & help) -> void
        {
            app->add_option("--named", target, help)->expected(1, -1)->type_name("KEY [INT...]");
        }

        auto cmd_check_arrangeable(const std::string & ref, const NamedList & named, std::ostream & out) -> int
        {
            auto h = single_graph("H", ref, named);
            auto certificate = decide_tree_arrangeable(h);
            out << to_json(certificate).dump() << '\n';
            return certificate.arrangeable ? success : negative;
        }

        auto cmd_count(const std::string & h_ref, const std::string & g_ref, const NamedList & named,
            const std::string & method, unsigned workers, std::ostream & out) -> int
        {
            auto h = single_graph("H", h_ref, named);
            auto g = load_graph(g_ref);
            BigCount count;
            if (method == "brute")
                count = count_hom_bruteforce(h, g, {workers});
            else if (method == "dp")
                count = count_hom_dp(h, g, tree_decomposition(h));
            else
                count = count_hom(h, g);
            out << to_decimal_string(count) << '\n';
            return success;
        }

        struct VerifyArgs
        {
            std::string h_ref;
            std::string h_file;
            NamedList named;
            std::vector<std::string> g_refs;
            std::string g_file;
            std::vector<std::string> random;
            std::string out_path;
            bool no_timings = false;
        };

        auto cmd_verify(const VerifyArgs & args, unsigned workers, std::ostream & out) -> int
        {
            std::vector<CorpusItem> hs;
            if (! args.h_file.empty()) {
                if (! args.h_ref.empty() || ! args.named.empty())
                    throw UsageError{"give H by one of --h, --named or --h-file"};
                hs = read_graph6_file(args.h_file);
            }
            else {
                auto id = args.named.empty() ? args.h_ref : named_id(args.named.front());
                hs.push_back({id, single_graph("H", args.h_ref, args.named), std::nullopt});
            }

            int sources = ! args.g_refs.empty() + ! args.g_file.empty() + ! args.random.empty();
            if (sources != 1)
                throw UsageError{"give G by exactly one of --g, --g-file or --random"};
            std::vector<CorpusItem> gs;
            if (! args.g_file.empty())
                gs = read_graph6_file(args.g_file);
            else if (! args.random.empty()) {
                if (args.random.size() != 4)
                    throw UsageError{"--random takes n p seed count"};
                auto n = parse_int(args.random[0], "--random n");
                auto seed = parse_int(args.random[2], "--random seed");
                auto count = parse_int(args.random[3], "--random count");
                if (n < 0 || seed < 0 || count < 0)
                    throw UsageError{"--random: n, seed and count must be non-negative"};
                gs = corpus_from_random(static_cast<int>(n), parse_rational(args.random[1]),
                    static_cast<std::uint64_t>(seed), static_cast<std::size_t>(count));
            }
            else
                for (auto & ref : args.g_refs)
                    gs.push_back({ref, load_graph(ref), std::nullopt});

            std::ofstream file;
            if (! args.out_path.empty()) {
                file.open(args.out_path);
                if (! file)
                    throw UsageError{"cannot write '" + args.out_path + "'"};
            }
            std::ostream & sink = args.out_path.empty() ? out : file;
            auto summary = corpus_run(hs, gs, {workers},
                [&](const CorpusRecord & r) { sink << to_json(r, ! args.no_timings).dump() << '\n'; });
            sink << to_json(summary).dump() << '\n';
            if (summary.errors > 0)
                return usage_error;
            return summary.violations > 0 ? negative : success;
        }

        struct ConstructArgs
        {
            std::string kind;
            std::vector<std::string> refs;
            NamedList named;
            std::string out_path;
            std::size_t psi_limit = PsiLimits{}.max_vertices;
        };

        auto cmd_construct(const ConstructArgs & args, std::ostream & out) -> int
        {
            std::vector<Graph> operands;
            for (auto & ref : args.refs)
                operands.push_back(load_graph(ref));
            for (auto & words : args.named)
                operands.push_back(load_named(words));

            auto expect = [&](std::size_t count) {
                if (operands.size() != count)
                    throw UsageError{"construct " + args.kind + " takes " + std::to_string(count) +
                        " graph operand(s), got " + std::to_string(operands.size())};
            };

            Graph result;
            if (args.kind == "product") {
                expect(2);
                result = cartesian_product(operands[0], operands[1]).graph;
            }
            else if (args.kind == "tensor") {
                expect(2);
                result = tensor_product(operands[0], operands[1]).graph;
            }
            else if (args.kind == "psi") {
                expect(2);
                result = psi(operands[0], operands[1], {args.psi_limit}).graph;
            }
            else if (args.kind == "phi") {
                expect(1);
                result = phi(operands[0]);
            }
            else if (args.kind == "split") {
                expect(1);
                result = degree_split(operands[0]).graph;
            }
            else if (args.kind == "named") {
                expect(1);
                result = operands[0];
            }
            else
                throw UsageError{"unknown construction '" + args.kind + "'"};

            write_output(args.out_path, write_graph6(result) + "\n", out);
            return success;
        }

        struct CertifyArgs
        {
            std::string h_ref;
            NamedList named;
            std::string g_ref;
            std::string eps = "1/10";
            std::string tree;
            std::string side_a;
        };

        auto cmd_certify_proof(const CertifyArgs & args, std::ostream & out) -> int
        {
            auto eps = parse_rational(args.eps);
            if (eps <= 0)
                throw UsageError{"--eps must be a positive rational, got " + args.eps};
            auto h = single_graph("H", args.h_ref, args.named);
            if (args.g_ref.empty())
                throw UsageError{"missing --g"};
            auto g = load_graph(args.g_ref);

            std::vector<Vertex> side_a;
            TreeEdges tree;
            if (args.tree.empty() && args.side_a.empty()) {
                auto certificate = decide_tree_arrangeable(h);
                if (! certificate.arrangeable)
                    throw UsageError{"H is not tree-arrangeable; give --side-a and --tree explicitly"};
                side_a = certificate.bipartition->side_a;
                tree = certificate.tree;
            }
            else {
                if (args.side_a.empty())
                    throw UsageError{"--tree needs --side-a"};
                side_a = parse_vertices(args.side_a);
                tree = parse_tree(args.tree);
            }

            auto report = check_section2_identities(h, side_a, tree, g, eps);
            auto fam = neighbourhood_family(h, side_a);
            json body;
            body["eps"] = to_fraction_string(eps);
            body["side_a"] = vertex_list(side_a);
            body["tree"] = edge_list(tree);
            body["tree_arrangeable"] = check_arrangement(fam, tree).arrangeable;
            body.update(to_json(report));
            out << body.dump() << '\n';
            return report.all_passed() ? success : negative;
        }

        struct ClassifyArgs
        {
            std::string h_ref;
            std::string h_file;
            NamedList named;
            int max_tree_factor = ClassifyOptions{}.max_tree_factor;
        };

        auto cmd_classify(const ClassifyArgs & args, std::ostream & out) -> int
        {
            std::vector<CorpusItem> hs;
            if (! args.h_file.empty())
                hs = read_graph6_file(args.h_file);
            else
                hs.push_back({args.named.empty() ? args.h_ref : named_id(args.named.front()),
                    single_graph("H", args.h_ref, args.named), std::nullopt});

            int status = success;
            for (auto & item : hs) {
                json line;
                line["id"] = item.id;
                if (item.error) {
                    line["error"] = *item.error;
                    status = usage_error;
                }
                else if (! is_bipartite(*item.graph)) {
                    line["error"] = "not bipartite";
                    status = usage_error;
                }
                else {
                    auto record = classify(*item.graph, {args.max_tree_factor});
                    line.update(to_json(record));
                    line["replayed"] = replay(record);
                }
                out << line.dump() << '\n';
            }
            return status;
        }
    }

    auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int
    {
        // --h names the pattern graph, so help is long-form only
        CLI::App app{"Exact tools for Sidorenko's inequality on small graphs", "sidorenko"};
        app.set_help_flag("--help", "print this help");
        app.require_subcommand(1);
        unsigned workers = 1;
        app.add_option("--workers", workers, "parallel workers for corpus runs")->check(CLI::Range(1U, 256U));

        std::string h_ref, g_ref;
        NamedList named;

        auto * arrange = app.add_subcommand("check-arrangeable", "decide tree-arrangeability, print a certificate");
        arrange->add_option("graph", h_ref, "graph reference");
        arrange->add_option("--h", h_ref, "graph reference");
        add_named(arrange, named, "catalogue graph");

        std::string method = "auto";
        auto * count = app.add_subcommand("count", "print |Hom(H, G)|");
        count->add_option("--h", h_ref, "pattern graph");
        count->add_option("--g", g_ref, "target graph")->required();
        count->add_option("--method", method, "auto, dp or brute")->check(CLI::IsMember({"auto", "dp", "brute"}));
        add_named(count, named, "pattern graph from the catalogue");

        VerifyArgs verify_args;
        auto * verify = app.add_subcommand("verify", "check the inequality over a corpus, JSON lines out");
        verify->add_option("--h", verify_args.h_ref, "pattern graph");
        verify->add_option("--h-file", verify_args.h_file, "graph6 file of patterns");
        add_named(verify, verify_args.named, "pattern graph from the catalogue");
        verify->add_option("--g", verify_args.g_refs, "target graph (repeatable)");
        verify->add_option("--g-file", verify_args.g_file, "graph6 file of targets");
        verify->add_option("--random", verify_args.random, "n p seed count")->expected(4);
        verify->add_option("--out", verify_args.out_path, "write records here instead of stdout");
        verify->add_flag("--no-timings", verify_args.no_timings, "omit timings from records");

        ConstructArgs construct_args;
        auto * construct = app.add_subcommand("construct", "build a graph, print graph6");
        construct->add_option("kind", construct_args.kind, "product, tensor, psi, phi, split or named")->required();
        construct->add_option("refs", construct_args.refs, "graph references");
        construct->add_option("--g", construct_args.refs, "graph reference (repeatable)");
        add_named(construct, construct_args.named, "catalogue graph (repeatable)");
        construct->add_option("--out", construct_args.out_path, "output file");
        construct->add_option("--psi-limit", construct_args.psi_limit, "largest psi vertex count allowed");

        CertifyArgs certify_args;
        auto * certify = app.add_subcommand("certify-proof", "check the normalisation identities exactly");
        certify->add_option("--h", certify_args.h_ref, "pattern graph");
        add_named(certify, certify_args.named, "pattern graph from the catalogue");
        certify->add_option("--g", certify_args.g_ref, "target graph")->required();
        certify->add_option("--eps", certify_args.eps, "positive rational p/q");
        certify->add_option("--side-a", certify_args.side_a, "comma-separated side A");
        certify->add_option("--tree", certify_args.tree, "tree on side A, e.g. 0-1,1-2");

        ClassifyArgs classify_args;
        auto * classify_cmd = app.add_subcommand("classify", "report what the closure rules certify");
        classify_cmd->add_option("--h", classify_args.h_ref, "pattern graph");
        classify_cmd->add_option("--h-file", classify_args.h_file, "graph6 file of patterns");
        add_named(classify_cmd, classify_args.named, "pattern graph from the catalogue");
        classify_cmd->add_option("--max-tree-factor", classify_args.max_tree_factor, "largest tree factor tried");

        for (auto * sub : app.get_subcommands({}))
            sub->fallthrough();

        std::vector<std::string> reversed(args.rbegin(), args.rend());
        if (! reversed.empty())
            reversed.pop_back();
        try {
            app.parse(reversed);
        }
        catch (const CLI::CallForHelp &) {
            out << app.help();
            return success;
        }
        catch (const CLI::ParseError & e) {
            err << "error: " << e.what() << '\n';
            return usage_error;
        }

        try {
            if (arrange->parsed())
                return cmd_check_arrangeable(h_ref, named, out);
            if (count->parsed())
                return cmd_count(h_ref, g_ref, named, method, workers, out);
            if (verify->parsed())
                return cmd_verify(verify_args, workers, out);
            if (construct->parsed())
                return cmd_construct(construct_args, out);
            if (certify->parsed())
                return cmd_certify_proof(certify_args, out);
            if (classify_cmd->parsed())
                return cmd_classify(classify_args, out);
        }
        catch (const std::exception & e) {
            err << "error: " << e.what() << '\n';
            return usage_error;
        }
        return usage_error;
    }
}
