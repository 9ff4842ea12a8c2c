#include "../tools/cli.hh"

#include <sidorenko/constructions.hh>

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sidorenko;

namespace
{
    struct Outcome
    {
        int code;
        std::string out;
        std::string err;
    };

    auto call(std::vector<std::string> args) -> Outcome
    {
        args.insert(args.begin(), "sidorenko");
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return {code, out.str(), err.str()};
    }

    auto lines(const std::string & text) -> std::vector<std::string>
    {
        std::vector<std::string> out;
        std::istringstream in{text};
        for (std::string line; std::getline(in, line);)
            out.push_back(line);
        return out;
    }

    auto scratch(const std::string & name, const std::string & content) -> std::string
    {
        auto path = std::filesystem::temp_directory_path() / ("sidorenko_cli_" + name);
        std::ofstream{path} << content;
        return path.string();
    }
}

TEST_CASE("check-arrangeable exit codes")
{
    auto k33 = call({"check-arrangeable", "--named", "complete_bipartite", "3", "3"});
    CHECK(k33.code == 0);
    auto body = cli::json::parse(k33.out);
    CHECK(body["arrangeable"] == true);
    CHECK(body["tree"].size() == 2);

    auto c6 = call({"check-arrangeable", "--named", "cycle", "6"});
    CHECK(c6.code == 1);
    body = cli::json::parse(c6.out);
    CHECK(body["arrangeable"] == false);
    CHECK(! body["refutations"].empty());
    CHECK(body["refutations"][0].contains("weight_bound"));

    auto c5 = call({"check-arrangeable", "--named", "cycle", "5"});
    CHECK(c5.code == 2);
    CHECK(! c5.err.empty());

    CHECK(call({"check-arrangeable", "g6:D?{"}).code == 0);
    CHECK(call({"check-arrangeable", "g6:D?"}).code == 2);
    CHECK(call({"check-arrangeable"}).code == 2);
    CHECK(call({"no-such-command"}).code == 2);
}

TEST_CASE("count")
{
    auto c4 = call({"count", "--h", "named:cycle:4", "--g", "named:complete:3"});
    CHECK(c4.code == 0);
    CHECK(c4.out == "18\n");
    CHECK(call({"count", "--h", "named:path:2", "--g", "named:complete:3"}).out == "6\n");
    CHECK(call({"count", "--h", "g6:Cr", "--g", "g6:Bw", "--method", "brute"}).out == "18\n");
    CHECK(call({"count", "--h", "g6:Cr", "--g", "g6:Bw", "--method", "dp"}).out == "18\n");
    CHECK(call({"count", "--h", "named:grid:3:4", "--g", "named:complete:12", "--method", "brute"}).code == 2);

    auto file = scratch("count.g6", ">>graph6<<Cr\n");
    CHECK(call({"count", "--h", "file:" + file, "--g", "named:complete:3"}).out == "18\n");
    CHECK(call({"count", "--h", "Cr", "--g", "named:complete:3"}).code == 2);
}

TEST_CASE("verify")
{
    auto q3 = call({"verify", "--h", "named:hypercube:3", "--random", "6", "1/2", "42", "100", "--no-timings"});
    CHECK(q3.code == 0);
    auto rows = lines(q3.out);
    REQUIRE(rows.size() == 101);
    for (std::size_t i = 0; i < 100; ++i) {
        auto record = cli::json::parse(rows[i]);
        CHECK(record["holds"] == true);
        CHECK(! record.contains("timings"));
    }
    auto summary = cli::json::parse(rows.back())["summary"];
    CHECK(summary["pairs"] == 100);
    CHECK(summary["holds"] == 100);

    auto k2 = call({"verify", "--h", "named:complete_bipartite:1:1", "--g", "named:complete:4"});
    auto record = cli::json::parse(lines(k2.out).front());
    CHECK(record["margin"] == "0/1");
    CHECK(record["lhs"] == record["rhs"]);
    CHECK(record.contains("timings"));

    auto file = scratch("verify.g6", "Bw\nnot graph6\nD?{\n");
    auto mixed = call({"verify", "--h", "named:path:3", "--g-file", file, "--no-timings"});
    CHECK(mixed.code == 2);
    rows = lines(mixed.out);
    REQUIRE(rows.size() == 4);
    CHECK(cli::json::parse(rows[1]).contains("error"));
    CHECK(cli::json::parse(rows[2])["holds"] == true);

    CHECK(call({"verify", "--h", "named:path:2", "--g-file", scratch("empty.g6", "")}).code == 0);
    CHECK(call({"verify", "--h", "named:cycle:5", "--g", "named:complete:3"}).code == 2);
    CHECK(call({"verify", "--h", "named:path:2", "--random", "5", "0.5", "1", "3"}).code == 2);
    CHECK(call({"verify", "--h", "named:path:2"}).code == 2);
}

TEST_CASE("verify output does not depend on the worker count")
{
    std::vector<std::string> base{"verify", "--h", "named:cycle:4", "--random", "5", "1/2", "7", "40", "--no-timings"};
    auto one = call(base);
    for (auto workers : {"2", "4"}) {
        auto args = base;
        args.insert(args.end(), {"--workers", workers});
        CHECK(call(args).out == one.out);
    }
}

TEST_CASE("construct")
{
    auto phi = call({"construct", "phi", "--named", "cycle", "5"});
    CHECK(phi.code == 0);
    CHECK(is_isomorphic(parse_graph6(lines(phi.out).front()), named::k55_minus_c10()));

    auto product = call({"construct", "product", "--named", "path", "2", "--named", "path", "2"});
    CHECK(is_isomorphic(parse_graph6(lines(product.out).front()), named::cycle(4)));

    auto g = random_gnp(7, parse_rational("1/2"), 3);
    auto split = call({"construct", "split", "--g", "g6:" + write_graph6(g)});
    CHECK(parse_graph6(lines(split.out).front()).edge_count() == g.edge_count());

    auto psi = call({"construct", "psi", "--named", "path", "2", "--named", "complete", "3"});
    CHECK(parse_graph6(lines(psi.out).front()).size() == 6);
    CHECK(call({"construct", "psi", "--named", "path", "3", "--named", "complete", "8", "--psi-limit", "10"}).code == 2);

    auto tensor = call({"construct", "tensor", "g6:A_", "g6:A_"});
    CHECK(parse_graph6(lines(tensor.out).front()).edge_count() == 2);
    CHECK(call({"construct", "named", "--named", "grid", "2", "3"}).out == write_graph6(named::grid({2, 3})) + "\n");
    CHECK(call({"construct", "bogus", "--named", "path", "2"}).code == 2);
}

TEST_CASE("certify-proof")
{
    auto star = call({"certify-proof", "--named", "star", "2", "--g", "named:path:2", "--eps", "1/10"});
    CHECK(star.code == 0);
    auto body = cli::json::parse(star.out);
    CHECK(body["all_passed"] == true);
    CHECK(body["identities"].size() == 4);

    auto control = call({"certify-proof", "--named", "path", "7", "--g", "named:path:3", "--side-a", "1,3,5",
        "--tree", "1-5,5-3"});
    CHECK(control.code == 1);
    body = cli::json::parse(control.out);
    CHECK(body["tree_arrangeable"] == false);
    for (auto & identity : body["identities"])
        if (identity["name"] == "observable-identity") {
            CHECK(identity["passed"] == false);
            CHECK(identity["witness"].size() == 7);
        }

    CHECK(call({"certify-proof", "--named", "star", "2", "--g", "named:path:2", "--eps", "0/1"}).code == 2);
    CHECK(call({"certify-proof", "--named", "star", "2", "--g", "named:path:2", "--eps", "0.1"}).code == 2);
    CHECK(call({"certify-proof", "--named", "cycle", "6", "--g", "named:path:2"}).code == 2);
}

TEST_CASE("classify")
{
    auto grid = call({"classify", "--named", "grid", "3", "4"});
    CHECK(grid.code == 0);
    auto body = cli::json::parse(grid.out);
    CHECK(body["id"] == "named:grid:3:4");
    CHECK(body["status"] == "closure-derived");
    CHECK(body["replayed"] == true);

    auto many = call({"classify", "--h-file", scratch("classify.g6", "Bg\nCr\nBw\n")});
    CHECK(many.code == 2);
    auto rows = lines(many.out);
    REQUIRE(rows.size() == 3);
    CHECK(cli::json::parse(rows[0])["status"] == "tree-arrangeable");
    CHECK(cli::json::parse(rows[1])["status"] == "tree-arrangeable");
    CHECK(cli::json::parse(rows[2]).contains("error"));
    CHECK(call({"classify", "--named", "cycle", "5"}).code == 2);
}
