#pragma once

#include <sidorenko/arrangeability.hh>
#include <sidorenko/graph.hh>
#include <sidorenko/proof_engine.hh>
#include <sidorenko/verify.hh>

#include <json.hpp>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace sidorenko::cli
{
    using json = nlohmann::ordered_json;

    enum exit_code : int
    {
        success = 0,
        negative = 1,
        usage_error = 2
    };

    class UsageError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// `named:<key>[:<int>...]`, `g6:<graph6>` or `file:<path>` (exactly one
    /// graph6 line).
    auto load_graph(const std::string & ref) -> Graph;

    /// `--named key ints...` operand.
    auto load_named(const std::vector<std::string> & words) -> Graph;

    auto to_json(const ArrangementCertificate & certificate) -> json;
    auto to_json(const Section2Report & report) -> json;
    auto to_json(const CorpusRecord & record, bool timings) -> json;
    auto to_json(const CorpusSummary & summary) -> json;
    auto to_json(const ClassificationRecord & record) -> json;

    /// Full command line including argv[0]; returns the process exit code.
    auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;
}
