#include "fixtures.hpp"
#include "oracles.hpp"

#include "cli.hpp"
#include "homforge/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace homforge;
using fixture::error_of;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string> & args)
{
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

Graph dimacs(const std::string & text)
{
    std::istringstream in(text);
    return read_dimacs(in);
}

std::filesystem::path scratch(const std::string & name)
{
    auto dir = std::filesystem::temp_directory_path() / "homforge_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_SUITE("io_cli") {

TEST_CASE("structure JSON round trip")
{
    std::mt19937_64 rng(59);
    Signature sig({{"E", 2}, {"P", 1}, {"T", 3}});
    for (int trial = 0; trial < 20; ++trial) {
        auto a = oracle::random_structure(rng, sig, 1 + trial % 4, 0.3);
        CHECK(structure_from_json(structure_to_json(a)) == a);
        CHECK(structure_from_json(Json::parse(structure_to_json(a).dump())) == a);
    }
    CHECK(structure_from_json(structure_to_json(typed_grid(2, 3))) == typed_grid(2, 3));

    CHECK(error_of([] { structure_from_json(Json::parse(R"({"universe": ["a"]})")); }) == ErrorCode::ParseError);
    CHECK(error_of([] {
        structure_from_json(Json::parse(
            R"({"signature": [{"name": "E", "arity": 2}], "universe": ["a"], "relations": {"E": [["a", "b"]]}})"));
    }) == ErrorCode::UnknownElement);
}

TEST_CASE("DIMACS")
{
    auto g = dimacs("c a comment\np edge 3 2\ne 1 2\ne 2 3\n");
    CHECK(g.order() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.name(0) == "1");

    CHECK(dimacs("p edge 2 3\ne 1 2\ne 2 1\ne 1 2\n").edge_count() == 1);
    CHECK(dimacs("p col 2 1\ne 1 2\n").edge_count() == 1);
    CHECK(error_of([] { dimacs("p edge 2 1\ne 1 1\n"); }) == ErrorCode::LoopEdge);
    CHECK(error_of([] { dimacs("p edge 2 1\ne 1 3\n"); }) == ErrorCode::UnknownElement);
    CHECK(error_of([] { dimacs("e 1 2\n"); }) == ErrorCode::ParseError);
    CHECK(error_of([] { dimacs("p edge x 1\n"); }) == ErrorCode::ParseError);
    CHECK(error_of([] { dimacs("p edge 2 1\nq 1 2\n"); }) == ErrorCode::ParseError);

    std::ostringstream out;
    write_dimacs(out, grid_graph(2, 3));
    auto back = dimacs(out.str());
    CHECK(back.order() == 6);
    CHECK(back.edges() == grid_graph(2, 3).edges());
}

TEST_CASE("decomposition and minor JSON")
{
    auto grid = grid_graph(3, 3);
    auto d = fixture::grid_window_decomposition();
    auto back = decomposition_from_json(decomposition_to_json(d, grid), grid);
    CHECK(back.bags == d.bags);
    CHECK(validate_decomposition(grid, back));

    auto m = fixture::minor_example();
    auto mm = minor_map_from_json(minor_map_to_json(m), m.source, m.target);
    CHECK(mm.assignment == m.assignment);

    auto k2 = clique_structure(2);
    auto j = homomorphism_to_json(Homomorphism{{1, 0}}, k2, k2);
    CHECK(j["map"]["0"] == "1");
}

TEST_CASE("generators")
{
    CHECK(generate("clique:4") == clique_structure(4));
    CHECK(generate("typed_grid:3") == typed_grid(3, 3));
    CHECK(generate("typed_grid:2:3") == typed_grid(2, 3));
    CHECK(structure_to_graph(generate("grid:2:3")) == grid_graph(2, 3));
    CHECK(is_generator_spec("random:5:0.5"));
    CHECK_FALSE(is_generator_spec("graph.json"));
    CHECK(error_of([] { generate("moebius:3"); }) == ErrorCode::InvalidArgument);
    CHECK(error_of([] { generate("clique:x"); }) == ErrorCode::InvalidArgument);
    CHECK(error_of([] { generate("random:5:1.5"); }) == ErrorCode::InvalidArgument);

    CHECK(random_graph(8, 0.5, 3) == random_graph(8, 0.5, 3));
    CHECK(random_graph(8, 0.0, 3).edge_count() == 0);
    CHECK(random_graph(8, 1.0, 3).edge_count() == 28);
    CHECK(generate("random:6:0.4", 9) == generate("random:6:0.4:9"));
}

TEST_CASE("files by extension")
{
    auto json = scratch("k3.json").string();
    auto dim = scratch("k3.dimacs").string();
    save_structure(json, clique_structure(3));
    save_structure(dim, clique_structure(3));
    CHECK(load_structure(json) == clique_structure(3));
    CHECK(load_graph(dim).edge_count() == 3);
    CHECK(error_of([] { load_structure("/nonexistent/file.json"); }).has_value());
}

TEST_CASE("cli exit codes")
{
    CHECK(run({"hom", "find", "clique:2", "clique:3"}).code == cli::yes);
    CHECK(run({"hom", "find", "clique:3", "clique:2"}).code == cli::no);
    CHECK(run({"hom", "find", "--td", "grid:3:3", "clique:2"}).code == cli::yes);
    CHECK(run({"hom", "count", "clique:2", "clique:3"}).out == "6\n");
    CHECK(run({}).code == cli::usage);
    CHECK(run({"hom", "find", "clique:2"}).code == cli::usage);
    CHECK(run({"hom", "find", "clique:3", "typed_grid:2"}).code == cli::usage);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"--budget-ms", "1", "hom", "find", "clique:12", "clique:11"}).code == cli::inconclusive);
    CHECK(run({"minor", "find", "clique:4", "grid:3:3"}).code == cli::yes);
    CHECK(run({"minor", "grid", "clique:3", "-k", "2"}).code == cli::no);

    auto err = run({"--json", "hom", "find", "clique:3", "typed_grid:2"});
    CHECK(Json::parse(err.out)["error"] == "DissimilarStructures");
}

TEST_CASE("cli JSON output is deterministic")
{
    auto a = run({"--json", "--seed", "7", "gen", "random:7:0.5"});
    auto b = run({"--json", "--seed", "7", "gen", "random:7:0.5"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(run({"--json", "--seed", "8", "gen", "random:7:0.5"}).out != a.out);

    auto tw1 = run({"--json", "tw", "exact", "grid:3:3"});
    CHECK(tw1.out == run({"--json", "tw", "exact", "grid:3:3"}).out);
    CHECK(Json::parse(tw1.out)["width"] == 3);
}

TEST_CASE("cli gen then tw")
{
    for (auto ext : {".dimacs", ".json"}) {
        auto path = scratch(std::string("g") + ext).string();
        REQUIRE(run({"gen", "grid", "3", "3", "-o", path}).code == 0);
        auto r = run({"tw", "exact", path});
        CHECK(r.code == 0);
        CHECK(r.out.rfind("3", 0) == 0);
    }
    auto out = scratch("tw.json").string();
    REQUIRE(run({"tw", "heur", "grid:3:4", "-o", out}).code == 0);
    auto d = decomposition_from_json(load_json(out), grid_graph(3, 4));
    CHECK(validate_decomposition(grid_graph(3, 4), d));
}

TEST_CASE("cli reductions and verification")
{
    auto m = scratch("m.json").string();
    CHECK(run({"reduce", "grohe", "--A", "typed_grid:3", "--G", "clique:4", "-k", "3", "-o", m}).code == 0);
    CHECK(load_structure(m).size() == 108);

    auto x = scratch("x.json").string();
    CHECK(run({"reduce", "pcsp", "--template", "grid:2:3", "--G", "clique:2", "-o", x}).code == 0);
    CHECK(run({"hom", "find", "typed_grid:3", x}).code == cli::yes);

    auto h = scratch("h.dimacs").string();
    CHECK(run({"reduce", "amplify", "--G", "clique:3", "-k", "3", "-l", "5", "-o", h}).code == 0);
    CHECK(load_graph(h).edge_count() == 15);

    auto v = run({"--json", "verify", "--kind", "pcsp", "--template", "grid:2:3", "--max-n", "3"});
    CHECK(v.code == 0);
    CHECK(Json::parse(v.out)["counterexamples"].size() == 0);
    CHECK(run({"verify", "--kind", "amplify", "-k", "2", "-l", "3", "--max-n", "4"}).code == 0);
    CHECK(run({"verify", "--kind", "grohe", "--A", "typed_grid:3", "-k", "3", "--max-n", "3"}).code == 0);
    CHECK(run({"verify", "--kind", "nonsense", "--max-n", "3"}).code == cli::usage);
}

} // TEST_SUITE
