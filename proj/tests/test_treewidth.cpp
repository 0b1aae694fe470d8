#include "fixtures.hpp"
#include "oracles.hpp"

#include "homforge/treewidth.hpp"

#include <doctest.h>

using namespace homforge;
using fixture::error_of;

TEST_SUITE("treewidth") {

TEST_CASE("window decomposition of the 3x3 grid")
{
    auto grid = grid_graph(3, 3);
    auto d = fixture::grid_window_decomposition();
    CHECK(validate_decomposition(grid, d));
    CHECK(d.width() == 3);
    CHECK(grid_decomposition(3, 3).bags == fixture::grid_windows());
    CHECK(validate_decomposition(grid, grid_decomposition(3, 3)));
}

TEST_CASE("removing a window breaks the decomposition")
{
    auto grid = grid_graph(3, 3);
    // Emptying the second window leaves the edge between vertices 1 and 4 uncovered.
    auto bags = fixture::grid_windows();
    bags[1].clear();
    CHECK_FALSE(validate_decomposition(grid, make_decomposition(bags, fixture::path_edges(6))));

    // Splicing it out of the path.
    auto spliced = fixture::grid_windows();
    spliced.erase(spliced.begin() + 1);
    CHECK_FALSE(validate_decomposition(grid, make_decomposition(spliced, fixture::path_edges(5))));
}

TEST_CASE("single bag and degenerate cases")
{
    auto g = fixture::minor_target();
    std::vector<Element> all(g.order());
    for (Element v = 0; v < g.order(); ++v)
        all[v] = v;
    auto one = make_decomposition({all}, {});
    CHECK(validate_decomposition(g, one));
    CHECK(one.width() == static_cast<int>(g.order()) - 1);

    auto empty = Graph(std::vector<std::string>{}, {});
    CHECK(exact_treewidth(empty).width == -1);

    CHECK(error_of([&] { validate_decomposition(g, make_decomposition({all, all, all}, {{0, 1}, {1, 2}, {2, 0}})); })
        == ErrorCode::MalformedTree);
    CHECK(error_of([&] { validate_decomposition(g, make_decomposition({all, all}, {})); }) == ErrorCode::MalformedTree);

    // A vertex missing from every bag.
    CHECK_FALSE(validate_decomposition(g, make_decomposition({{0, 1, 2, 3}}, {})));
    // Occurrences of vertex 0 not connected in the tree.
    CHECK_FALSE(validate_decomposition(complete_graph(2), make_decomposition({{0, 1}, {1}, {0}}, {{0, 1}, {1, 2}})));
}

TEST_CASE("exact treewidth of known families")
{
    CHECK(exact_treewidth(gaifman_graph(fixture::path(7))).width == 1);
    CHECK(exact_treewidth(fixture::minor_target()).width == 2);
    CHECK(exact_treewidth(complete_graph(4)).width == 3);
    CHECK(exact_treewidth(grid_graph(3, 3)).width == 3);
    for (std::size_t k = 2; k <= 4; ++k)
        CHECK(exact_treewidth(grid_graph(k, k)).width == static_cast<int>(k));
    CHECK(exact_treewidth(gaifman_graph(fixture::cycle(6))).width == 2);
    CHECK(exact_treewidth(fixture::edgeless(4)).width == 0);

    auto r = exact_treewidth(grid_graph(3, 4));
    CHECK(r.width == 3);
    CHECK(validate_decomposition(grid_graph(3, 4), r.decomposition));
    CHECK(r.decomposition.width() == r.width);

    CHECK(error_of([] { exact_treewidth(complete_graph(19)); }) == ErrorCode::TooLarge);
}

TEST_CASE("heuristic decompositions")
{
    auto k6 = complete_graph(6);
    auto d = heuristic_decomposition(k6);
    CHECK(d.width() == 5);
    CHECK(validate_decomposition(k6, d));

    auto big = grid_graph(5, 6);
    auto h = heuristic_decomposition(big);
    CHECK(validate_decomposition(big, h));
    CHECK(h.width() >= 5);
}

TEST_CASE("grid path decompositions")
{
    CHECK(grid_decomposition(1, 5).width() == 1);
    CHECK(validate_decomposition(grid_graph(1, 5), grid_decomposition(1, 5)));
    CHECK(grid_decomposition(2, 4).width() == 2);
    CHECK(validate_decomposition(grid_graph(2, 4), grid_decomposition(2, 4)));
    CHECK(validate_decomposition(grid_graph(4, 4), grid_decomposition(4, 4)));
    CHECK(error_of([] { grid_decomposition(4, 2); }) == ErrorCode::InvalidDimension);
}

TEST_CASE("property: exact treewidth matches elimination brute force")
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 80; ++trial) {
        auto g = oracle::random_graph(rng, 1 + trial % 7, 0.45);
        auto r = exact_treewidth(g);
        CHECK(r.width == oracle::treewidth(g));
        CHECK(validate_decomposition(g, r.decomposition));
        CHECK(r.decomposition.width() == r.width);
        auto h = heuristic_decomposition(g);
        CHECK(validate_decomposition(g, h));
        CHECK(h.width() >= r.width);

        // Deleting edges never raises the width.
        auto edges = g.edges();
        if (! edges.empty()) {
            edges.pop_back();
            std::vector<std::string> names;
            for (Element v = 0; v < g.order(); ++v)
                names.push_back(g.name(v));
            CHECK(exact_treewidth(Graph(names, edges)).width <= r.width);
        }
    }
}

} // TEST_SUITE
