#include "fixtures.hpp"
#include "oracles.hpp"

#include "homforge/solver.hpp"
#include "homforge/treewidth.hpp"

#include <doctest.h>

#include <cmath>

using namespace homforge;
using fixture::error_of;

namespace {

std::vector<std::vector<Element>> collect(HomEnumerator e)
{
    std::vector<std::vector<Element>> out;
    while (auto h = e.next())
        out.push_back(h->image);
    return out;
}

} // namespace

TEST_SUITE("solver") {

TEST_CASE("find_hom on small cliques and cycles")
{
    auto k3 = clique_structure(3), k2 = clique_structure(2);
    auto r = find_hom(k3, k3);
    REQUIRE(r.found());
    CHECK(is_homomorphism(r.homomorphism(), k3, k3));
    CHECK(find_hom(k3, k2).none());

    auto c5 = fixture::cycle(5);
    auto c = find_hom(c5, k3);
    REQUIRE(c.found());
    CHECK(is_homomorphism(c.homomorphism(), c5, k3));
    CHECK(oracle::hom_exists(c5, k3));
    CHECK_FALSE(oracle::hom_exists(c5, k2));
    CHECK(find_hom(c5, k2).none());

    CHECK(error_of([&] { find_hom(k3, typed_grid(2, 2)); }) == ErrorCode::DissimilarStructures);
}

TEST_CASE("empty source and empty target")
{
    auto empty = Structure(graph_signature(), {}, {{}});
    CHECK(find_hom(empty, clique_structure(2)).found());
    CHECK(find_hom(fixture::edgeless(2), empty).none());
    CHECK(find_hom(empty, empty).found());
    CHECK(count_homs(fixture::edgeless(2), fixture::edgeless(3)) == 9);
}

TEST_CASE("enumeration order and counts")
{
    CHECK(count_homs(clique_structure(2), clique_structure(3)) == 6);
    CHECK(count_homs(clique_structure(3), clique_structure(2)) == 0);

    auto a = typed_grid(2, 2), b = typed_grid(3, 3);
    auto homs = collect(enumerate_homs(a, b));
    CHECK(homs.size() == 4);
    CHECK(homs == oracle::all_homs(a, b));
    CHECK(oracle::count_homs(a, b) == 4);
}

TEST_CASE("enumeration is resumable and replayable")
{
    auto a = fixture::path(3), x = clique_structure(3);
    auto first = collect(enumerate_homs(a, x));
    auto second = collect(enumerate_homs(a, x));
    CHECK(first == second);
    CHECK(first == oracle::all_homs(a, x));
}

TEST_CASE("budgets are distinct from refutation")
{
    SearchBudget tiny;
    tiny.node_limit = 1;
    auto r = find_hom(clique_structure(6), clique_structure(5), tiny);
    CHECK(r.budget_exceeded());
    CHECK_FALSE(r.none());

    SearchBudget zero;
    zero.node_limit = 0;
    CHECK(error_of([&] { find_hom(clique_structure(2), clique_structure(2), zero); }) == ErrorCode::InvalidArgument);
    SearchBudget negative;
    negative.time_limit = std::chrono::milliseconds(-5);
    CHECK(error_of([&] { BudgetTracker t(negative); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("injective search")
{
    SearchOptions inj;
    inj.injective = true;
    auto p3 = fixture::path(3);
    CHECK(find_hom(p3, clique_structure(2)).found());
    CHECK(find_hom(p3, clique_structure(2), inj).none());
    CHECK(find_hom(p3, clique_structure(3), inj).found());
}

TEST_CASE("tree-decomposition search")
{
    auto p = fixture::path(6);
    auto d = heuristic_decomposition(gaifman_graph(p));
    CHECK(d.width() == 1);
    auto r = find_hom_td(p, clique_structure(2), d);
    REQUIRE(r.found());
    CHECK(is_homomorphism(r.homomorphism(), p, clique_structure(2)));

    auto grid = grid_structure(3, 3);
    auto windows = fixture::grid_window_decomposition();
    auto g = find_hom_td(grid, clique_structure(2), windows);
    REQUIRE(g.found());
    CHECK(is_homomorphism(g.homomorphism(), grid, clique_structure(2)));

    CHECK(find_hom_td(clique_structure(4), clique_structure(3), heuristic_decomposition(complete_graph(4))).none());

    auto bad = make_decomposition({{0, 1}, {2}}, {{0, 1}});
    CHECK(error_of([&] { find_hom_td(clique_structure(3), clique_structure(3), bad); })
        == ErrorCode::InvalidDecomposition);
}

TEST_CASE("tree-decomposition search agrees with backtracking and brute force")
{
    std::mt19937_64 rng(2024);
    Signature sig({{"E", 2}, {"T", 3}});
    int checked = 0;
    while (checked < 60) {
        std::uniform_int_distribution<std::size_t> na(1, 7), nx(1, 4);
        auto a = oracle::random_structure(rng, sig, na(rng), 0.08);
        auto x = oracle::random_structure(rng, sig, nx(rng), 0.45);
        auto d = heuristic_decomposition(gaifman_graph(a));
        if (d.width() > 3)
            continue;
        ++checked;
        auto td = find_hom_td(a, x, d);
        auto bt = find_hom(a, x);
        CHECK(td.found() == bt.found());
        CHECK(bt.found() == oracle::hom_exists(a, x));
        if (td.found())
            CHECK(is_homomorphism(td.homomorphism(), a, x));
    }
}

TEST_CASE("completeness against the exhaustive sweep")
{
    // Pairs with |A| * log2 |X| <= 20.
    std::mt19937_64 rng(11);
    Signature sig({{"E", 2}, {"P", 1}});
    for (int trial = 0; trial < 150; ++trial) {
        std::uniform_int_distribution<std::size_t> nx(1, 5);
        auto xs = nx(rng);
        auto max_a = std::max<std::size_t>(1, static_cast<std::size_t>(20.0 / std::max(1.0, std::log2(double(xs)))));
        std::uniform_int_distribution<std::size_t> na(1, std::min<std::size_t>(max_a, 8));
        auto a = oracle::random_structure(rng, sig, na(rng), 0.25);
        auto x = oracle::random_structure(rng, sig, xs, 0.5);
        auto r = find_hom(a, x);
        CHECK(r.found() == oracle::hom_exists(a, x));
        if (r.found())
            CHECK(is_homomorphism(r.homomorphism(), a, x));
        CHECK(count_homs(a, x) == oracle::count_homs(a, x));
    }
}

TEST_CASE("counts ignore element names and order")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = oracle::random_structure(rng, oracle::digraph_signature(), 4, 0.3);
        auto x = oracle::random_structure(rng, oracle::digraph_signature(), 4, 0.5);
        std::vector<Element> order{3, 1, 0, 2};
        CHECK(count_homs(reorder_universe(a, order), reorder_universe(x, order)) == count_homs(a, x));
    }
}

TEST_CASE("cliques")
{
    CHECK(has_k_clique(complete_graph(4), 4));
    CHECK_FALSE(has_k_clique(complete_graph(4), 5));
    auto g = fixture::minor_target();
    CHECK(has_k_clique(g, 2));
    CHECK_FALSE(has_k_clique(g, 3));
    CHECK_FALSE(oracle::has_clique(g, 3));
    CHECK(error_of([] { has_k_clique(complete_graph(2), 0); }) == ErrorCode::InvalidArgument);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        auto r = oracle::random_graph(rng, 1 + trial % 7, 0.55);
        for (std::size_t k = 1; k <= 4; ++k) {
            bool expected = oracle::has_clique(r, k);
            CHECK(has_k_clique(r, k) == expected);
            CHECK(find_hom(clique_structure(k), graph_to_structure(r)).found() == expected);
            auto c = find_k_clique(r, k);
            CHECK(c.has_value() == expected);
            if (c)
                for (std::size_t i = 0; i < c->size(); ++i)
                    for (std::size_t j = i + 1; j < c->size(); ++j)
                        CHECK(r.adjacent((*c)[i], (*c)[j]));
        }
    }
}

} // TEST_SUITE
