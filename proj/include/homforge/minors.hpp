#pragma once

#include "homforge/solver.hpp"
#include "homforge/structure.hpp"

#include <optional>
#include <vector>

namespace homforge {

/// Branch-set assignment from the vertices of `source` to vertex sets of
/// `target`. `assignment[v]` is a sorted list of target vertices.
struct MinorMap {
    Graph source;
    Graph target;
    std::vector<std::vector<Element>> assignment;
};

/// Non-empty connected branch sets, pairwise disjoint, and every source edge
/// realised by a target edge between the corresponding branch sets.
bool validate_minor_map(const MinorMap & m);
/// Union of the branch sets is the whole target.
bool is_onto(const MinorMap & m);

/// Absorbs uncovered target vertices into adjacent branch sets until no more
/// can be absorbed. The result is onto whenever every target component meets a
/// branch set (always, for connected targets).
MinorMap make_onto(MinorMap m);

inline constexpr std::size_t minor_search_limit = 64;

struct MinorSearchResult {
    std::optional<MinorMap> map;
    bool budget_exceeded = false;
};

/// Branch-and-bound over connected branch sets, smallest sets first. Absence
/// is reported only after exhaustive search. Throws TooLarge for targets over
/// `minor_search_limit` vertices.
MinorSearchResult find_minor_map(const Graph & source, const Graph & target,
    const SearchBudget & budget = SearchBudget::unlimited());

MinorSearchResult find_grid_minor(const Graph & g, std::size_t k,
    const SearchBudget & budget = SearchBudget::unlimited());

struct GridCell {
    std::size_t row = 0;
    std::size_t col = 0;

    friend bool operator==(const GridCell &, const GridCell &) = default;
    friend auto operator<=>(const GridCell &, const GridCell &) = default;
};

/// Map from the universe of a structure to {0..k-1}^2 (0-based indexing).
/// The left component is `row`, the right component is `col`.
struct GridLikeMapping {
    std::size_t k = 0;
    std::vector<GridCell> cells; ///< indexed by source element
};

/// Surjective onto {0..k-1}^2, and every row preimage and every column
/// preimage is connected in the Gaifman graph of `source`.
bool validate_gridlike(const Structure & source, const GridLikeMapping & rho);

/// `rho` after `h`: element c of h's source goes to rho(h(c)).
GridLikeMapping compose(const GridLikeMapping & rho, const Homomorphism & h);

/// Reads the grid coordinates of a grid_graph(k, l) vertex; throws
/// NotAGridSource if `g` is not exactly grid_graph(k, l).
std::vector<GridCell> grid_coordinates(const Graph & g, std::size_t k, std::size_t l);

/// Sends each element c to the unique cell (i, j) whose branch set contains c. Requires an onto
/// minor map from grid_graph(k, k) to gaifman_graph(c). Throws NotOnto,
/// NotAGridSource, InvalidMinorMap.
GridLikeMapping minor_map_to_gridlike(const MinorMap & m, const Structure & c);

/// Identity-on-vertices minor map from grid_graph(k, l) onto the Gaifman graph
/// of typed_grid(k, l).
MinorMap identity_grid_minor(std::size_t k, std::size_t l);

} // namespace homforge
