#pragma once

#include "homforge/structure.hpp"

#include <vector>

namespace homforge {

/// Tree plus a bag of graph vertices per tree node. Tree node t carries
/// `bags[t]`, a sorted list of vertex indices of the decomposed graph.
struct TreeDecomposition {
    Graph tree;
    std::vector<std::vector<Element>> bags;

    /// max bag size - 1; -1 when every bag is empty.
    int width() const;
};

int width(const TreeDecomposition & d);

/// Builds a decomposition from tree edges over nodes 0..bags.size()-1.
/// Bags are sorted and deduplicated.
TreeDecomposition make_decomposition(std::vector<std::vector<Element>> bags,
    const std::vector<std::pair<Element, Element>> & tree_edges);

bool is_tree(const Graph & g);

/// True iff every vertex occurs in a non-empty connected set of bags and every
/// edge lies inside some bag. Throws MalformedTree if `d.tree` is not a tree or
/// the bag list does not match it.
bool validate_decomposition(const Graph & g, const TreeDecomposition & d);

struct TreewidthResult {
    int width = -1;
    TreeDecomposition decomposition;
};

inline constexpr std::size_t exact_treewidth_limit = 18;

/// Subset dynamic program over elimination orderings. Throws TooLarge above
/// `exact_treewidth_limit` vertices.
TreewidthResult exact_treewidth(const Graph & g);

/// Min-fill elimination ordering, lowest index on ties.
TreeDecomposition heuristic_decomposition(const Graph & g);

/// Decomposition induced by eliminating vertices in `order`.
TreeDecomposition decomposition_from_ordering(const Graph & g, const std::vector<Element> & order);

/// Path decomposition of grid_graph(k, l), k <= l, of width k: the bags are the
/// windows of k+1 consecutive vertices in a sweep along the short side (row by
/// row for square grids, so (3,3) yields {1..4},{2..5},...,{6..9} in row-major
/// numbering).
TreeDecomposition grid_decomposition(std::size_t k, std::size_t l);

/// Treewidth of the Gaifman graph.
TreewidthResult exact_treewidth(const Structure & a);

} // namespace homforge
