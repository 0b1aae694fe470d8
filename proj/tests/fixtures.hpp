#pragma once

#include "homforge/error.hpp"
#include "homforge/minors.hpp"
#include "homforge/structure.hpp"
#include "homforge/treewidth.hpp"

#include <algorithm>
#include <optional>

namespace fixture {

using namespace homforge;

// Small minor example: a triangle 1-2-3 with a pendant 0 on vertex 1, and a
// six-vertex target in which a-b-d-c-a is a 4-cycle and d also carries e, f.
inline Graph minor_source()
{
    return Graph::from_names({"0", "1", "2", "3"}, {{"0", "1"}, {"1", "2"}, {"1", "3"}, {"2", "3"}});
}

inline Graph minor_target()
{
    return Graph::from_names({"a", "b", "c", "d", "e", "f"},
        {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}, {"d", "e"}, {"d", "f"}});
}

inline MinorMap named_minor(const std::vector<std::vector<std::string>> & branches)
{
    auto h = minor_source();
    auto g = minor_target();
    MinorMap m{h, g, {}};
    for (auto & branch : branches) {
        std::vector<Element> set;
        for (auto & name : branch)
            set.push_back(g.index_of(name));
        std::sort(set.begin(), set.end());
        m.assignment.push_back(set);
    }
    return m;
}

/// e, d, b, {a, c}
inline MinorMap minor_example() { return named_minor({{"e"}, {"d"}, {"b"}, {"a", "c"}}); }

// The 3x3 grid numbered 1..9 row by row, covered by the six windows
// {1..4}, {2..5}, ..., {6..9} along a path.
inline std::vector<std::vector<Element>> grid_windows()
{
    std::vector<std::vector<Element>> bags;
    for (Element start = 0; start < 6; ++start)
        bags.push_back({start, start + 1, start + 2, start + 3});
    return bags;
}

inline std::vector<std::pair<Element, Element>> path_edges(std::size_t nodes)
{
    std::vector<std::pair<Element, Element>> edges;
    for (Element t = 0; t + 1 < nodes; ++t)
        edges.emplace_back(t, t + 1);
    return edges;
}

inline TreeDecomposition grid_window_decomposition() { return make_decomposition(grid_windows(), path_edges(6)); }

inline Structure cycle(std::size_t n)
{
    std::vector<std::string> names;
    std::vector<Graph::Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        names.push_back("c" + std::to_string(i));
        edges.emplace_back(i, (i + 1) % n);
    }
    return graph_to_structure(Graph(names, edges));
}

inline Structure path(std::size_t n)
{
    std::vector<std::string> names;
    std::vector<Graph::Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        names.push_back("p" + std::to_string(i));
        if (i > 0)
            edges.emplace_back(i - 1, i);
    }
    return graph_to_structure(Graph(names, edges));
}

inline Structure edgeless(std::size_t n)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
        names.push_back("z" + std::to_string(i));
    return Structure(graph_signature(), names, {{}});
}

/// The code of the Error `f` throws, or nullopt if it returns normally.
template <class F>
std::optional<homforge::ErrorCode> error_of(F && f)
{
    try {
        f();
    } catch (const homforge::Error & e) {
        return e.code();
    }
    return std::nullopt;
}

} // namespace fixture
