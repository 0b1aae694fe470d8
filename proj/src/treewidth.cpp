#include "homforge/treewidth.hpp"

#include "homforge/error.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>

namespace homforge {

int TreeDecomposition::width() const
{
    std::size_t largest = 0;
    for (auto & b : bags)
        largest = std::max(largest, b.size());
    return static_cast<int>(largest) - 1;
}

int width(const TreeDecomposition & d)
{
    return d.width();
}

TreeDecomposition make_decomposition(std::vector<std::vector<Element>> bags,
    const std::vector<std::pair<Element, Element>> & tree_edges)
{
    std::vector<std::string> names;
    for (std::size_t t = 0; t < bags.size(); ++t)
        names.push_back(std::to_string(t));
    for (auto & b : bags) {
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
    }
    return {Graph(std::move(names), tree_edges), std::move(bags)};
}

bool is_tree(const Graph & g)
{
    return g.order() > 0 && g.edge_count() + 1 == g.order() && connected_components(g).size() == 1;
}

bool validate_decomposition(const Graph & g, const TreeDecomposition & d)
{
    if (! is_tree(d.tree))
        throw Error(ErrorCode::MalformedTree, "decomposition tree is not a tree");
    if (d.bags.size() != d.tree.order())
        throw Error(ErrorCode::MalformedTree, "bag count does not match the tree");

    std::vector<std::vector<Element>> occurrences(g.order());
    for (Element t = 0; t < d.bags.size(); ++t)
        for (auto v : d.bags[t]) {
            if (v >= g.order())
                return false;
            occurrences[v].push_back(t);
        }
    for (auto & occ : occurrences)
        if (! is_connected_subset(d.tree, occ))
            return false;

    for (auto [u, v] : g.edges()) {
        bool covered = false;
        for (auto t : occurrences[u]) {
            auto & b = d.bags[t];
            if (std::binary_search(b.begin(), b.end(), v)) {
                covered = true;
                break;
            }
        }
        if (! covered)
            return false;
    }
    return true;
}

TreeDecomposition decomposition_from_ordering(const Graph & g, const std::vector<Element> & order)
{
    const std::size_t n = g.order();
    if (n == 0)
        return make_decomposition({{}}, {});
    if (order.size() != n)
        throw Error(ErrorCode::InvalidArgument, "elimination ordering must list every vertex once");

    std::vector<std::size_t> position(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (order[i] >= n || position[order[i]] != n)
            throw Error(ErrorCode::InvalidArgument, "elimination ordering must list every vertex once");
        position[order[i]] = i;
    }

    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (auto [u, v] : g.edges())
        adj[u][v] = adj[v][u] = 1;

    // Bag i belongs to the i-th eliminated vertex.
    std::vector<std::vector<Element>> bags(n);
    std::vector<std::pair<Element, Element>> tree_edges;
    std::vector<Element> roots;
    for (std::size_t i = 0; i < n; ++i) {
        auto v = order[i];
        std::vector<Element> later;
        for (Element w = 0; w < n; ++w)
            if (adj[v][w] && position[w] > i)
                later.push_back(w);
        for (auto a : later)
            for (auto b : later)
                if (a != b)
                    adj[a][b] = 1;
        bags[i] = later;
        bags[i].push_back(v);
        if (later.empty())
            roots.push_back(i);
        else {
            auto parent = *std::min_element(later.begin(), later.end(),
                [&](Element a, Element b) { return position[a] < position[b]; });
            tree_edges.emplace_back(i, position[parent]);
        }
    }
    for (std::size_t r = 1; r < roots.size(); ++r)
        tree_edges.emplace_back(roots[r - 1], roots[r]);
    return make_decomposition(std::move(bags), tree_edges);
}

TreewidthResult exact_treewidth(const Graph & g)
{
    const std::size_t n = g.order();
    if (n > exact_treewidth_limit)
        throw Error(ErrorCode::TooLarge,
            std::to_string(n) + " vertices exceeds the exact limit of " + std::to_string(exact_treewidth_limit));
    if (n == 0)
        return {-1, make_decomposition({{}}, {})};

    std::vector<std::uint32_t> neighbours(n, 0);
    for (auto [u, v] : g.edges()) {
        neighbours[u] |= std::uint32_t{1} << v;
        neighbours[v] |= std::uint32_t{1} << u;
    }

    // Vertices outside S ∪ {v} reachable from v through S.
    auto q_size = [&](std::uint32_t s, std::size_t v) {
        std::uint32_t seen = std::uint32_t{1} << v, frontier = seen;
        while (frontier) {
            std::uint32_t next = 0;
            for (auto f = frontier; f; f &= f - 1)
                next |= neighbours[std::countr_zero(f)];
            next &= ~seen;
            seen |= next;
            frontier = next & s;
        }
        return std::popcount(seen & ~s & ~(std::uint32_t{1} << v));
    };

    const std::uint32_t full = n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
    std::vector<std::int8_t> best(std::size_t{full} + 1, 0);
    std::vector<std::int8_t> last(std::size_t{full} + 1, 0);
    best[0] = -1;
    for (std::uint32_t s = 1; s <= full; ++s) {
        int value = std::numeric_limits<int>::max();
        int choice = 0;
        for (auto rest = s; rest; rest &= rest - 1) {
            auto v = std::countr_zero(rest);
            auto without = s & ~(std::uint32_t{1} << v);
            int candidate = std::max<int>(best[without], q_size(without, v));
            if (candidate < value) {
                value = candidate;
                choice = v;
            }
        }
        best[s] = static_cast<std::int8_t>(value);
        last[s] = static_cast<std::int8_t>(choice);
    }

    std::vector<Element> order(n);
    std::uint32_t s = full;
    for (std::size_t i = n; i-- > 0;) {
        order[i] = static_cast<Element>(last[s]);
        s &= ~(std::uint32_t{1} << last[s]);
    }
    auto d = decomposition_from_ordering(g, order);
    return {best[full], std::move(d)};
}

TreeDecomposition heuristic_decomposition(const Graph & g)
{
    const std::size_t n = g.order();
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (auto [u, v] : g.edges())
        adj[u][v] = adj[v][u] = 1;
    std::vector<char> eliminated(n, 0);
    std::vector<Element> order;
    order.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
        Element pick = n;
        std::size_t pick_fill = 0;
        for (Element v = 0; v < n; ++v) {
            if (eliminated[v])
                continue;
            std::vector<Element> nb;
            for (Element w = 0; w < n; ++w)
                if (! eliminated[w] && adj[v][w])
                    nb.push_back(w);
            std::size_t fill = 0;
            for (std::size_t a = 0; a < nb.size(); ++a)
                for (std::size_t b = a + 1; b < nb.size(); ++b)
                    if (! adj[nb[a]][nb[b]])
                        ++fill;
            if (pick == n || fill < pick_fill) {
                pick = v;
                pick_fill = fill;
            }
        }
        std::vector<Element> nb;
        for (Element w = 0; w < n; ++w)
            if (! eliminated[w] && adj[pick][w])
                nb.push_back(w);
        for (auto a : nb)
            for (auto b : nb)
                if (a != b)
                    adj[a][b] = 1;
        eliminated[pick] = 1;
        order.push_back(pick);
    }
    return decomposition_from_ordering(g, order);
}

TreeDecomposition grid_decomposition(std::size_t k, std::size_t l)
{
    if (k < 1 || l < 1 || k > l)
        throw Error(ErrorCode::InvalidDimension,
            "grid decomposition needs 1 <= k <= l, got " + std::to_string(k) + "x" + std::to_string(l));
    // Consecutive sweep positions must be adjacent along the short side.
    // grid_graph lists (i, j) at i*l + j, so square grids sweep rows in listing
    // order and k < l grids sweep column by column.
    auto vertex_at = [&](std::size_t s) { return k == l ? s : (s % k) * l + s / k; };
    const std::size_t n = k * l;
    std::vector<std::vector<Element>> bags;
    std::vector<std::pair<Element, Element>> edges;
    if (n <= k + 1) {
        std::vector<Element> all;
        for (std::size_t s = 0; s < n; ++s)
            all.push_back(vertex_at(s));
        bags.push_back(std::move(all));
    }
    else {
        for (std::size_t start = 0; start + k + 1 <= n; ++start) {
            std::vector<Element> bag;
            for (std::size_t s = start; s <= start + k; ++s)
                bag.push_back(vertex_at(s));
            bags.push_back(std::move(bag));
            if (start > 0)
                edges.emplace_back(start - 1, start);
        }
    }
    return make_decomposition(std::move(bags), edges);
}

TreewidthResult exact_treewidth(const Structure & a)
{
    return exact_treewidth(gaifman_graph(a));
}

} // namespace homforge
