#include "homforge/minors.hpp"

#include "homforge/error.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>

namespace homforge {

bool validate_minor_map(const MinorMap & m)
{
    auto & h = m.source;
    auto & g = m.target;
    if (m.assignment.size() != h.order())
        return false;
    std::vector<char> owner(g.order(), 0);
    for (auto & branch : m.assignment) {
        if (branch.empty())
            return false;
        for (auto x : branch) {
            if (x >= g.order() || owner[x])
                return false;
            owner[x] = 1;
        }
        if (! is_connected_subset(g, branch))
            return false;
    }
    for (auto [v, w] : h.edges()) {
        bool realised = false;
        for (auto x : m.assignment[v]) {
            for (auto y : m.assignment[w])
                if (g.adjacent(x, y)) {
                    realised = true;
                    break;
                }
            if (realised)
                break;
        }
        if (! realised)
            return false;
    }
    return true;
}

bool is_onto(const MinorMap & m)
{
    std::vector<char> covered(m.target.order(), 0);
    for (auto & branch : m.assignment)
        for (auto x : branch)
            if (x < covered.size())
                covered[x] = 1;
    return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

MinorMap make_onto(MinorMap m)
{
    auto & g = m.target;
    const std::size_t none = m.assignment.size();
    std::vector<std::size_t> owner(g.order(), none);
    for (std::size_t v = 0; v < m.assignment.size(); ++v)
        for (auto x : m.assignment[v])
            owner[x] = v;
    bool changed = true;
    while (changed) {
        changed = false;
        for (Element x = 0; x < g.order(); ++x) {
            if (owner[x] != none)
                continue;
            std::size_t best = none;
            for (auto y : g.neighbors(x))
                if (owner[y] != none)
                    best = std::min(best, owner[y]);
            if (best != none) {
                owner[x] = best;
                m.assignment[best].push_back(x);
                changed = true;
            }
        }
    }
    for (auto & branch : m.assignment)
        std::sort(branch.begin(), branch.end());
    return m;
}

namespace {

using Mask = std::uint64_t;

Mask bit(std::size_t i) { return Mask{1} << i; }

class MinorSearch {
public:
    MinorSearch(const Graph & h, const Graph & g, BudgetTracker & budget) : h_(h), g_(g), budget_(budget)
    {
        for (Element x = 0; x < g.order(); ++x) {
            Mask n = 0;
            for (auto y : g.neighbors(x))
                n |= bit(y);
            neighbours_.push_back(n);
        }
        sets_.assign(h.order(), 0);

        // Most constrained first: most already-placed neighbours, then degree.
        std::vector<char> placed(h.order(), 0);
        for (std::size_t step = 0; step < h.order(); ++step) {
            std::size_t pick = h.order(), pick_links = 0;
            for (Element v = 0; v < h.order(); ++v) {
                if (placed[v])
                    continue;
                std::size_t links = 0;
                for (auto w : h.neighbors(v))
                    links += placed[w];
                if (pick == h.order() || links > pick_links
                    || (links == pick_links && h.degree(v) > h.degree(pick))) {
                    pick = v;
                    pick_links = links;
                }
            }
            placed[pick] = 1;
            order_.push_back(pick);
        }
    }

    bool run()
    {
        Mask all = g_.order() == 64 ? ~Mask{0} : bit(g_.order()) - 1;
        return search(0, all);
    }

    bool aborted() const noexcept { return aborted_; }

    std::vector<std::vector<Element>> assignment() const
    {
        std::vector<std::vector<Element>> out(h_.order());
        for (std::size_t v = 0; v < h_.order(); ++v)
            for (auto m = sets_[v]; m; m &= m - 1)
                out[v].push_back(std::countr_zero(m));
        return out;
    }

private:
    Mask neighbourhood(Mask s) const
    {
        Mask n = 0;
        for (auto m = s; m; m &= m - 1)
            n |= neighbours_[std::countr_zero(m)];
        return n & ~s;
    }

    // Connected components of the subgraph induced by `free`.
    std::vector<Mask> components(Mask free) const
    {
        std::vector<Mask> out;
        while (free) {
            Mask comp = free & (~free + 1), frontier = comp;
            while (frontier) {
                Mask next = neighbourhood(frontier) & free & ~comp;
                comp |= next;
                frontier = next;
            }
            out.push_back(comp);
            free &= ~comp;
        }
        return out;
    }

    // Every unplaced vertex still needs one free component touching all of its
    // placed neighbours' branch sets.
    bool feasible(std::size_t pos, Mask free) const
    {
        std::size_t remaining = h_.order() - pos;
        if (static_cast<std::size_t>(std::popcount(free)) < remaining)
            return false;
        auto comps = components(free);
        for (std::size_t i = pos; i < order_.size(); ++i) {
            auto u = order_[i];
            bool ok = false;
            for (auto c : comps) {
                bool touches_all = true;
                for (auto w : h_.neighbors(u))
                    if (sets_[w] && ! (neighbourhood(sets_[w]) & c)) {
                        touches_all = false;
                        break;
                    }
                if (touches_all) {
                    ok = true;
                    break;
                }
            }
            if (! ok)
                return false;
        }
        return true;
    }

    // Enumerates each connected subset of `allowed` with `size` vertices once,
    // rooted at its lowest vertex. Stops as soon as `visit` returns true.
    bool connected_subsets(Mask allowed, std::size_t size, const std::function<bool(Mask)> & visit)
    {
        for (auto roots = allowed; roots; roots &= roots - 1) {
            auto r = static_cast<std::size_t>(std::countr_zero(roots));
            Mask above = ~(bit(r + 1) - 1);
            if (r == 63)
                above = 0;
            if (extend(bit(r), neighbours_[r] & allowed & above, allowed & above, size, visit))
                return true;
            if (aborted_)
                return false;
        }
        return false;
    }

    bool extend(Mask s, Mask extension, Mask allowed, std::size_t size, const std::function<bool(Mask)> & visit)
    {
        if (static_cast<std::size_t>(std::popcount(s)) == size)
            return visit(s);
        Mask closed = s | neighbourhood(s);
        while (extension) {
            auto w = static_cast<std::size_t>(std::countr_zero(extension));
            extension &= extension - 1;
            Mask exclusive = neighbours_[w] & allowed & ~closed;
            if (extend(s | bit(w), extension | exclusive, allowed, size, visit))
                return true;
            if (aborted_)
                return false;
        }
        return false;
    }

    bool search(std::size_t pos, Mask free)
    {
        if (pos == order_.size())
            return true;
        if (! budget_.tick()) {
            aborted_ = true;
            return false;
        }
        auto v = order_[pos];
        Mask must_touch_any = ~Mask{0};
        std::vector<Mask> touch;
        for (auto w : h_.neighbors(v))
            if (sets_[w])
                touch.push_back(neighbourhood(sets_[w]));
        (void) must_touch_any;

        std::size_t remaining = order_.size() - pos - 1;
        std::size_t available = std::popcount(free);
        if (available <= remaining)
            return false;
        std::size_t max_size = available - remaining;
        for (std::size_t size = 1; size <= max_size; ++size) {
            bool found = connected_subsets(free, size, [&](Mask s) {
                for (auto t : touch)
                    if (! (s & t))
                        return false;
                sets_[v] = s;
                Mask rest = free & ~s;
                if (feasible(pos + 1, rest) && search(pos + 1, rest))
                    return true;
                sets_[v] = 0;
                return aborted_;
            });
            if (found)
                return ! aborted_;
            if (aborted_)
                return false;
        }
        return false;
    }

    const Graph & h_;
    const Graph & g_;
    BudgetTracker & budget_;
    std::vector<Mask> neighbours_;
    std::vector<Mask> sets_;
    std::vector<Element> order_;
    bool aborted_ = false;
};

} // namespace

MinorSearchResult find_minor_map(const Graph & source, const Graph & target, const SearchBudget & budget)
{
    if (target.order() > minor_search_limit)
        throw Error(ErrorCode::TooLarge, "minor search is capped at " + std::to_string(minor_search_limit) + " target vertices");
    if (source.order() == 0)
        return {MinorMap{source, target, {}}, false};
    BudgetTracker tracker(budget);
    MinorSearch search(source, target, tracker);
    bool ok = search.run();
    if (search.aborted())
        return {std::nullopt, true};
    if (! ok)
        return {std::nullopt, false};
    return {MinorMap{source, target, search.assignment()}, false};
}

MinorSearchResult find_grid_minor(const Graph & g, std::size_t k, const SearchBudget & budget)
{
    return find_minor_map(grid_graph(k, k), g, budget);
}

bool validate_gridlike(const Structure & source, const GridLikeMapping & rho)
{
    if (rho.k == 0 || rho.cells.size() != source.size())
        return false;
    std::vector<char> hit(rho.k * rho.k, 0);
    std::vector<std::vector<Element>> rows(rho.k), cols(rho.k);
    for (Element c = 0; c < rho.cells.size(); ++c) {
        auto [i, j] = rho.cells[c];
        if (i >= rho.k || j >= rho.k)
            return false;
        hit[i * rho.k + j] = 1;
        rows[i].push_back(c);
        cols[j].push_back(c);
    }
    if (std::find(hit.begin(), hit.end(), 0) != hit.end())
        return false;
    auto g = gaifman_graph(source);
    for (std::size_t i = 0; i < rho.k; ++i)
        if (! is_connected_subset(g, rows[i]) || ! is_connected_subset(g, cols[i]))
            return false;
    return true;
}

GridLikeMapping compose(const GridLikeMapping & rho, const Homomorphism & h)
{
    GridLikeMapping out{rho.k, {}};
    out.cells.reserve(h.size());
    for (auto x : h.image)
        out.cells.push_back(rho.cells.at(x));
    return out;
}

std::vector<GridCell> grid_coordinates(const Graph & g, std::size_t k, std::size_t l)
{
    if (k < 1 || l < 1 || ! (g == grid_graph(k, l)))
        throw Error(ErrorCode::NotAGridSource,
            "source graph is not the " + std::to_string(k) + "x" + std::to_string(l) + " grid");
    std::vector<GridCell> cells;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < l; ++j)
            cells.push_back({i, j});
    return cells;
}

GridLikeMapping minor_map_to_gridlike(const MinorMap & m, const Structure & c)
{
    std::size_t k = 0;
    while (k * k < m.source.order())
        ++k;
    auto coords = grid_coordinates(m.source, k, k);
    if (! (m.target == gaifman_graph(c)))
        throw Error(ErrorCode::InvalidMinorMap, "minor map target is not the structure's Gaifman graph");
    if (! validate_minor_map(m))
        throw Error(ErrorCode::InvalidMinorMap, "minor map does not validate");
    if (! is_onto(m))
        throw Error(ErrorCode::NotOnto, "minor map does not cover every element");

    GridLikeMapping rho{k, std::vector<GridCell>(c.size())};
    for (std::size_t v = 0; v < m.assignment.size(); ++v)
        for (auto x : m.assignment[v])
            rho.cells[x] = coords[v];
    return rho;
}

MinorMap identity_grid_minor(std::size_t k, std::size_t l)
{
    auto g = grid_graph(k, l);
    std::vector<std::vector<Element>> assignment;
    for (Element v = 0; v < g.order(); ++v)
        assignment.push_back({v});
    return {g, g, std::move(assignment)};
}

} // namespace homforge
