#include "homforge/reductions.hpp"

#include "homforge/cores.hpp"
#include "homforge/error.hpp"

#include <algorithm>
#include <functional>
#include <memory>

namespace homforge {

PairIndexer::PairIndexer(std::size_t k) : k_(k)
{
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            pairs_.emplace_back(i, j);
}

std::size_t PairIndexer::index(std::size_t i, std::size_t j) const
{
    if (i == j || i >= k_ || j >= k_)
        throw Error(ErrorCode::InvalidArgument, "not a pair of distinct indices below " + std::to_string(k_));
    if (i > j)
        std::swap(i, j);
    // Pairs starting below i: (k-1) + (k-2) + ... + (k-i).
    return i * (2 * k_ - i - 1) / 2 + (j - i - 1);
}

bool PairIndexer::contains(std::size_t p, std::size_t i) const
{
    auto & [x, y] = pairs_.at(p);
    return x == i || y == i;
}

namespace {

// Collects every tuple over the fibres of `base` whose entries are pairwise
// compatible. `compatible` must be symmetric and reflexive.
void preimage_tuples(const Tuple & base, const std::vector<std::vector<Element>> & fibres,
    const std::function<bool(Element, Element)> & compatible, std::vector<Tuple> & out)
{
    Tuple chosen(base.size());
    std::function<void(std::size_t)> extend = [&](std::size_t j) {
        if (j == base.size()) {
            out.push_back(chosen);
            return;
        }
        for (auto x : fibres[base[j]]) {
            bool fine = true;
            for (std::size_t q = 0; q < j && fine; ++q)
                fine = compatible(chosen[q], x);
            if (fine) {
                chosen[j] = x;
                extend(j + 1);
            }
        }
    };
    extend(0);
}

std::vector<std::vector<Element>> fibres_of(const Homomorphism & projection, std::size_t base_size)
{
    std::vector<std::vector<Element>> fibres(base_size);
    for (Element x = 0; x < projection.size(); ++x)
        fibres[projection(x)].push_back(x);
    return fibres;
}

std::size_t pair_count(std::size_t k) { return k * (k - 1) / 2; }

} // namespace

GroheInstance grohe_construct(const Structure & a, const MinorMap & mu, const Graph & g, std::size_t k)
{
    if (k < 2)
        throw Error(ErrorCode::BadGridDimensions, "the clique gadget needs k >= 2");
    PairIndexer pairs(k);
    const std::size_t columns = pairs.count();
    if (! (mu.source == grid_graph(k, columns)))
        throw Error(ErrorCode::BadGridDimensions,
            "minor map source is not the " + std::to_string(k) + "x" + std::to_string(columns) + " grid");
    if (! (mu.target == gaifman_graph(a)) || ! validate_minor_map(mu))
        throw Error(ErrorCode::InvalidMinorMap, "not a minor map into the Gaifman graph of A");
    if (! is_onto(mu))
        throw Error(ErrorCode::NotOnto, "minor map does not cover A");
    if (connected_components(a).size() != 1)
        throw Error(ErrorCode::NotConnected, "A must be connected");

    GroheInstance out;
    out.k = k;
    out.columns = columns;
    std::vector<std::string> names;
    auto & edges = g.edges();
    for (Element v = 0; v < g.order(); ++v)
        for (std::size_t e = 0; e < edges.size(); ++e) {
            bool on_edge = edges[e].first == v || edges[e].second == v;
            auto edge_name = encode_components({g.name(edges[e].first), g.name(edges[e].second)});
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t p = 0; p < columns; ++p) {
                    if (on_edge != pairs.contains(p, i))
                        continue;
                    for (auto x : mu.assignment[i * columns + p]) {
                        out.elements.push_back({v, e, i, p, x});
                        out.projection.image.push_back(x);
                        names.push_back(encode_components(
                            {g.name(v), edge_name, std::to_string(i), std::to_string(p), a.name(x)}));
                    }
                }
        }

    auto fibres = fibres_of(out.projection, a.size());
    auto & els = out.elements;
    auto compatible = [&](Element x, Element y) {
        if (els[x].row == els[y].row && els[x].vertex != els[y].vertex)
            return false;
        if (els[x].column == els[y].column && els[x].edge != els[y].edge)
            return false;
        return true;
    };
    std::vector<std::vector<Tuple>> relations(a.relation_count());
    for (std::size_t r = 0; r < a.relation_count(); ++r)
        for (auto & t : a.relation(r))
            preimage_tuples(t, fibres, compatible, relations[r]);

    out.m = Structure(a.signature(), std::move(names), std::move(relations));
    return out;
}

MinorMap clique_gadget_minor(const Structure & a, std::size_t k, const SearchBudget & budget)
{
    if (k < 2)
        throw Error(ErrorCode::BadGridDimensions, "the clique gadget needs k >= 2");
    if (connected_components(a).size() != 1)
        throw Error(ErrorCode::NotConnected, "A must be connected");
    auto g = gaifman_graph(a);
    auto columns = pair_count(k);
    auto grid = grid_graph(k, columns);
    if (g == grid)
        return identity_grid_minor(k, columns);
    auto found = find_minor_map(grid, g, budget);
    if (found.budget_exceeded)
        throw Error(ErrorCode::BudgetExceeded, "grid minor search gave up");
    if (! found.map)
        throw Error(ErrorCode::NoGridMinor,
            "no " + std::to_string(k) + "x" + std::to_string(columns) + " grid minor");
    return make_onto(std::move(*found.map));
}

GridTemplate make_grid_template(std::size_t k, std::size_t f)
{
    if (k < 1 || f < k)
        throw Error(ErrorCode::InvalidDimension, "grid template needs 1 <= k <= f");
    GridTemplate t;
    t.k = k;
    t.pair.a = typed_grid(k, k);
    t.pair.b = typed_grid(f, f);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            t.pair.witness.image.push_back(i * f + j);

    GridLikeMapping rho{k, {}};
    for (std::size_t i = 0; i < f; ++i)
        for (std::size_t j = 0; j < f; ++j)
            rho.cells.push_back({i % k, j % k});
    t.rhos.push_back(std::move(rho));

    auto a = std::make_shared<const Structure>(t.pair.a);
    t.star = [a](const Homomorphism &) { return StarWitness{*a, identity_map(a->size()), 0}; };
    return t;
}

GridTemplate make_core_template(const Structure & a, std::size_t k, const SearchBudget & budget)
{
    auto core = core_of(a, budget);
    auto core_graph = gaifman_graph(core.core);
    auto found = find_grid_minor(core_graph, k, budget);
    if (found.budget_exceeded)
        throw Error(ErrorCode::BudgetExceeded, "grid minor search gave up");
    if (! found.map)
        throw Error(ErrorCode::NoGridMinor, "core has no " + std::to_string(k) + "x" + std::to_string(k) + " grid minor");

    // The component holding the minor, with the minor made onto it.
    Element seed = found.map->assignment.at(0).at(0);
    std::vector<Element> component;
    for (auto & c : connected_components(core_graph))
        if (std::binary_search(c.begin(), c.end(), seed))
            component = c;
    const std::size_t absent = core.core.size();
    std::vector<std::size_t> position(core.core.size(), absent);
    for (std::size_t i = 0; i < component.size(); ++i)
        position[component[i]] = i;
    Structure part = induced_substructure(core.core, component);
    MinorMap local{found.map->source, gaifman_graph(part), {}};
    for (auto & branch : found.map->assignment) {
        std::vector<Element> moved;
        for (auto x : branch)
            moved.push_back(position[x]);
        std::sort(moved.begin(), moved.end());
        local.assignment.push_back(std::move(moved));
    }
    auto nu_part = minor_map_to_gridlike(make_onto(std::move(local)), part);

    GridLikeMapping nu{k, std::vector<GridCell>(core.core.size(), GridCell{0, 0})};
    for (std::size_t i = 0; i < component.size(); ++i)
        nu.cells[component[i]] = nu_part.cells[i];

    GridTemplate t;
    t.k = k;
    t.pair = {a, a, identity_map(a.size())};
    t.rhos.push_back(compose(nu, core.retraction));

    struct Shared {
        Structure core;
        Structure part;
        Homomorphism retraction;
        Homomorphism inclusion;
        Homomorphism part_inclusion;
    };
    auto shared = std::make_shared<const Shared>(
        Shared{core.core, part, core.retraction, core.inclusion, Homomorphism{component}});
    t.star = [shared](const Homomorphism & g) {
        auto & s = *shared;
        auto loop = compose(s.retraction, compose(g, s.inclusion)); // core -> core
        auto id = identity_map(s.core.size());
        auto homs = enumerate_homs(s.core, s.core);
        while (auto gamma = homs.next()) {
            if (compose(loop, *gamma) == id)
                return StarWitness{s.part, compose(s.inclusion, compose(*gamma, s.part_inclusion)), 0};
        }
        throw Error(ErrorCode::InvalidArgument, "map has no right inverse on the core; is it a homomorphism?");
    };
    return t;
}

bool satisfies_star(const GridTemplate & t, const Homomorphism & g)
{
    auto w = t.star(g);
    if (w.layer >= t.rhos.size() || ! w.c.similar_to(t.pair.a))
        return false;
    if (! is_homomorphism(w.h, w.c, t.pair.a))
        return false;
    auto xi = compose(compose(t.rhos[w.layer], g), w.h);
    return xi.k == t.k && validate_gridlike(w.c, xi);
}

StarReport check_star_condition(const GridTemplate & t)
{
    StarReport report;
    auto homs = enumerate_homs(t.pair.a, t.pair.b);
    while (auto g = homs.next()) {
        ++report.homomorphisms;
        if (! satisfies_star(t, *g))
            ++report.failures;
    }
    return report;
}

std::optional<Element> PcspInstance::find(const PcspElement & e) const
{
    auto it = std::lower_bound(elements.begin(), elements.end(), e);
    if (it == elements.end() || ! (*it == e))
        return std::nullopt;
    return static_cast<Element>(it - elements.begin());
}

PcspInstance pcsp_construct(const Structure & a, const Structure & b, const std::vector<GridLikeMapping> & rhos,
    const Graph & g)
{
    if (! a.similar_to(b))
        throw Error(ErrorCode::DissimilarStructures, "template structures in different signatures");
    if (rhos.empty())
        throw Error(ErrorCode::InvalidArgument, "at least one grid-like candidate is needed");
    const std::size_t k = rhos.front().k;
    for (auto & rho : rhos)
        if (rho.k != k || rho.cells.size() != b.size())
            throw Error(ErrorCode::InvalidArgument, "mappings must share k and cover B");

    PcspInstance out;
    out.k = k;
    out.layers = rhos.size();

    std::vector<std::pair<Element, Element>> arcs;
    for (auto [u, v] : g.edges()) {
        arcs.emplace_back(u, v);
        arcs.emplace_back(v, u);
    }
    std::sort(arcs.begin(), arcs.end());
    std::vector<std::pair<Element, Element>> diagonal;
    for (Element u = 0; u < g.order(); ++u)
        diagonal.emplace_back(u, u);

    std::vector<std::string> names;
    for (Element x = 0; x < b.size(); ++x) {
        std::vector<const std::vector<std::pair<Element, Element>> *> options;
        for (auto & rho : rhos)
            options.push_back(rho.cells[x].row == rho.cells[x].col ? &diagonal : &arcs);
        PcspElement e{x, std::vector<std::pair<Element, Element>>(rhos.size())};
        std::function<void(std::size_t)> fill = [&](std::size_t layer) {
            if (layer == rhos.size()) {
                std::vector<std::string> parts{b.name(x)};
                for (auto [u, v] : e.pairs)
                    parts.push_back(encode_components({g.name(u), g.name(v)}));
                names.push_back(encode_components(parts));
                out.elements.push_back(e);
                out.projection.image.push_back(x);
                return;
            }
            for (auto & uv : *options[layer]) {
                e.pairs[layer] = uv;
                fill(layer + 1);
            }
        };
        fill(0);
    }

    auto fibres = fibres_of(out.projection, b.size());
    auto & els = out.elements;
    auto compatible = [&](Element x, Element y) {
        for (std::size_t i = 0; i < rhos.size(); ++i) {
            auto & cx = rhos[i].cells[els[x].b];
            auto & cy = rhos[i].cells[els[y].b];
            if (cx.row == cy.row && els[x].pairs[i].first != els[y].pairs[i].first)
                return false;
            if (cx.col == cy.col && els[x].pairs[i].second != els[y].pairs[i].second)
                return false;
        }
        return true;
    };
    std::vector<std::vector<Tuple>> relations(b.relation_count());
    for (std::size_t r = 0; r < b.relation_count(); ++r)
        for (auto & t : b.relation(r))
            preimage_tuples(t, fibres, compatible, relations[r]);

    out.x = Structure(b.signature(), std::move(names), std::move(relations));
    return out;
}

PcspInstance pcsp_construct(const GridTemplate & t, const Graph & g)
{
    return pcsp_construct(t.pair.a, t.pair.b, t.rhos, g);
}

Homomorphism pcsp_completeness_map(const PcspInstance & inst, const std::vector<GridLikeMapping> & rhos,
    const std::vector<Element> & clique)
{
    if (clique.size() < inst.k || rhos.size() != inst.layers)
        throw Error(ErrorCode::InvalidArgument, "need one clique vertex per grid index and every mapping");
    Homomorphism h;
    for (Element b = 0; b < rhos.front().cells.size(); ++b) {
        PcspElement e{b, {}};
        for (auto & rho : rhos)
            e.pairs.emplace_back(clique[rho.cells[b].row], clique[rho.cells[b].col]);
        auto x = inst.find(e);
        if (! x)
            throw Error(ErrorCode::InvalidArgument, "vertices do not form a clique");
        h.image.push_back(*x);
    }
    return h;
}

std::vector<Element> pcsp_decode_clique(const PcspInstance & inst, const GridTemplate & t, const Homomorphism & alpha)
{
    auto g = compose(inst.projection, alpha);
    auto w = t.star(g);
    auto & rho = t.rhos.at(w.layer);
    std::vector<Element> clique(t.k, 0);
    for (Element c = 0; c < w.c.size(); ++c) {
        auto x = alpha(w.h(c));
        clique[rho.cells[g(w.h(c))].col] = inst.elements[x].pairs[w.layer].second;
    }
    return clique;
}

AmplifiedGraph clique_amplify(const Graph & g, std::size_t k, std::size_t l)
{
    if (k < 1 || l < 1)
        throw Error(ErrorCode::InvalidArgument, "clique sizes must be at least 1");
    std::size_t m = (l + k - 1) / k;
    if (m == 1)
        return {g, 1};
    const std::size_t n = g.order();
    std::vector<std::string> names;
    for (std::size_t c = 0; c < m; ++c)
        for (Element v = 0; v < n; ++v)
            names.push_back(encode_components({std::to_string(c), g.name(v)}));
    std::vector<Graph::Edge> edges;
    for (std::size_t c = 0; c < m; ++c) {
        for (auto [u, v] : g.edges())
            edges.emplace_back(c * n + u, c * n + v);
        for (std::size_t d = c + 1; d < m; ++d)
            for (Element u = 0; u < n; ++u)
                for (Element v = 0; v < n; ++v)
                    edges.emplace_back(c * n + u, d * n + v);
    }
    return {Graph(std::move(names), edges), m};
}

bool gap_condition(std::size_t k, std::size_t l, std::size_t f, std::size_t g)
{
    return g * k >= (l + k) * f;
}

std::vector<std::pair<std::size_t, std::size_t>> gap_pairs(std::size_t k, std::size_t l)
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t f = 1; f < k; ++f)
        for (std::size_t g = 1; g < l; ++g)
            if (gap_condition(k, l, f, g))
                out.emplace_back(f, g);
    return out;
}

RelaxedInstance relaxation_map(const PromiseInstance & instance, const Structure & c, const Structure & d,
    const SearchBudget & budget)
{
    auto & [a, b, x] = instance;
    if (! a.similar_to(b) || ! a.similar_to(x) || ! a.similar_to(c) || ! a.similar_to(d))
        throw Error(ErrorCode::DissimilarStructures, "relaxation needs five similar structures");
    auto witness = [&](const Structure & from, const Structure & to, const char * what) {
        auto r = find_hom(from, to, budget);
        if (r.budget_exceeded())
            throw Error(ErrorCode::BudgetExceeded, std::string("search for ") + what + " gave up");
        if (! r.found())
            throw Error(ErrorCode::RelaxationWitnessMissing, std::string("no homomorphism ") + what);
        return r.homomorphism();
    };
    auto a_to_c = witness(a, c, "A -> C");
    auto d_to_b = witness(d, b, "D -> B");
    return {{c, d, x}, std::move(a_to_c), std::move(d_to_b)};
}

std::vector<Graph> all_graphs(std::size_t max_n)
{
    std::vector<Graph> out;
    for (std::size_t n = 1; n <= max_n; ++n) {
        std::vector<std::string> names;
        for (std::size_t v = 0; v < n; ++v)
            names.push_back(std::to_string(v));
        std::vector<Graph::Edge> slots;
        for (Element u = 0; u < n; ++u)
            for (Element v = u + 1; v < n; ++v)
                slots.emplace_back(u, v);
        if (slots.size() >= 63)
            throw Error(ErrorCode::TooLarge, "graph range too large");
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
            std::vector<Graph::Edge> edges;
            for (std::size_t s = 0; s < slots.size(); ++s)
                if (mask >> s & 1)
                    edges.push_back(slots[s]);
            out.emplace_back(names, edges);
        }
    }
    return out;
}

std::string describe_graph(const Graph & g)
{
    std::string s = std::to_string(g.order()) + ":";
    bool first = true;
    for (auto [u, v] : g.edges()) {
        if (! first)
            s += ',';
        first = false;
        s += g.name(u) + "-" + g.name(v);
    }
    return s;
}

namespace {

bool is_clique(const Graph & g, const std::vector<Element> & vs)
{
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (! g.adjacent(vs[i], vs[j]))
                return false;
    return true;
}

// Accumulates per-instance outcomes.
struct Tally {
    Tally(VerificationReport & r, std::size_t i, const Graph & graph) : report(r), id(i), g(graph) {}

    VerificationReport & report;
    std::size_t id;
    const Graph & g;
    std::string problem;
    bool gave_up = false;

    void fail(std::string what)
    {
        if (problem.empty())
            problem = std::move(what);
    }

    ~Tally()
    {
        ++report.instances;
        if (! problem.empty())
            report.counterexamples.push_back({id, describe_graph(g), problem});
        else if (gave_up)
            report.inconclusive.push_back({id, describe_graph(g), "budget exceeded"});
        else
            ++report.passed;
    }
};

} // namespace

VerificationReport verify_grohe(const GroheSweep & sweep, const std::vector<Graph> & graphs, const SearchBudget & budget)
{
    VerificationReport report;
    // The converse direction is only promised for cores.
    const bool core = is_core(sweep.a, budget);
    for (std::size_t id = 0; id < graphs.size(); ++id) {
        auto & g = graphs[id];
        Tally tally{report, id, g};
        auto inst = grohe_construct(sweep.a, sweep.mu, g, sweep.k);
        if (! is_homomorphism(inst.projection, inst.m, sweep.a))
            tally.fail("projection is not a homomorphism");
        bool clique = has_k_clique(g, sweep.k);
        auto r = find_hom(sweep.a, inst.m, budget);
        if (r.budget_exceeded()) {
            tally.gave_up = true;
            continue;
        }
        if (r.found() && ! is_homomorphism(r.homomorphism(), sweep.a, inst.m))
            tally.fail("solver returned an invalid map");
        if (clique) {
            ++report.completeness_checks;
            if (! r.found())
                tally.fail("G has a k-clique but A does not map to M");
        }
        if (core && r.found()) {
            ++report.soundness_checks;
            if (! clique)
                tally.fail("A maps to M but G has no k-clique");
        }
    }
    return report;
}

VerificationReport verify_pcsp(const GridTemplate & t, const std::vector<Graph> & graphs, const SearchBudget & budget)
{
    VerificationReport report;
    for (std::size_t id = 0; id < graphs.size(); ++id) {
        auto & g = graphs[id];
        Tally tally{report, id, g};
        auto inst = pcsp_construct(t, g);

        std::size_t bound = t.pair.b.size();
        for (std::size_t i = 0; i < 2 * t.rhos.size(); ++i)
            bound *= g.order();
        if (inst.x.size() > bound)
            tally.fail("|X| = " + std::to_string(inst.x.size()) + " exceeds " + std::to_string(bound));
        if (! is_homomorphism(inst.projection, inst.x, t.pair.b))
            tally.fail("projection is not a homomorphism");

        auto clique = find_k_clique(g, t.k);
        if (clique) {
            ++report.completeness_checks;
            if (! is_homomorphism(pcsp_completeness_map(inst, t.rhos, *clique), t.pair.b, inst.x))
                tally.fail("explicit clique map is not a homomorphism B -> X");
            auto rb = find_hom(t.pair.b, inst.x, budget);
            if (rb.budget_exceeded())
                tally.gave_up = true;
            else if (! rb.found())
                tally.fail("G has a k-clique but B does not map to X");
        }

        auto ra = find_hom(t.pair.a, inst.x, budget);
        if (ra.budget_exceeded()) {
            tally.gave_up = true;
            continue;
        }
        if (ra.found()) {
            ++report.soundness_checks;
            if (! clique)
                tally.fail("A maps to X but G has no k-clique");
            auto decoded = pcsp_decode_clique(inst, t, ra.homomorphism());
            auto sorted = decoded;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || ! is_clique(g, decoded))
                tally.fail("vertices read off A -> X are not a clique");
        }
    }
    return report;
}

VerificationReport verify_amplify(const AmplifySweep & sweep, const std::vector<Graph> & graphs)
{
    VerificationReport report;
    auto pairs = gap_pairs(sweep.k, sweep.l);
    for (std::size_t id = 0; id < graphs.size(); ++id) {
        auto & g = graphs[id];
        Tally tally{report, id, g};
        auto amp = clique_amplify(g, sweep.k, sweep.l);
        if (amp.copies * sweep.k < sweep.l || amp.copies * sweep.k >= sweep.l + sweep.k)
            tally.fail("wrong number of copies");
        if (amp.h.order() != amp.copies * g.order())
            tally.fail("wrong vertex count");
        if (has_k_clique(g, sweep.k)) {
            ++report.completeness_checks;
            if (! has_k_clique(amp.h, sweep.l))
                tally.fail("G has a k-clique but H has no l-clique");
        }
        for (auto [f, gl] : pairs)
            if (has_k_clique(amp.h, gl)) {
                ++report.soundness_checks;
                if (! has_k_clique(g, f))
                    tally.fail("H has a " + std::to_string(gl) + "-clique but G has no " + std::to_string(f) + "-clique");
            }
    }
    return report;
}

} // namespace homforge
