// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "fixtures.hpp"
#include "oracles.hpp"

#include "homforge/cores.hpp"
#include "homforge/reductions.hpp"
#include "homforge/solver.hpp"
#include "homforge/treewidth.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

using namespace homforge;
using namespace std::chrono_literals;

namespace {

using Clock = std::chrono::steady_clock;

// Runtime ceilings per criterion.
constexpr auto limit_minor_fixture = 1s;
constexpr auto limit_grid_treewidth = 30s;
constexpr auto limit_grohe_sweep = 600s;
constexpr auto limit_pcsp_sweep = 600s;
constexpr auto limit_star = 1s;
constexpr auto limit_amplify = 300s;
constexpr auto limit_cores = 300s;
constexpr auto limit_solvers = 300s;
constexpr auto limit_relaxation = 60s;

// Seeds for the randomised criteria.
constexpr std::uint64_t seed_cores = 0xC0DE;
constexpr std::uint64_t seed_solvers = 0x7D;
constexpr std::uint64_t seed_relaxation = 0x9E1A;

// Collects failure notes for one criterion.
struct Check {
    std::ostringstream notes;
    bool ok = true;

    void expect(bool cond, const std::string & what)
    {
        if (! cond && ok) {
            ok = false;
            notes << what;
        } else if (! cond) {
            notes << "; " << what;
        }
    }
};

int failures = 0;

void criterion(int number, const std::string & name, Clock::duration limit, const std::function<void(Check &)> & body)
{
    Check check;
    auto start = Clock::now();
    try {
        body(check);
    } catch (const std::exception & e) {
        check.expect(false, std::string("exception: ") + e.what());
    }
    auto elapsed = Clock::now() - start;
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    if (elapsed > limit)
        check.expect(false, "over the time limit of "
                + std::to_string(std::chrono::duration_cast<std::chrono::milliseconds>(limit).count()) + " ms");
    if (! check.ok)
        ++failures;
    std::cout << (check.ok ? "PASS" : "FAIL") << " " << number << " " << name << " (" << ms << " ms)";
    if (! check.ok)
        std::cout << ": " << check.notes.str();
    std::cout << std::endl;
}

void minor_fixture(Check & c)
{
    c.expect(validate_minor_map(fixture::minor_example()), "e, d, b, {a,c} does not validate");
    c.expect(! validate_minor_map(fixture::named_minor({{"e"}, {"d"}, {"b"}, {"a", "f"}})),
        "disconnected branch set {a,f} accepted");
    c.expect(! validate_minor_map(fixture::named_minor({{"e", "f"}, {"d"}, {"b"}, {"a", "c"}})),
        "disconnected branch set {e,f} accepted");
}

void grid_treewidth(Check & c)
{
    auto grid = grid_graph(3, 3);
    auto d = fixture::grid_window_decomposition();
    c.expect(validate_decomposition(grid, d), "window decomposition rejected");
    c.expect(d.width() == 3, "window decomposition width " + std::to_string(d.width()));
    for (std::size_t k : {2, 3, 4}) {
        auto r = exact_treewidth(grid_graph(k, k));
        c.expect(r.width == static_cast<int>(k), "tw(grid " + std::to_string(k) + ") = " + std::to_string(r.width));
        c.expect(validate_decomposition(grid_graph(k, k), r.decomposition), "returned decomposition invalid");
    }
}

void grohe_sweep(Check & c)
{
    auto a = typed_grid(3, 3);
    c.expect(is_core(a), "A is not a core");
    c.expect(oracle::is_core(a), "brute force says A is not a core");
    auto mu = identity_grid_minor(3, 3);
    auto graphs = all_graphs(5);
    std::size_t on_five = 0, disagreements = 0;
    for (auto & g : graphs) {
        on_five += g.order() == 5;
        auto inst = grohe_construct(a, mu, g, 3);
        auto r = find_hom(a, inst.m);
        if (r.budget_exceeded()) {
            c.expect(false, "inconclusive on " + describe_graph(g));
            continue;
        }
        if (r.found() != oracle::has_clique(g, 3))
            ++disagreements;
        if (r.found() && ! is_homomorphism(r.homomorphism(), a, inst.m))
            c.expect(false, "invalid homomorphism on " + describe_graph(g));
    }
    c.expect(on_five == 1024, "graphs on 5 vertices: " + std::to_string(on_five));
    c.expect(disagreements == 0, std::to_string(disagreements) + " counterexamples");

    auto report = verify_grohe({a, mu, 3}, graphs);
    c.expect(report.all_pass(), "harness reports counterexamples or inconclusive instances");
}

void pcsp_sweep(Check & c)
{
    auto t = make_grid_template(2, 3);
    std::size_t bad = 0;
    for (auto & g : all_graphs(5)) {
        auto inst = pcsp_construct(t, g);
        bool clique = oracle::has_clique(g, 2);
        if (inst.x.size() > t.pair.b.size() * g.order() * g.order()) {
            ++bad;
            c.expect(false, "size bound broken on " + describe_graph(g));
        }
        if (clique && ! find_hom(t.pair.b, inst.x).found()) {
            ++bad;
            c.expect(false, "completeness broken on " + describe_graph(g));
        }
        if (find_hom(t.pair.a, inst.x).found() && ! clique) {
            ++bad;
            c.expect(false, "soundness broken on " + describe_graph(g));
        }
    }
    c.expect(bad == 0, std::to_string(bad) + " counterexamples");
}

void star_condition(Check & c)
{
    auto t = make_grid_template(2, 3);
    // The four shifts (i, j) -> (i + di, j + dj) of the 2x2 grid inside the 3x3 grid.
    std::set<std::vector<Element>> translations;
    for (std::size_t di = 0; di < 2; ++di)
        for (std::size_t dj = 0; dj < 2; ++dj) {
            std::vector<Element> image;
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j)
                    image.push_back((i + di) * 3 + (j + dj));
            translations.insert(image);
        }
    std::set<std::vector<Element>> found;
    auto homs = enumerate_homs(t.pair.a, t.pair.b);
    while (auto g = homs.next()) {
        found.insert(g->image);
        std::set<Element> distinct(g->image.begin(), g->image.end());
        c.expect(distinct.size() == g->image.size(), "non-injective homomorphism");
        c.expect(validate_gridlike(t.pair.a, compose(t.rhos[0], *g)), "composition is not grid-like");
        c.expect(satisfies_star(t, *g), "witness fails");
    }
    c.expect(found == translations, "homomorphisms are not exactly the translations");
}

void amplification(Check & c)
{
    auto graphs = all_graphs(5);
    for (auto [k, l] : std::vector<std::pair<std::size_t, std::size_t>>{{3, 5}, {2, 5}, {3, 3}}) {
        auto pairs = gap_pairs(k, l);
        c.expect(! pairs.empty(), "no admissible (f, g) for k=" + std::to_string(k) + ", l=" + std::to_string(l));
        for (auto [f, g] : pairs) {
            // g >= (l/k + 1) f, cleared of denominators.
            c.expect(g * k >= (l + k) * f, "inadmissible pair");
        }
        std::size_t bad = 0;
        for (auto & g : graphs) {
            auto amp = clique_amplify(g, k, l);
            if (oracle::has_clique(g, k) && ! oracle::has_clique(amp.h, l))
                ++bad;
            for (auto [fk, gl] : pairs)
                if (oracle::has_clique(amp.h, gl) && ! oracle::has_clique(g, fk))
                    ++bad;
        }
        c.expect(bad == 0, std::to_string(bad) + " counterexamples for k=" + std::to_string(k)
                + ", l=" + std::to_string(l));
        c.expect(verify_amplify({k, l}, graphs).all_pass(), "harness disagrees");
    }
}

void cores(Check & c)
{
    c.expect(oracle::isomorphic(core_of(fixture::cycle(6)).core, clique_structure(2)), "core of C6 is not K2");
    c.expect(oracle::isomorphic(core_of(disjoint_union(clique_structure(3), clique_structure(2))).core,
                 clique_structure(3)),
        "core of K3 + K2 is not K3");

    std::mt19937_64 rng(seed_cores);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 1 + trial % 7;
        auto a = oracle::random_structure(rng, oracle::digraph_signature(), n, 0.25);
        std::vector<Element> first(n), second(n);
        std::iota(first.begin(), first.end(), Element{0});
        std::iota(second.begin(), second.end(), Element{0});
        std::shuffle(first.begin(), first.end(), rng);
        std::shuffle(second.begin(), second.end(), rng);
        auto one = reorder_universe(a, first), two = reorder_universe(a, second);
        auto c1 = core_of(one), c2 = core_of(two);
        c.expect(oracle::isomorphic(c1.core, c2.core), "cores differ across orderings at trial " + std::to_string(trial));
        for (auto * r : {&c1, &c2}) {
            c.expect(is_core(r->core) && oracle::is_core(r->core), "result is not a core");
            c.expect(oracle::hom_exists(a, r->core) && oracle::hom_exists(r->core, a), "not hom-equivalent");
        }
    }
}

void solvers(Check & c)
{
    std::mt19937_64 rng(seed_solvers);
    Signature sig({{"E", 2}, {"T", 3}});
    std::size_t instances = 0, disagreements = 0;
    while (instances < 100) {
        std::uniform_int_distribution<std::size_t> na(1, 8), nx(1, 5);
        auto a = oracle::random_structure(rng, sig, na(rng), 0.06);
        if (exact_treewidth(a).width > 3)
            continue;
        auto x = oracle::random_structure(rng, sig, nx(rng), 0.4);
        ++instances;
        auto td = find_hom_td(a, x, heuristic_decomposition(gaifman_graph(a)));
        auto bt = find_hom(a, x);
        if (td.found() != bt.found() || td.found() != oracle::hom_exists(a, x))
            ++disagreements;
        if (td.found() && ! is_homomorphism(td.homomorphism(), a, x))
            ++disagreements;
    }
    c.expect(disagreements == 0, std::to_string(disagreements) + " disagreements");
}

void relaxation(Check & c)
{
    auto k2 = clique_structure(2), k3 = clique_structure(3), k4 = clique_structure(4);
    std::mt19937_64 rng(seed_relaxation);
    for (int trial = 0; trial < 50; ++trial) {
        auto x = graph_to_structure(oracle::random_graph(rng, 2 + trial % 6, 0.7));
        auto r = relaxation_map({k2, k4, x}, k3, k3);
        c.expect(r.instance.x == x, "X changed");
        c.expect(is_homomorphism(r.a_to_c, k2, k3) && is_homomorphism(r.d_to_b, k3, k4), "invalid witness");
        // B -> X gives D -> X through D -> B.
        if (auto bx = find_hom(k4, x); bx.found())
            c.expect(is_homomorphism(compose(bx.homomorphism(), r.d_to_b), k3, x), "completeness composition fails");
        // C -> X gives A -> X through A -> C.
        if (auto cx = find_hom(k3, x); cx.found())
            c.expect(is_homomorphism(compose(cx.homomorphism(), r.a_to_c), k2, x), "soundness composition fails");
    }
}

} // namespace

int main()
{
    criterion(1, "minor fixture", limit_minor_fixture, minor_fixture);
    criterion(2, "grid decomposition and treewidth", limit_grid_treewidth, grid_treewidth);
    criterion(3, "clique gadget sweep", limit_grohe_sweep, grohe_sweep);
    criterion(4, "promise gadget sweep", limit_pcsp_sweep, pcsp_sweep);
    criterion(5, "grid template witnesses", limit_star, star_condition);
    criterion(6, "clique amplification", limit_amplify, amplification);
    criterion(7, "cores", limit_cores, cores);
    criterion(8, "solver equivalence", limit_solvers, solvers);
    criterion(9, "relaxation", limit_relaxation, relaxation);
    return failures == 0 ? 0 : 1;
}
