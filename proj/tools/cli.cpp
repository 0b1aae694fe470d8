#include "cli.hpp"

#include "homforge/cores.hpp"
#include "homforge/error.hpp"
#include "homforge/io.hpp"
#include "homforge/minors.hpp"
#include "homforge/reductions.hpp"
#include "homforge/solver.hpp"
#include "homforge/treewidth.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <ostream>

namespace homforge::cli {

namespace {

struct Context {
    std::ostream & out;
    std::ostream & err;
    bool json = false;
    std::uint64_t seed = 0;
    SearchBudget budget;

    void emit(const Json & j) const { out << j.dump(2) << '\n'; }
};

SearchBudget budget_from(long long flag_ms)
{
    SearchBudget b;
    long long ms = flag_ms;
    if (ms <= 0)
        if (const char * env = std::getenv("HOMFORGE_BUDGET_MS")) {
            char * end = nullptr;
            ms = std::strtoll(env, &end, 10);
            if (end == env || *end != '\0' || ms <= 0)
                throw Error(ErrorCode::InvalidArgument, "HOMFORGE_BUDGET_MS must be a positive integer");
        }
    if (ms > 0)
        b.time_limit = std::chrono::milliseconds(ms);
    return b;
}

bool has_suffix(const std::string & s, const std::string & suffix)
{
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// DIMACS files are graphs already; anything else is read as a structure and
// replaced by its Gaifman graph.
Graph graph_of(const std::string & source, const Context & ctx)
{
    if (has_suffix(source, ".dimacs") || has_suffix(source, ".col"))
        return load_graph(source);
    return gaifman_graph(load_structure(source, ctx.seed));
}

const char * outcome_name(const HomSearchResult & r)
{
    return r.found() ? "found" : r.none() ? "none" : "budget_exceeded";
}

int outcome_code(const HomSearchResult & r)
{
    return r.found() ? Exit::yes : r.none() ? Exit::no : Exit::inconclusive;
}

int report_hom(const Context & ctx, const HomSearchResult & r, const Structure & a, const Structure & x)
{
    if (ctx.json) {
        Json j{{"result", outcome_name(r)}};
        if (r.found())
            j["map"] = homomorphism_to_json(r.homomorphism(), a, x)["map"];
        ctx.emit(j);
    } else {
        ctx.out << outcome_name(r) << '\n';
        if (r.found())
            for (Element e = 0; e < a.size(); ++e)
                ctx.out << "  " << a.name(e) << " -> " << x.name(r.homomorphism()(e)) << '\n';
    }
    return outcome_code(r);
}

int report_minor(const Context & ctx, const MinorSearchResult & r)
{
    const char * result = r.map ? "found" : r.budget_exceeded ? "budget_exceeded" : "none";
    if (ctx.json) {
        Json j{{"result", result}};
        if (r.map)
            j["assignment"] = minor_map_to_json(*r.map)["assignment"];
        ctx.emit(j);
    } else {
        ctx.out << result << '\n';
        if (r.map)
            for (std::size_t v = 0; v < r.map->assignment.size(); ++v) {
                ctx.out << "  " << r.map->source.name(v) << " ->";
                for (auto x : r.map->assignment[v])
                    ctx.out << ' ' << r.map->target.name(x);
                ctx.out << '\n';
            }
    }
    return r.map ? Exit::yes : r.budget_exceeded ? Exit::inconclusive : Exit::no;
}

int report_width(const Context & ctx, const TreeDecomposition & d, const Graph & g, const std::string & output)
{
    if (! output.empty())
        save_json(output, decomposition_to_json(d, g));
    if (ctx.json) {
        Json j{{"width", d.width()}, {"bags", d.bags.size()}};
        if (output.empty())
            j["decomposition"] = decomposition_to_json(d, g);
        ctx.emit(j);
    } else {
        ctx.out << d.width() << '\n';
    }
    return Exit::yes;
}

GridTemplate load_template(const std::string & spec, const std::string & a_source, std::size_t k, const Context & ctx)
{
    if (spec == "core") {
        if (a_source.empty() || k == 0)
            throw Error(ErrorCode::InvalidArgument, "--template core needs --A and -k");
        return make_core_template(load_structure(a_source, ctx.seed), k, ctx.budget);
    }
    auto sep = spec.find(':');
    auto sep2 = spec.find(':', sep == std::string::npos ? sep : sep + 1);
    if (spec.rfind("grid:", 0) == 0 && sep2 != std::string::npos) {
        try {
            std::size_t kk = std::stoul(spec.substr(sep + 1, sep2 - sep - 1));
            std::size_t f = std::stoul(spec.substr(sep2 + 1));
            return make_grid_template(kk, f);
        } catch (const std::logic_error &) {
            // fall through to the error below
        }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown template \"" + spec + "\" (grid:k:f or core)");
}

Json report_to_json(const VerificationReport & r)
{
    auto records = [](const std::vector<InstanceRecord> & list) {
        Json a = Json::array();
        for (auto & x : list)
            a.push_back({{"id", x.id}, {"graph", x.graph}, {"detail", x.detail}});
        return a;
    };
    return {
        {"instances", r.instances},
        {"passed", r.passed},
        {"completeness_checks", r.completeness_checks},
        {"soundness_checks", r.soundness_checks},
        {"counterexamples", records(r.counterexamples)},
        {"inconclusive", records(r.inconclusive)},
    };
}

int report_verification(const Context & ctx, const VerificationReport & r, Json extra)
{
    if (ctx.json) {
        auto j = report_to_json(r);
        for (auto & [key, value] : extra.items())
            j[key] = value;
        ctx.emit(j);
    } else {
        ctx.out << "instances: " << r.instances << '\n'
                << "passed: " << r.passed << '\n'
                << "completeness checks: " << r.completeness_checks << '\n'
                << "soundness checks: " << r.soundness_checks << '\n'
                << "counterexamples: " << r.counterexamples.size() << '\n'
                << "inconclusive: " << r.inconclusive.size() << '\n';
        for (auto & x : r.counterexamples)
            ctx.out << "  counterexample #" << x.id << " [" << x.graph << "]: " << x.detail << '\n';
        for (auto & x : r.inconclusive)
            ctx.out << "  inconclusive #" << x.id << " [" << x.graph << "]: " << x.detail << '\n';
    }
    if (! r.counterexamples.empty())
        return Exit::no;
    return r.inconclusive.empty() ? Exit::yes : Exit::inconclusive;
}

} // namespace

int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
    CLI::App app{"Relational structures, homomorphisms, decompositions and clique gadgets", "homforge"};
    app.require_subcommand(1);
    app.fallthrough();

    Context ctx{out, err, false, 0, {}};
    long long budget_ms = 0;
    app.add_flag("--json", ctx.json, "Print a single JSON document");
    app.add_option("--seed", ctx.seed, "Seed for random:n:p generators given without one");
    app.add_option("--budget-ms", budget_ms, "Time limit per search (default: HOMFORGE_BUDGET_MS)");

    std::function<int()> action;

    // gen
    std::vector<std::string> gen_spec;
    std::string gen_output;
    auto gen = app.add_subcommand("gen", "Generate clique, grid, typed_grid or random structures");
    gen->add_option("spec", gen_spec, "KIND PARAMS... (e.g. grid 3 3) or KIND:PARAMS")->required();
    gen->add_option("-o,--output", gen_output, "Write .json or .dimacs instead of printing");
    gen->callback([&] {
        action = [&] {
            std::string spec = gen_spec.front();
            for (std::size_t i = 1; i < gen_spec.size(); ++i)
                spec += ":" + gen_spec[i];
            auto a = generate(spec, ctx.seed);
            if (gen_output.empty()) {
                ctx.emit(structure_to_json(a));
                return int(Exit::yes);
            }
            save_structure(gen_output, a);
            if (ctx.json)
                ctx.emit({{"output", gen_output}, {"elements", a.size()}, {"tuples", a.tuple_count()}});
            else
                ctx.out << "wrote " << gen_output << " (" << a.size() << " elements, " << a.tuple_count() << " tuples)\n";
            return int(Exit::yes);
        };
    });

    // hom
    std::string hom_a, hom_x;
    bool hom_td = false;
    auto hom = app.add_subcommand("hom", "Homomorphism search");
    hom->require_subcommand(1);
    auto hom_find = hom->add_subcommand("find", "Decide A -> X (exit 0 found, 1 none, 3 budget)");
    hom_find->add_option("A", hom_a)->required();
    hom_find->add_option("X", hom_x)->required();
    hom_find->add_flag("--td", hom_td, "Use the tree-decomposition algorithm with a min-fill decomposition");
    hom_find->callback([&] {
        action = [&] {
            auto a = load_structure(hom_a, ctx.seed);
            auto x = load_structure(hom_x, ctx.seed);
            auto r = hom_td ? find_hom_td(a, x, heuristic_decomposition(gaifman_graph(a))) : find_hom(a, x, ctx.budget);
            return report_hom(ctx, r, a, x);
        };
    });
    auto hom_count = hom->add_subcommand("count", "Count homomorphisms A -> X");
    hom_count->add_option("A", hom_a)->required();
    hom_count->add_option("X", hom_x)->required();
    hom_count->callback([&] {
        action = [&] {
            auto n = count_homs(load_structure(hom_a, ctx.seed), load_structure(hom_x, ctx.seed));
            if (ctx.json)
                ctx.emit({{"count", n}});
            else
                ctx.out << n << '\n';
            return int(Exit::yes);
        };
    });

    // core
    std::string core_a, core_output;
    auto core = app.add_subcommand("core", "Compute a core");
    core->add_option("A", core_a)->required();
    core->add_option("-o,--output", core_output, "Write the core as JSON");
    core->callback([&] {
        action = [&] {
            auto a = load_structure(core_a, ctx.seed);
            auto result = core_of(a, ctx.budget);
            if (! core_output.empty())
                save_structure(core_output, result.core);
            if (ctx.json) {
                Json j{{"elements", a.size()}, {"core_elements", result.core.size()}};
                j["retraction"] = homomorphism_to_json(result.retraction, a, result.core)["map"];
                if (core_output.empty())
                    j["core"] = structure_to_json(result.core);
                ctx.emit(j);
            } else {
                ctx.out << "core: " << result.core.size() << " of " << a.size() << " elements\n";
                for (auto & name : result.core.universe())
                    ctx.out << "  " << name << '\n';
            }
            return int(Exit::yes);
        };
    });

    // tw
    std::string tw_g, tw_output;
    auto tw = app.add_subcommand("tw", "Treewidth");
    tw->require_subcommand(1);
    auto tw_exact = tw->add_subcommand("exact", "Exact treewidth (at most 18 vertices)");
    tw_exact->add_option("G", tw_g)->required();
    tw_exact->add_option("-o,--output", tw_output, "Write the optimal decomposition as JSON");
    tw_exact->callback([&] {
        action = [&] {
            auto g = graph_of(tw_g, ctx);
            return report_width(ctx, exact_treewidth(g).decomposition, g, tw_output);
        };
    });
    auto tw_heur = tw->add_subcommand("heur", "Min-fill decomposition");
    tw_heur->add_option("G", tw_g)->required();
    tw_heur->add_option("-o,--output", tw_output, "Write the decomposition as JSON");
    tw_heur->callback([&] {
        action = [&] {
            auto g = graph_of(tw_g, ctx);
            return report_width(ctx, heuristic_decomposition(g), g, tw_output);
        };
    });

    // minor
    std::string minor_h, minor_g;
    std::size_t minor_k = 0;
    auto minor = app.add_subcommand("minor", "Minor search");
    minor->require_subcommand(1);
    auto minor_find = minor->add_subcommand("find", "Find a minor map H -> G");
    minor_find->add_option("H", minor_h)->required();
    minor_find->add_option("G", minor_g)->required();
    minor_find->callback([&] {
        action = [&] { return report_minor(ctx, find_minor_map(graph_of(minor_h, ctx), graph_of(minor_g, ctx), ctx.budget)); };
    });
    auto minor_grid = minor->add_subcommand("grid", "Find a k x k grid minor");
    minor_grid->add_option("G", minor_g)->required();
    minor_grid->add_option("-k", minor_k, "Grid side")->required()->check(CLI::PositiveNumber);
    minor_grid->callback([&] {
        action = [&] { return report_minor(ctx, find_grid_minor(graph_of(minor_g, ctx), minor_k, ctx.budget)); };
    });

    // reduce
    std::string red_a, red_mu, red_g, red_template, red_output;
    std::size_t red_k = 0, red_l = 0;
    auto reduce = app.add_subcommand("reduce", "Build gadget instances");
    reduce->require_subcommand(1);
    auto red_grohe = reduce->add_subcommand("grohe", "Clique gadget M(A, mu, G)");
    red_grohe->add_option("--A", red_a, "Connected structure with a k x k(k-1)/2 grid minor")->required();
    red_grohe->add_option("--mu", red_mu, "Minor map JSON (default: identity or searched)");
    red_grohe->add_option("--G", red_g, "Graph")->required();
    red_grohe->add_option("-k", red_k, "Clique size")->required();
    red_grohe->add_option("-o,--output", red_output, "Write M as JSON");
    red_grohe->callback([&] {
        action = [&] {
            auto a = load_structure(red_a, ctx.seed);
            auto g = load_graph(red_g, ctx.seed);
            MinorMap mu = red_mu.empty()
                ? clique_gadget_minor(a, red_k, ctx.budget)
                : minor_map_from_json(load_json(red_mu), grid_graph(red_k, red_k * (red_k - 1) / 2), gaifman_graph(a));
            auto inst = grohe_construct(a, mu, g, red_k);
            if (! red_output.empty())
                save_structure(red_output, inst.m);
            if (ctx.json) {
                Json j{{"elements", inst.m.size()}, {"tuples", inst.m.tuple_count()}, {"k", red_k},
                    {"columns", inst.columns}};
                if (red_output.empty())
                    j["structure"] = structure_to_json(inst.m);
                ctx.emit(j);
            } else {
                ctx.out << "M: " << inst.m.size() << " elements, " << inst.m.tuple_count() << " tuples\n";
            }
            return int(Exit::yes);
        };
    });
    auto red_pcsp = reduce->add_subcommand("pcsp", "Promise gadget X for a template");
    red_pcsp->add_option("--template", red_template, "grid:k:f, or core (with --A and -k)")->required();
    red_pcsp->add_option("--A", red_a, "Structure for the core template");
    red_pcsp->add_option("-k", red_k, "Grid side for the core template");
    red_pcsp->add_option("--G", red_g, "Graph")->required();
    red_pcsp->add_option("-o,--output", red_output, "Write X as JSON");
    red_pcsp->callback([&] {
        action = [&] {
            auto t = load_template(red_template, red_a, red_k, ctx);
            auto g = load_graph(red_g, ctx.seed);
            auto inst = pcsp_construct(t, g);
            std::size_t bound = t.pair.b.size();
            for (std::size_t i = 0; i < 2 * inst.layers; ++i)
                bound *= g.order();
            if (! red_output.empty())
                save_structure(red_output, inst.x);
            if (ctx.json) {
                Json j{{"elements", inst.x.size()}, {"tuples", inst.x.tuple_count()}, {"size_bound", bound},
                    {"k", t.k}, {"layers", inst.layers}};
                if (red_output.empty())
                    j["structure"] = structure_to_json(inst.x);
                ctx.emit(j);
            } else {
                ctx.out << "X: " << inst.x.size() << " elements (bound " << bound << "), " << inst.x.tuple_count()
                        << " tuples\n";
            }
            return int(Exit::yes);
        };
    });
    auto red_amp = reduce->add_subcommand("amplify", "Join of ceil(l/k) copies of G");
    red_amp->add_option("--G", red_g, "Graph")->required();
    red_amp->add_option("-k", red_k, "Source clique size")->required();
    red_amp->add_option("-l", red_l, "Target clique size")->required();
    red_amp->add_option("-o,--output", red_output, "Write H as .json or .dimacs");
    red_amp->callback([&] {
        action = [&] {
            auto g = load_graph(red_g, ctx.seed);
            auto amp = clique_amplify(g, red_k, red_l);
            if (! red_output.empty())
                save_structure(red_output, graph_to_structure(amp.h));
            auto pairs = gap_pairs(red_k, red_l);
            if (ctx.json) {
                Json gaps = Json::array();
                for (auto [f, gl] : pairs)
                    gaps.push_back({{"f", f}, {"g", gl}});
                ctx.emit({{"copies", amp.copies}, {"vertices", amp.h.order()}, {"edges", amp.h.edge_count()},
                    {"gap_pairs", gaps}});
            } else {
                ctx.out << "H: " << amp.copies << " copies, " << amp.h.order() << " vertices, " << amp.h.edge_count()
                        << " edges\n";
                for (auto [f, gl] : pairs)
                    ctx.out << "  gap pair f=" << f << " g=" << gl << '\n';
            }
            return int(Exit::yes);
        };
    });

    // verify
    std::string ver_kind;
    std::size_t ver_max_n = 5;
    auto verify = app.add_subcommand("verify", "Check a reduction on every graph up to a size");
    verify->add_option("--kind", ver_kind, "grohe, pcsp or amplify")
        ->required()
        ->check(CLI::IsMember({"grohe", "pcsp", "amplify"}));
    verify->add_option("--A", red_a, "Structure (grohe, core template)");
    verify->add_option("--template", red_template, "grid:k:f or core");
    verify->add_option("--max-n", ver_max_n, "Largest graph order")->check(CLI::Range(1, 7));
    verify->add_option("-k", red_k, "Clique size");
    verify->add_option("-l", red_l, "Target clique size (amplify)");
    verify->callback([&] {
        action = [&] {
            auto graphs = all_graphs(ver_max_n);
            Json extra{{"kind", ver_kind}, {"max_n", ver_max_n}};
            if (ver_kind == "grohe") {
                if (red_a.empty() || red_k < 2)
                    throw CLI::ValidationError("verify --kind grohe needs --A and -k >= 2");
                auto a = load_structure(red_a, ctx.seed);
                auto mu = clique_gadget_minor(a, red_k, ctx.budget);
                return report_verification(ctx, verify_grohe({a, mu, red_k}, graphs, ctx.budget), extra);
            }
            if (ver_kind == "pcsp") {
                if (red_template.empty())
                    throw CLI::ValidationError("verify --kind pcsp needs --template");
                auto t = load_template(red_template, red_a, red_k, ctx);
                return report_verification(ctx, verify_pcsp(t, graphs, ctx.budget), extra);
            }
            if (red_k < 1 || red_l < 1)
                throw CLI::ValidationError("verify --kind amplify needs -k and -l");
            Json gaps = Json::array();
            for (auto [f, gl] : gap_pairs(red_k, red_l))
                gaps.push_back({{"f", f}, {"g", gl}});
            extra["gap_pairs"] = gaps;
            return report_verification(ctx, verify_amplify({red_k, red_l}, graphs), extra);
        };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
        ctx.budget = budget_from(budget_ms);
        return action();
    } catch (const CLI::ParseError & e) {
        int code = app.exit(e, out, err);
        return code == 0 ? int(Exit::yes) : int(Exit::usage);
    } catch (const Error & e) {
        if (ctx.json)
            ctx.emit({{"error", to_string(e.code())}, {"message", e.what()}});
        else
            err << "error: " << e.what() << '\n';
        return e.code() == ErrorCode::BudgetExceeded ? Exit::inconclusive : Exit::usage;
    } catch (const std::exception & e) {
        err << "error: " << e.what() << '\n';
        return Exit::usage;
    }
}

} // namespace homforge::cli
