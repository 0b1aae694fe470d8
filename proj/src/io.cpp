#include "homforge/io.hpp"

#include "homforge/error.hpp"

#include <fstream>
#include <random>
#include <sstream>

namespace homforge {

namespace {

[[noreturn]] void malformed(const std::string & what) { throw Error(ErrorCode::ParseError, what); }

const Json & field(const Json & j, const char * key)
{
    if (! j.is_object() || ! j.contains(key))
        malformed(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::vector<std::string> string_list(const Json & j, const std::string & what)
{
    if (! j.is_array())
        malformed(what + " must be an array");
    std::vector<std::string> out;
    for (auto & x : j) {
        if (! x.is_string())
            malformed(what + " entries must be strings");
        out.push_back(x.get<std::string>());
    }
    return out;
}

std::size_t unsigned_value(const Json & j, const std::string & what)
{
    if (! j.is_number_integer() || j.get<std::int64_t>() < 0)
        malformed(what + " must be a non-negative integer");
    return j.get<std::size_t>();
}

bool ends_with(const std::string & s, const std::string & suffix)
{
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<std::string> split(const std::string & s, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::size_t parse_count(const std::string & s, const std::string & spec)
{
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (s.empty() || used != s.size() || s[0] == '-')
        throw Error(ErrorCode::InvalidArgument, "bad number \"" + s + "\" in \"" + spec + "\"");
    return static_cast<std::size_t>(v);
}

} // namespace

Json structure_to_json(const Structure & a)
{
    Json j;
    j["signature"] = Json::array();
    for (auto & s : a.signature())
        j["signature"].push_back({{"name", s.name}, {"arity", s.arity}});
    j["universe"] = a.universe();
    j["relations"] = Json::object();
    for (std::size_t r = 0; r < a.relation_count(); ++r) {
        auto & tuples = j["relations"][a.signature()[r].name];
        tuples = Json::array();
        for (auto & t : a.relation(r)) {
            Json row = Json::array();
            for (auto x : t)
                row.push_back(a.name(x));
            tuples.push_back(std::move(row));
        }
    }
    return j;
}

Structure structure_from_json(const Json & j)
{
    std::vector<RelationSymbol> symbols;
    auto & sig = field(j, "signature");
    if (! sig.is_array())
        malformed("signature must be an array");
    for (auto & s : sig) {
        auto & name = field(s, "name");
        if (! name.is_string())
            malformed("symbol names must be strings");
        symbols.push_back({name.get<std::string>(), unsigned_value(field(s, "arity"), "arity")});
    }
    auto universe = string_list(field(j, "universe"), "universe");
    NamedTuples relations;
    if (j.contains("relations")) {
        auto & rels = j.at("relations");
        if (! rels.is_object())
            malformed("relations must be an object");
        for (auto & [name, tuples] : rels.items()) {
            if (! tuples.is_array())
                malformed("relation " + name + " must be an array of tuples");
            auto & list = relations[name];
            for (auto & t : tuples)
                list.push_back(string_list(t, "tuple of " + name));
        }
    }
    return build_structure(Signature(std::move(symbols)), std::move(universe), relations);
}

Graph read_dimacs(std::istream & in)
{
    std::string line;
    std::optional<std::size_t> n;
    std::vector<Graph::Edge> edges;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (! (ls >> tag) || tag == "c")
            continue;
        auto where = " on line " + std::to_string(line_no);
        if (tag == "p") {
            std::string format;
            std::size_t vertices = 0, count = 0;
            if (n || ! (ls >> format >> vertices >> count) || (format != "edge" && format != "col"))
                malformed("bad problem line" + where);
            n = vertices;
        } else if (tag == "e") {
            long long u = 0, v = 0;
            if (! n || ! (ls >> u >> v))
                malformed("bad edge line" + where);
            if (u < 1 || v < 1 || static_cast<std::size_t>(u) > *n || static_cast<std::size_t>(v) > *n)
                throw Error(ErrorCode::UnknownElement, "edge endpoint out of range" + where);
            edges.emplace_back(u - 1, v - 1);
        } else {
            malformed("unknown line type \"" + tag + "\"" + where);
        }
    }
    if (! n)
        malformed("missing problem line");
    std::vector<std::string> names;
    for (std::size_t v = 1; v <= *n; ++v)
        names.push_back(std::to_string(v));
    return Graph(std::move(names), edges);
}

void write_dimacs(std::ostream & out, const Graph & g)
{
    out << "p edge " << g.order() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges())
        out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

Json decomposition_to_json(const TreeDecomposition & d, const Graph & g)
{
    Json j;
    j["tree_edges"] = Json::array();
    for (auto [s, t] : d.tree.edges())
        j["tree_edges"].push_back({s, t});
    j["bags"] = Json::object();
    for (std::size_t t = 0; t < d.bags.size(); ++t) {
        Json bag = Json::array();
        for (auto v : d.bags[t])
            bag.push_back(g.name(v));
        j["bags"][std::to_string(t)] = std::move(bag);
    }
    return j;
}

TreeDecomposition decomposition_from_json(const Json & j, const Graph & g)
{
    auto & bags_json = field(j, "bags");
    if (! bags_json.is_object())
        malformed("bags must be an object keyed by tree node");
    std::vector<std::vector<Element>> bags(bags_json.size());
    std::vector<char> seen(bags.size(), 0);
    for (auto & [key, bag] : bags_json.items()) {
        std::size_t t = 0;
        try {
            t = parse_count(key, "bags");
        } catch (const Error &) {
            malformed("tree node \"" + key + "\" is not an index");
        }
        if (t >= bags.size() || seen[t])
            malformed("tree nodes must be 0.." + std::to_string(bags.size() - 1));
        seen[t] = 1;
        for (auto & name : string_list(bag, "bag " + key))
            bags[t].push_back(g.index_of(name));
    }
    std::vector<std::pair<Element, Element>> edges;
    auto & edges_json = field(j, "tree_edges");
    if (! edges_json.is_array())
        malformed("tree_edges must be an array");
    for (auto & e : edges_json) {
        if (! e.is_array() || e.size() != 2)
            malformed("tree edges are pairs");
        auto s = unsigned_value(e[0], "tree node"), t = unsigned_value(e[1], "tree node");
        if (s >= bags.size() || t >= bags.size())
            throw Error(ErrorCode::MalformedTree, "tree edge to unknown node");
        edges.emplace_back(s, t);
    }
    return make_decomposition(std::move(bags), edges);
}

Json minor_map_to_json(const MinorMap & m)
{
    Json j;
    j["assignment"] = Json::object();
    for (std::size_t v = 0; v < m.assignment.size(); ++v) {
        Json branch = Json::array();
        for (auto x : m.assignment[v])
            branch.push_back(m.target.name(x));
        j["assignment"][m.source.name(v)] = std::move(branch);
    }
    return j;
}

MinorMap minor_map_from_json(const Json & j, const Graph & source, const Graph & target)
{
    auto & assignment = field(j, "assignment");
    if (! assignment.is_object())
        malformed("assignment must be an object");
    MinorMap m{source, target, std::vector<std::vector<Element>>(source.order())};
    for (auto & [key, branch] : assignment.items()) {
        auto v = source.index_of(key);
        for (auto & name : string_list(branch, "branch set of " + key))
            m.assignment[v].push_back(target.index_of(name));
        std::sort(m.assignment[v].begin(), m.assignment[v].end());
    }
    return m;
}

Json homomorphism_to_json(const Homomorphism & h, const Structure & source, const Structure & target)
{
    Json j;
    j["map"] = Json::object();
    for (Element a = 0; a < h.size(); ++a)
        j["map"][source.name(a)] = target.name(h(a));
    return j;
}

Graph random_graph(std::size_t n, double p, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<std::string> names;
    for (std::size_t v = 0; v < n; ++v)
        names.push_back(std::to_string(v));
    std::vector<Graph::Edge> edges;
    for (Element u = 0; u < n; ++u)
        for (Element v = u + 1; v < n; ++v)
            if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < p)
                edges.emplace_back(u, v);
    return Graph(std::move(names), edges);
}

bool is_generator_spec(const std::string & spec)
{
    auto kind = split(spec, ':').front();
    return spec.find(':') != std::string::npos
        && (kind == "clique" || kind == "grid" || kind == "typed_grid" || kind == "random");
}

Structure generate(const std::string & spec, std::uint64_t default_seed)
{
    auto parts = split(spec, ':');
    auto & kind = parts.front();
    auto arg = [&](std::size_t i) { return parse_count(parts.at(i), spec); };
    if (kind == "clique" && parts.size() == 2)
        return clique_structure(arg(1));
    if (kind == "grid" && parts.size() == 3)
        return grid_structure(arg(1), arg(2));
    if (kind == "typed_grid" && (parts.size() == 2 || parts.size() == 3))
        return typed_grid(arg(1), parts.size() == 3 ? arg(2) : arg(1));
    if (kind == "random" && (parts.size() == 3 || parts.size() == 4)) {
        double p = 0;
        std::size_t used = 0;
        try {
            p = std::stod(parts[2], &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != parts[2].size() || ! (p >= 0.0 && p <= 1.0))
            throw Error(ErrorCode::InvalidArgument, "edge probability must lie in [0, 1] in \"" + spec + "\"");
        auto seed = parts.size() == 4 ? static_cast<std::uint64_t>(arg(3)) : default_seed;
        return graph_to_structure(random_graph(arg(1), p, seed));
    }
    throw Error(ErrorCode::InvalidArgument,
        "unknown generator \"" + spec + "\" (clique:k, grid:k:l, typed_grid:k[:l], random:n:p[:seed])");
}

Json load_json(const std::string & path)
{
    std::ifstream in(path);
    if (! in)
        throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception & e) {
        malformed(path + ": " + e.what());
    }
}

Structure load_structure(const std::string & source, std::uint64_t default_seed)
{
    if (ends_with(source, ".json"))
        return structure_from_json(load_json(source));
    if (ends_with(source, ".dimacs") || ends_with(source, ".col")) {
        std::ifstream in(source);
        if (! in)
            throw Error(ErrorCode::InvalidArgument, "cannot open " + source);
        return graph_to_structure(read_dimacs(in));
    }
    return generate(source, default_seed);
}

Graph load_graph(const std::string & source, std::uint64_t default_seed)
{
    if (ends_with(source, ".dimacs") || ends_with(source, ".col")) {
        std::ifstream in(source);
        if (! in)
            throw Error(ErrorCode::InvalidArgument, "cannot open " + source);
        return read_dimacs(in);
    }
    return structure_to_graph(load_structure(source, default_seed));
}

void save_json(const std::string & path, const Json & j)
{
    std::ofstream out(path);
    if (! out)
        throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    out << j.dump(2) << '\n';
}

void save_structure(const std::string & path, const Structure & a)
{
    if (ends_with(path, ".dimacs") || ends_with(path, ".col")) {
        std::ofstream out(path);
        if (! out)
            throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
        write_dimacs(out, structure_to_graph(a));
        return;
    }
    save_json(path, structure_to_json(a));
}

} // namespace homforge
