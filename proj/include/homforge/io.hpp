#pragma once

#include "homforge/minors.hpp"
#include "homforge/structure.hpp"
#include "homforge/treewidth.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace homforge {

using Json = nlohmann::ordered_json;

// All readers throw ParseError on malformed input and the structure module's
// errors on ill-formed content.

/// {"signature": [{"name", "arity"}...], "universe": [...], "relations": {name: [[...]...]}}
Json structure_to_json(const Structure & a);
Structure structure_from_json(const Json & j);

/// `p edge n m` header, `e u v` lines, `c` comments. Vertices are named "1".."n".
Graph read_dimacs(std::istream & in);
void write_dimacs(std::ostream & out, const Graph & g);

/// {"tree_edges": [[t, t']...], "bags": {"t": [vertex names...]}}
Json decomposition_to_json(const TreeDecomposition & d, const Graph & g);
TreeDecomposition decomposition_from_json(const Json & j, const Graph & g);

/// {"assignment": {source vertex: [target vertices...]}}
Json minor_map_to_json(const MinorMap & m);
MinorMap minor_map_from_json(const Json & j, const Graph & source, const Graph & target);

/// {"map": {source element: target element}}
Json homomorphism_to_json(const Homomorphism & h, const Structure & source, const Structure & target);

/// G(n, p) on vertices "0".."n-1": each pair, in lexicographic order, is an
/// edge when the next 53-bit draw of mt19937_64 falls below p.
Graph random_graph(std::size_t n, double p, std::uint64_t seed);

/// clique:k, grid:k:l, typed_grid:k[:l], random:n:p[:seed]. Graph families are
/// returned as symmetric structures. `default_seed` fills a missing seed.
/// Throws InvalidArgument for unknown kinds or bad parameters.
Structure generate(const std::string & spec, std::uint64_t default_seed = 0);
bool is_generator_spec(const std::string & spec);

/// Reads a file by extension (.json, .dimacs) or expands a generator spec.
Structure load_structure(const std::string & source, std::uint64_t default_seed = 0);
Graph load_graph(const std::string & source, std::uint64_t default_seed = 0);
Json load_json(const std::string & path);

/// Writes JSON (two-space indent, trailing newline) or DIMACS by extension.
void save_structure(const std::string & path, const Structure & a);
void save_json(const std::string & path, const Json & j);

} // namespace homforge
