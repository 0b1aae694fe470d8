#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace homforge {

/// Index of an element inside a structure's universe (or a vertex of a Graph).
using Element = std::size_t;
using Tuple = std::vector<Element>;

struct RelationSymbol {
    std::string name;
    std::size_t arity = 0;

    friend bool operator==(const RelationSymbol &, const RelationSymbol &) = default;
};

/// Ordered list of relation symbols. The order is canonical: relations of
/// every structure in this signature are stored and iterated in it.
class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<RelationSymbol> symbols);

    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    const RelationSymbol & operator[](std::size_t i) const { return symbols_[i]; }
    std::optional<std::size_t> find(std::string_view name) const;
    std::size_t max_arity() const noexcept;

    auto begin() const noexcept { return symbols_.begin(); }
    auto end() const noexcept { return symbols_.end(); }

    friend bool operator==(const Signature &, const Signature &) = default;

private:
    std::vector<RelationSymbol> symbols_;
};

/// A set of tuples of fixed arity, kept sorted and duplicate-free.
class Relation {
public:
    Relation() = default;
    Relation(std::size_t arity, std::vector<Tuple> tuples);

    std::size_t arity() const noexcept { return arity_; }
    std::size_t size() const noexcept { return tuples_.size(); }
    bool empty() const noexcept { return tuples_.empty(); }
    const std::vector<Tuple> & tuples() const noexcept { return tuples_; }
    bool contains(std::span<const Element> tuple) const;

    auto begin() const noexcept { return tuples_.begin(); }
    auto end() const noexcept { return tuples_.end(); }

    friend bool operator==(const Relation &, const Relation &) = default;

private:
    std::size_t arity_ = 0;
    std::vector<Tuple> tuples_;
};

/// Finite relational structure. Immutable after construction; element
/// identifiers are opaque strings whose insertion order is the canonical
/// element order.
class Structure {
public:
    Structure() = default;

    /// Index-based constructor. `relations[r]` holds the tuples of symbol r.
    /// Throws DuplicateElement, UnknownElement, ArityMismatch.
    Structure(Signature signature, std::vector<std::string> universe, std::vector<std::vector<Tuple>> relations);

    const Signature & signature() const noexcept { return signature_; }
    std::size_t size() const noexcept { return universe_.size(); }
    bool empty() const noexcept { return universe_.empty(); }
    const std::vector<std::string> & universe() const noexcept { return universe_; }
    const std::string & name(Element a) const { return universe_.at(a); }
    std::optional<Element> find(std::string_view name) const;
    Element index_of(std::string_view name) const;

    std::size_t relation_count() const noexcept { return relations_.size(); }
    const Relation & relation(std::size_t r) const { return relations_.at(r); }
    const Relation & relation(std::string_view symbol) const;
    std::size_t tuple_count() const noexcept;

    bool similar_to(const Structure & other) const noexcept { return signature_ == other.signature_; }

    friend bool operator==(const Structure & a, const Structure & b)
    {
        return a.signature_ == b.signature_ && a.universe_ == b.universe_ && a.relations_ == b.relations_;
    }

private:
    Signature signature_;
    std::vector<std::string> universe_;
    std::unordered_map<std::string, Element> index_;
    std::vector<Relation> relations_;
};

using NamedTuples = std::map<std::string, std::vector<std::vector<std::string>>, std::less<>>;

/// Name-based constructor enforcing well-formedness. Duplicate tuples are
/// dropped. Throws UnknownSymbol, ArityMismatch, UnknownElement, DuplicateElement.
Structure build_structure(const Signature & signature, std::vector<std::string> universe, const NamedTuples & relations);

/// Total map between universes, stored by element index.
struct Homomorphism {
    std::vector<Element> image;

    Element operator()(Element a) const { return image[a]; }
    std::size_t size() const noexcept { return image.size(); }

    friend bool operator==(const Homomorphism &, const Homomorphism &) = default;
};

Homomorphism identity_map(std::size_t n);
/// `outer` after `inner`.
Homomorphism compose(const Homomorphism & outer, const Homomorphism & inner);

/// Throws DissimilarStructures, PartialMap (wrong length or out-of-range image).
bool is_homomorphism(const Homomorphism & f, const Structure & source, const Structure & target);
bool is_homomorphism(const std::map<std::string, std::string> & f, const Structure & source, const Structure & target);
std::map<std::string, std::string> to_named(const Homomorphism & f, const Structure & source, const Structure & target);

/// Simple undirected loop-free graph; edges are unordered pairs.
class Graph {
public:
    using Edge = std::pair<Element, Element>;

    Graph() = default;
    /// Throws DuplicateElement, UnknownElement, LoopEdge. Duplicate edges are merged.
    Graph(std::vector<std::string> vertices, const std::vector<Edge> & edges);
    static Graph from_names(std::vector<std::string> vertices,
        const std::vector<std::pair<std::string, std::string>> & edges);

    std::size_t order() const noexcept { return vertices_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<std::string> & vertices() const noexcept { return vertices_; }
    const std::string & name(Element v) const { return vertices_.at(v); }
    std::optional<Element> find(std::string_view name) const;
    Element index_of(std::string_view name) const;

    /// Edges as (u, v) with u < v, sorted.
    const std::vector<Edge> & edges() const noexcept { return edges_; }
    const std::vector<Element> & neighbors(Element v) const { return adjacency_[v]; }
    std::size_t degree(Element v) const { return adjacency_[v].size(); }
    bool adjacent(Element u, Element v) const;

    friend bool operator==(const Graph & a, const Graph & b)
    {
        return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
    }

private:
    std::vector<std::string> vertices_;
    std::unordered_map<std::string, Element> index_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Element>> adjacency_;
};

/// True iff the vertex subset is non-empty and induces a connected subgraph.
bool is_connected_subset(const Graph & g, std::span<const Element> subset);
/// Components of the whole graph, each sorted, ordered by first vertex.
std::vector<std::vector<Element>> connected_components(const Graph & g);

Graph gaifman_graph(const Structure & a);
std::vector<std::vector<Element>> connected_components(const Structure & a);

/// Universe is the tagged union (first operand's elements first); element names
/// are `encode_components({"0", a})` and `encode_components({"1", b})`.
Structure disjoint_union(const Structure & a, const Structure & b);
Homomorphism left_injection(const Structure & a, const Structure & b);
Homomorphism right_injection(const Structure & a, const Structure & b);

/// Universe is `subset` in the given order; keeps every tuple lying inside it.
Structure induced_substructure(const Structure & a, std::span<const Element> subset);
Structure induced_substructure(const Structure & a, const std::vector<std::string> & subset);

/// Same structure with its universe listed in a different order:
/// new element i is old element `order[i]`.
Structure reorder_universe(const Structure & a, std::span<const Element> order);

/// |σ| + |A| + Σ_R |R^A|·ar(R)
std::size_t size_of(const Structure & a);

/// Signature with a single binary symbol `E`.
const Signature & graph_signature();
/// Symmetric structure over `E` (both orientations of every edge).
Structure graph_to_structure(const Graph & g);
/// Inverse of graph_to_structure. Throws InvalidArgument unless the structure is
/// a loop-free symmetric digraph over a single binary symbol.
Graph structure_to_graph(const Structure & a);

std::string grid_vertex_name(std::size_t i, std::size_t j);

/// Disequality relation on {0..k-1}. Throws InvalidDimension for k < 1.
Structure clique_structure(std::size_t k);
Graph complete_graph(std::size_t k);
/// Vertices (i, j), i < k, j < l, listed row by row.
Graph grid_graph(std::size_t k, std::size_t l);
Structure grid_structure(std::size_t k, std::size_t l);
/// Directed grid with H ((i,j),(i,j+1)) and V ((i,j),(i+1,j)) tuples.
Structure typed_grid(std::size_t k, std::size_t l);
const Signature & typed_grid_signature();

/// Joins components with `|`, escaping `\` and `|` inside each component.
/// Injective on component lists of a fixed length.
std::string encode_components(std::span<const std::string> components);
std::string encode_components(std::initializer_list<std::string> components);

} // namespace homforge
