#include "homforge/structure.hpp"

#include "homforge/error.hpp"

#include <algorithm>
#include <numeric>

namespace homforge {

namespace {

std::unordered_map<std::string, Element> index_names(const std::vector<std::string> & names)
{
    std::unordered_map<std::string, Element> index;
    index.reserve(names.size());
    for (Element i = 0; i < names.size(); ++i)
        if (! index.emplace(names[i], i).second)
            throw Error(ErrorCode::DuplicateElement, "element '" + names[i] + "' listed twice");
    return index;
}

} // namespace

Signature::Signature(std::vector<RelationSymbol> symbols) : symbols_(std::move(symbols))
{
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i].arity < 1)
            throw Error(ErrorCode::InvalidArity, "symbol '" + symbols_[i].name + "' has arity 0");
        for (std::size_t j = 0; j < i; ++j)
            if (symbols_[j].name == symbols_[i].name)
                throw Error(ErrorCode::DuplicateSymbol, "symbol '" + symbols_[i].name + "' declared twice");
    }
}

std::optional<std::size_t> Signature::find(std::string_view name) const
{
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i].name == name)
            return i;
    return std::nullopt;
}

std::size_t Signature::max_arity() const noexcept
{
    std::size_t r = 0;
    for (auto & s : symbols_)
        r = std::max(r, s.arity);
    return r;
}

Relation::Relation(std::size_t arity, std::vector<Tuple> tuples) : arity_(arity), tuples_(std::move(tuples))
{
    for (auto & t : tuples_)
        if (t.size() != arity_)
            throw Error(ErrorCode::ArityMismatch,
                "tuple of length " + std::to_string(t.size()) + " in relation of arity " + std::to_string(arity_));
    std::sort(tuples_.begin(), tuples_.end());
    tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
}

bool Relation::contains(std::span<const Element> tuple) const
{
    auto it = std::lower_bound(tuples_.begin(), tuples_.end(), tuple,
        [](const Tuple & a, std::span<const Element> b) {
            return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
        });
    return it != tuples_.end() && std::equal(it->begin(), it->end(), tuple.begin(), tuple.end());
}

Structure::Structure(Signature signature, std::vector<std::string> universe, std::vector<std::vector<Tuple>> relations) :
    signature_(std::move(signature)),
    universe_(std::move(universe)),
    index_(index_names(universe_))
{
    if (relations.size() != signature_.size())
        throw Error(ErrorCode::UnknownSymbol, "relation count does not match the signature");
    relations_.reserve(relations.size());
    for (std::size_t r = 0; r < relations.size(); ++r) {
        for (auto & t : relations[r])
            for (auto a : t)
                if (a >= universe_.size())
                    throw Error(ErrorCode::UnknownElement,
                        "tuple of '" + signature_[r].name + "' mentions element #" + std::to_string(a));
        relations_.emplace_back(signature_[r].arity, std::move(relations[r]));
    }
}

std::optional<Element> Structure::find(std::string_view name) const
{
    auto it = index_.find(std::string(name));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

Element Structure::index_of(std::string_view name) const
{
    if (auto a = find(name))
        return *a;
    throw Error(ErrorCode::UnknownElement, "no element '" + std::string(name) + "'");
}

const Relation & Structure::relation(std::string_view symbol) const
{
    if (auto r = signature_.find(symbol))
        return relations_[*r];
    throw Error(ErrorCode::UnknownSymbol, "no symbol '" + std::string(symbol) + "'");
}

std::size_t Structure::tuple_count() const noexcept
{
    std::size_t n = 0;
    for (auto & r : relations_)
        n += r.size();
    return n;
}

Structure build_structure(const Signature & signature, std::vector<std::string> universe, const NamedTuples & relations)
{
    auto index = index_names(universe);
    std::vector<std::vector<Tuple>> rels(signature.size());
    for (auto & [symbol, tuples] : relations) {
        auto r = signature.find(symbol);
        if (! r)
            throw Error(ErrorCode::UnknownSymbol, "relation '" + symbol + "' is not in the signature");
        for (auto & named : tuples) {
            if (named.size() != signature[*r].arity)
                throw Error(ErrorCode::ArityMismatch, "tuple of length " + std::to_string(named.size()) + " for '"
                        + symbol + "' of arity " + std::to_string(signature[*r].arity));
            Tuple t;
            t.reserve(named.size());
            for (auto & n : named) {
                auto it = index.find(n);
                if (it == index.end())
                    throw Error(ErrorCode::UnknownElement, "tuple of '" + symbol + "' mentions unknown element '" + n + "'");
                t.push_back(it->second);
            }
            rels[*r].push_back(std::move(t));
        }
    }
    return Structure(signature, std::move(universe), std::move(rels));
}

Homomorphism identity_map(std::size_t n)
{
    Homomorphism h;
    h.image.resize(n);
    std::iota(h.image.begin(), h.image.end(), Element{0});
    return h;
}

Homomorphism compose(const Homomorphism & outer, const Homomorphism & inner)
{
    Homomorphism h;
    h.image.reserve(inner.size());
    for (auto a : inner.image)
        h.image.push_back(outer.image.at(a));
    return h;
}

bool is_homomorphism(const Homomorphism & f, const Structure & source, const Structure & target)
{
    if (! source.similar_to(target))
        throw Error(ErrorCode::DissimilarStructures, "source and target signatures differ");
    if (f.size() != source.size())
        throw Error(ErrorCode::PartialMap, "map covers " + std::to_string(f.size()) + " of "
                + std::to_string(source.size()) + " source elements");
    for (auto b : f.image)
        if (b >= target.size())
            throw Error(ErrorCode::PartialMap, "map sends an element outside the target universe");

    Tuple image;
    for (std::size_t r = 0; r < source.relation_count(); ++r) {
        auto & rt = target.relation(r);
        for (auto & t : source.relation(r)) {
            image.clear();
            for (auto a : t)
                image.push_back(f(a));
            if (! rt.contains(image))
                return false;
        }
    }
    return true;
}

bool is_homomorphism(const std::map<std::string, std::string> & f, const Structure & source, const Structure & target)
{
    Homomorphism h;
    h.image.reserve(source.size());
    for (auto & a : source.universe()) {
        auto it = f.find(a);
        if (it == f.end())
            throw Error(ErrorCode::PartialMap, "no image for '" + a + "'");
        auto b = target.find(it->second);
        if (! b)
            throw Error(ErrorCode::PartialMap, "image '" + it->second + "' is not a target element");
        h.image.push_back(*b);
    }
    if (f.size() != source.size())
        throw Error(ErrorCode::PartialMap, "map mentions elements outside the source universe");
    return is_homomorphism(h, source, target);
}

std::map<std::string, std::string> to_named(const Homomorphism & f, const Structure & source, const Structure & target)
{
    std::map<std::string, std::string> named;
    for (Element a = 0; a < f.size(); ++a)
        named.emplace(source.name(a), target.name(f(a)));
    return named;
}

Graph::Graph(std::vector<std::string> vertices, const std::vector<Edge> & edges) :
    vertices_(std::move(vertices)),
    index_(index_names(vertices_)),
    adjacency_(vertices_.size())
{
    edges_.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u >= vertices_.size() || v >= vertices_.size())
            throw Error(ErrorCode::UnknownElement, "edge endpoint out of range");
        if (u == v)
            throw Error(ErrorCode::LoopEdge, "loop at vertex '" + vertices_[u] + "'");
        edges_.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    for (auto [u, v] : edges_) {
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    }
    for (auto & n : adjacency_)
        std::sort(n.begin(), n.end());
}

Graph Graph::from_names(std::vector<std::string> vertices, const std::vector<std::pair<std::string, std::string>> & edges)
{
    auto index = index_names(vertices);
    std::vector<Edge> es;
    es.reserve(edges.size());
    for (auto & [u, v] : edges) {
        auto iu = index.find(u), iv = index.find(v);
        if (iu == index.end() || iv == index.end())
            throw Error(ErrorCode::UnknownElement, "edge {" + u + "," + v + "} mentions an unknown vertex");
        es.emplace_back(iu->second, iv->second);
    }
    return Graph(std::move(vertices), es);
}

std::optional<Element> Graph::find(std::string_view name) const
{
    auto it = index_.find(std::string(name));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

Element Graph::index_of(std::string_view name) const
{
    if (auto v = find(name))
        return *v;
    throw Error(ErrorCode::UnknownElement, "no vertex '" + std::string(name) + "'");
}

bool Graph::adjacent(Element u, Element v) const
{
    auto & n = adjacency_[u];
    return std::binary_search(n.begin(), n.end(), v);
}

bool is_connected_subset(const Graph & g, std::span<const Element> subset)
{
    if (subset.empty())
        return false;
    std::vector<char> in(g.order(), 0), seen(g.order(), 0);
    for (auto v : subset)
        in.at(v) = 1;
    std::vector<Element> stack{subset.front()};
    seen[subset.front()] = 1;
    std::size_t reached = 1;
    while (! stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (auto w : g.neighbors(v))
            if (in[w] && ! seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
    }
    std::size_t distinct = std::count(in.begin(), in.end(), 1);
    return reached == distinct;
}

std::vector<std::vector<Element>> connected_components(const Graph & g)
{
    std::vector<std::vector<Element>> components;
    std::vector<char> seen(g.order(), 0);
    for (Element s = 0; s < g.order(); ++s) {
        if (seen[s])
            continue;
        std::vector<Element> component{s}, stack{s};
        seen[s] = 1;
        while (! stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto w : g.neighbors(v))
                if (! seen[w]) {
                    seen[w] = 1;
                    component.push_back(w);
                    stack.push_back(w);
                }
        }
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
    }
    return components;
}

Graph gaifman_graph(const Structure & a)
{
    std::vector<Graph::Edge> edges;
    for (std::size_t r = 0; r < a.relation_count(); ++r)
        for (auto & t : a.relation(r))
            for (std::size_t x = 0; x < t.size(); ++x)
                for (std::size_t y = x + 1; y < t.size(); ++y)
                    if (t[x] != t[y])
                        edges.emplace_back(t[x], t[y]);
    return Graph(a.universe(), edges);
}

std::vector<std::vector<Element>> connected_components(const Structure & a)
{
    return connected_components(gaifman_graph(a));
}

Structure disjoint_union(const Structure & a, const Structure & b)
{
    if (! a.similar_to(b))
        throw Error(ErrorCode::DissimilarStructures, "disjoint union of structures in different signatures");
    std::vector<std::string> universe;
    universe.reserve(a.size() + b.size());
    for (auto & n : a.universe())
        universe.push_back(encode_components({"0", n}));
    for (auto & n : b.universe())
        universe.push_back(encode_components({"1", n}));
    std::vector<std::vector<Tuple>> rels(a.relation_count());
    for (std::size_t r = 0; r < a.relation_count(); ++r) {
        rels[r] = a.relation(r).tuples();
        for (auto t : b.relation(r).tuples()) {
            for (auto & x : t)
                x += a.size();
            rels[r].push_back(std::move(t));
        }
    }
    return Structure(a.signature(), std::move(universe), std::move(rels));
}

Homomorphism left_injection(const Structure & a, const Structure &)
{
    return identity_map(a.size());
}

Homomorphism right_injection(const Structure & a, const Structure & b)
{
    Homomorphism h = identity_map(b.size());
    for (auto & x : h.image)
        x += a.size();
    return h;
}

Structure induced_substructure(const Structure & a, std::span<const Element> subset)
{
    std::vector<Element> position(a.size(), a.size());
    std::vector<std::string> universe;
    universe.reserve(subset.size());
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (subset[i] >= a.size())
            throw Error(ErrorCode::UnknownElement, "subset mentions element #" + std::to_string(subset[i]));
        if (position[subset[i]] != a.size())
            throw Error(ErrorCode::DuplicateElement, "subset lists '" + a.name(subset[i]) + "' twice");
        position[subset[i]] = i;
        universe.push_back(a.name(subset[i]));
    }
    std::vector<std::vector<Tuple>> rels(a.relation_count());
    for (std::size_t r = 0; r < a.relation_count(); ++r)
        for (auto & t : a.relation(r)) {
            if (std::any_of(t.begin(), t.end(), [&](Element x) { return position[x] == a.size(); }))
                continue;
            Tuple mapped;
            mapped.reserve(t.size());
            for (auto x : t)
                mapped.push_back(position[x]);
            rels[r].push_back(std::move(mapped));
        }
    return Structure(a.signature(), std::move(universe), std::move(rels));
}

Structure induced_substructure(const Structure & a, const std::vector<std::string> & subset)
{
    std::vector<Element> indices;
    indices.reserve(subset.size());
    for (auto & n : subset)
        indices.push_back(a.index_of(n));
    return induced_substructure(a, indices);
}

Structure reorder_universe(const Structure & a, std::span<const Element> order)
{
    if (order.size() != a.size())
        throw Error(ErrorCode::InvalidArgument, "reordering must list every element exactly once");
    return induced_substructure(a, order);
}

std::size_t size_of(const Structure & a)
{
    std::size_t n = a.signature().size() + a.size();
    for (std::size_t r = 0; r < a.relation_count(); ++r)
        n += a.relation(r).size() * a.relation(r).arity();
    return n;
}

const Signature & graph_signature()
{
    static const Signature sig({{"E", 2}});
    return sig;
}

Structure graph_to_structure(const Graph & g)
{
    std::vector<Tuple> e;
    e.reserve(2 * g.edge_count());
    for (auto [u, v] : g.edges()) {
        e.push_back({u, v});
        e.push_back({v, u});
    }
    return Structure(graph_signature(), g.vertices(), {std::move(e)});
}

Graph structure_to_graph(const Structure & a)
{
    if (a.signature().size() != 1 || a.signature()[0].arity != 2)
        throw Error(ErrorCode::InvalidArgument, "not a graph: signature must be a single binary symbol");
    auto & rel = a.relation(0);
    std::vector<Graph::Edge> edges;
    for (auto & t : rel) {
        if (t[0] == t[1])
            throw Error(ErrorCode::LoopEdge, "not a graph: loop at '" + a.name(t[0]) + "'");
        if (! rel.contains(std::vector<Element>{t[1], t[0]}))
            throw Error(ErrorCode::InvalidArgument, "not a graph: relation is not symmetric");
        edges.emplace_back(t[0], t[1]);
    }
    return Graph(a.universe(), edges);
}

std::string grid_vertex_name(std::size_t i, std::size_t j)
{
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

namespace {

void require_dimension(std::size_t k, std::size_t l)
{
    if (k < 1 || l < 1)
        throw Error(ErrorCode::InvalidDimension,
            "dimensions must be at least 1, got " + std::to_string(k) + "x" + std::to_string(l));
}

std::vector<std::string> grid_names(std::size_t k, std::size_t l)
{
    std::vector<std::string> names;
    names.reserve(k * l);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < l; ++j)
            names.push_back(grid_vertex_name(i, j));
    return names;
}

} // namespace

Structure clique_structure(std::size_t k)
{
    return graph_to_structure(complete_graph(k));
}

Graph complete_graph(std::size_t k)
{
    require_dimension(k, 1);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < k; ++i)
        names.push_back(std::to_string(i));
    std::vector<Graph::Edge> edges;
    for (Element u = 0; u < k; ++u)
        for (Element v = u + 1; v < k; ++v)
            edges.emplace_back(u, v);
    return Graph(std::move(names), edges);
}

Graph grid_graph(std::size_t k, std::size_t l)
{
    require_dimension(k, l);
    std::vector<Graph::Edge> edges;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < l; ++j) {
            Element v = i * l + j;
            if (j + 1 < l)
                edges.emplace_back(v, v + 1);
            if (i + 1 < k)
                edges.emplace_back(v, v + l);
        }
    return Graph(grid_names(k, l), edges);
}

Structure grid_structure(std::size_t k, std::size_t l)
{
    return graph_to_structure(grid_graph(k, l));
}

const Signature & typed_grid_signature()
{
    static const Signature sig({{"H", 2}, {"V", 2}});
    return sig;
}

Structure typed_grid(std::size_t k, std::size_t l)
{
    require_dimension(k, l);
    std::vector<Tuple> h, v;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < l; ++j) {
            Element x = i * l + j;
            if (j + 1 < l)
                h.push_back({x, x + 1});
            if (i + 1 < k)
                v.push_back({x, x + l});
        }
    return Structure(typed_grid_signature(), grid_names(k, l), {std::move(h), std::move(v)});
}

std::string encode_components(std::span<const std::string> components)
{
    std::string out;
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (i)
            out.push_back('|');
        for (char c : components[i]) {
            if (c == '\\' || c == '|')
                out.push_back('\\');
            out.push_back(c);
        }
    }
    return out;
}

std::string encode_components(std::initializer_list<std::string> components)
{
    return encode_components(std::span<const std::string>(components.begin(), components.size()));
}

} // namespace homforge
