#pragma once

#include "homforge/minors.hpp"
#include "homforge/solver.hpp"
#include "homforge/structure.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace homforge {

/// Lexicographic bijection between {0..K-1} and the unordered pairs {i, j},
/// i < j < k, with K = k(k-1)/2.
class PairIndexer {
public:
    explicit PairIndexer(std::size_t k);

    std::size_t k() const noexcept { return k_; }
    std::size_t count() const noexcept { return pairs_.size(); }
    const std::pair<std::size_t, std::size_t> & pair(std::size_t p) const { return pairs_.at(p); }
    /// Index of {i, j} in either order. Throws InvalidArgument when i == j or out of range.
    std::size_t index(std::size_t i, std::size_t j) const;
    /// i belongs to the pair with index p.
    bool contains(std::size_t p, std::size_t i) const;

private:
    std::size_t k_;
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

/// One element (v, e, i, p, a) of the clique gadget: graph vertex, edge index
/// into `g.edges()`, grid row, grid column (a pair index) and element of A.
struct GroheElement {
    Element vertex = 0;
    std::size_t edge = 0;
    std::size_t row = 0;
    std::size_t column = 0;
    Element source = 0;

    friend bool operator==(const GroheElement &, const GroheElement &) = default;
};

struct GroheInstance {
    Structure m;
    Homomorphism projection; ///< m -> A
    std::vector<GroheElement> elements;
    std::size_t k = 0;
    std::size_t columns = 0;
};

/// Builds M(A, mu, G) for an onto minor map `mu` from grid_graph(k, K) to the
/// Gaifman graph of a connected A. Throws BadGridDimensions, InvalidMinorMap,
/// NotOnto, NotConnected.
GroheInstance grohe_construct(const Structure & a, const MinorMap & mu, const Graph & g, std::size_t k);

/// Onto minor map from grid_graph(k, K) to gaifman_graph(a): the identity when
/// the Gaifman graph is that grid, otherwise a searched map made onto.
/// Throws NoGridMinor, BudgetExceeded, NotConnected.
MinorMap clique_gadget_minor(const Structure & a, std::size_t k,
    const SearchBudget & budget = SearchBudget::unlimited());

struct TemplatePair {
    Structure a;
    Structure b;
    Homomorphism witness; ///< a -> b
};

/// C, h: C -> A and the index of the grid-like mapping it uses.
struct StarWitness {
    Structure c;
    Homomorphism h;
    std::size_t layer = 0;
};

/// A template pair with grid-like candidates over B and a way to produce a
/// witness for each homomorphism g: A -> B.
struct GridTemplate {
    TemplatePair pair;
    std::size_t k = 0;
    std::vector<GridLikeMapping> rhos;
    std::function<StarWitness(const Homomorphism &)> star;
};

/// A = typed_grid(k, k), B = typed_grid(f, f), one mapping (i, j) -> (i mod k, j mod k).
/// Throws InvalidDimension unless 1 <= k <= f.
GridTemplate make_grid_template(std::size_t k, std::size_t f);

/// The pair (A, A) with rho = nu after the core retraction, where nu reads a
/// k x k grid minor of the core's Gaifman graph. Throws NoGridMinor, BudgetExceeded.
GridTemplate make_core_template(const Structure & a, std::size_t k,
    const SearchBudget & budget = SearchBudget::unlimited());

/// rho_l after g after h is grid-like on C, for the witness the template returns.
bool satisfies_star(const GridTemplate & t, const Homomorphism & g);

struct StarReport {
    std::size_t homomorphisms = 0;
    std::size_t failures = 0;
};

/// Runs satisfies_star on every homomorphism A -> B.
StarReport check_star_condition(const GridTemplate & t);

/// One element (b, (u_i, v_i) per layer) of the promise gadget.
struct PcspElement {
    Element b = 0;
    std::vector<std::pair<Element, Element>> pairs;

    friend bool operator==(const PcspElement &, const PcspElement &) = default;
    friend auto operator<=>(const PcspElement &, const PcspElement &) = default;
};

struct PcspInstance {
    Structure x;
    Homomorphism projection; ///< x -> B
    std::vector<PcspElement> elements; ///< sorted
    std::size_t k = 0;
    std::size_t layers = 0;

    std::optional<Element> find(const PcspElement & e) const;
};

/// Throws DissimilarStructures, InvalidArgument (no mappings, mismatched k or
/// mapping length).
PcspInstance pcsp_construct(const Structure & a, const Structure & b,
    const std::vector<GridLikeMapping> & rhos, const Graph & g);
PcspInstance pcsp_construct(const GridTemplate & t, const Graph & g);

/// h(b) = (b, (w[row_i(b)], w[col_i(b)]) per layer) for a clique w of size k.
Homomorphism pcsp_completeness_map(const PcspInstance & inst, const std::vector<GridLikeMapping> & rhos,
    const std::vector<Element> & clique);

/// Reads a k-clique off a homomorphism alpha: A -> X through the template's
/// witness for g = projection after alpha. Vertex i of the result is the
/// common right component on the i-th column preimage.
std::vector<Element> pcsp_decode_clique(const PcspInstance & inst, const GridTemplate & t, const Homomorphism & alpha);

struct AmplifiedGraph {
    Graph h;
    std::size_t copies = 0;
};

/// m = ceil(l / k) copies of G, joined completely across copies. With one copy
/// the result is G itself. Throws InvalidArgument for k or l below 1.
AmplifiedGraph clique_amplify(const Graph & g, std::size_t k, std::size_t l);

/// g * k >= (l + k) * f, i.e. g >= (l/k + 1) f, in integers.
bool gap_condition(std::size_t k, std::size_t l, std::size_t f, std::size_t g);
/// All (f, g) with 1 <= f < k, 1 <= g < l satisfying gap_condition.
std::vector<std::pair<std::size_t, std::size_t>> gap_pairs(std::size_t k, std::size_t l);

struct PromiseInstance {
    Structure a;
    Structure b;
    Structure x;
};

struct RelaxedInstance {
    PromiseInstance instance; ///< (C, D, X)
    Homomorphism a_to_c;
    Homomorphism d_to_b;
};

/// Maps (A, B, X) to (C, D, X). Throws DissimilarStructures,
/// RelaxationWitnessMissing, BudgetExceeded.
RelaxedInstance relaxation_map(const PromiseInstance & instance, const Structure & c, const Structure & d,
    const SearchBudget & budget = SearchBudget::unlimited());

/// Every labelled graph on vertices "0".."n-1" for n = 1..max_n, by n and then
/// by edge mask over the lexicographic vertex pairs.
std::vector<Graph> all_graphs(std::size_t max_n);

enum class ReductionKind { Grohe, Pcsp, Amplify };

struct InstanceRecord {
    std::size_t id = 0;
    std::string graph; ///< "n:u-v,u-v,..."
    std::string detail;
};

struct VerificationReport {
    std::size_t instances = 0;
    std::size_t passed = 0;
    std::size_t completeness_checks = 0;
    std::size_t soundness_checks = 0;
    std::vector<InstanceRecord> counterexamples;
    std::vector<InstanceRecord> inconclusive;

    bool all_pass() const noexcept { return counterexamples.empty() && inconclusive.empty(); }
};

struct GroheSweep {
    Structure a;
    MinorMap mu;
    std::size_t k = 0;
};

struct AmplifySweep {
    std::size_t k = 0;
    std::size_t l = 0;
};

std::string describe_graph(const Graph & g);

/// Each sweep checks both directions on every graph in `graphs`; searches that
/// hit the budget are recorded as inconclusive.
VerificationReport verify_grohe(const GroheSweep & sweep, const std::vector<Graph> & graphs,
    const SearchBudget & budget = SearchBudget::unlimited());
VerificationReport verify_pcsp(const GridTemplate & t, const std::vector<Graph> & graphs,
    const SearchBudget & budget = SearchBudget::unlimited());
VerificationReport verify_amplify(const AmplifySweep & sweep, const std::vector<Graph> & graphs);

} // namespace homforge
