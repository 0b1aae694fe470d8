#pragma once

#include "homforge/structure.hpp"
#include "homforge/treewidth.hpp"

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <variant>

namespace homforge {

struct SearchBudget {
    std::optional<std::uint64_t> node_limit;
    std::optional<std::chrono::milliseconds> time_limit;

    static SearchBudget unlimited() { return {}; }
};

/// Counts search nodes against a SearchBudget. Throws InvalidArgument on
/// non-positive limits.
class BudgetTracker {
public:
    explicit BudgetTracker(const SearchBudget & budget);

    /// Records one node; false once either limit is exhausted.
    bool tick();
    bool exceeded() const noexcept { return exceeded_; }
    std::uint64_t nodes() const noexcept { return nodes_; }

private:
    SearchBudget budget_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t nodes_ = 0;
    bool exceeded_ = false;
};

struct NoneExists {};
struct BudgetExceeded {};

class HomSearchResult {
public:
    HomSearchResult(Homomorphism h) : outcome_(std::move(h)) {}
    HomSearchResult(NoneExists n) : outcome_(n) {}
    HomSearchResult(BudgetExceeded b) : outcome_(b) {}

    bool found() const noexcept { return std::holds_alternative<Homomorphism>(outcome_); }
    bool none() const noexcept { return std::holds_alternative<NoneExists>(outcome_); }
    bool budget_exceeded() const noexcept { return std::holds_alternative<BudgetExceeded>(outcome_); }
    const Homomorphism & homomorphism() const { return std::get<Homomorphism>(outcome_); }

private:
    std::variant<Homomorphism, NoneExists, BudgetExceeded> outcome_;
};

/// Backtracking with generalised arc consistency and smallest-domain-first
/// branching. Throws DissimilarStructures.
HomSearchResult find_hom(const Structure & source, const Structure & target,
    const SearchBudget & budget = SearchBudget::unlimited());

inline bool has_hom(const Structure & source, const Structure & target)
{
    return find_hom(source, target).found();
}

/// Lazy enumeration of all homomorphisms in lexicographic order of the image
/// vector. Each call to next() resumes the search where it stopped.
class HomEnumerator {
public:
    HomEnumerator(const Structure & source, const Structure & target);
    ~HomEnumerator();
    HomEnumerator(HomEnumerator &&) noexcept;
    HomEnumerator & operator=(HomEnumerator &&) noexcept;

    std::optional<Homomorphism> next();

private:
    struct State;
    std::unique_ptr<State> state_;
};

inline HomEnumerator enumerate_homs(const Structure & source, const Structure & target)
{
    return HomEnumerator(source, target);
}

std::uint64_t count_homs(const Structure & source, const Structure & target);

struct SearchOptions {
    /// Require distinct images for distinct source elements.
    bool injective = false;
    /// candidates[a] lists the permitted images of source element a; an empty
    /// outer vector leaves every element unrestricted.
    std::vector<std::vector<Element>> candidates;
};

HomSearchResult find_hom(const Structure & source, const Structure & target, const SearchOptions & options,
    const SearchBudget & budget = SearchBudget::unlimited());

/// Dynamic program over a nice tree decomposition of the source's Gaifman
/// graph. Throws InvalidDecomposition, DissimilarStructures.
HomSearchResult find_hom_td(const Structure & source, const Structure & target, const TreeDecomposition & decomposition);

/// Exhaustive clique test.
bool has_k_clique(const Graph & g, std::size_t k);
/// Lowest clique of size k in lexicographic order of sorted vertex lists.
std::optional<std::vector<Element>> find_k_clique(const Graph & g, std::size_t k);

} // namespace homforge
