#pragma once

#include "homforge/solver.hpp"
#include "homforge/structure.hpp"

namespace homforge {

struct CoreResult {
    /// Induced substructure of the input; its universe lists core elements in
    /// input order.
    Structure core;
    Homomorphism retraction; ///< input -> core
    Homomorphism inclusion;  ///< core -> input
};

/// True iff every endomorphism is surjective, i.e. no element can be avoided.
/// Throws BudgetExceeded if any search gives up.
bool is_core(const Structure & a, const SearchBudget & budget = SearchBudget::unlimited());

/// Greedy shrinking: try to avoid each element in turn and restrict to the
/// image of any endomorphism that succeeds. Throws BudgetExceeded.
CoreResult core_of(const Structure & a, const SearchBudget & budget = SearchBudget::unlimited());

/// Throws DissimilarStructures, BudgetExceeded.
bool are_hom_equivalent(const Structure & a, const Structure & b, const SearchBudget & budget = SearchBudget::unlimited());

inline constexpr std::size_t isomorphism_limit = 10;

/// Exhaustive bijection search pruned by per-element occurrence profiles.
/// Throws DissimilarStructures, TooLarge above `isomorphism_limit` elements,
/// BudgetExceeded.
bool is_isomorphic(const Structure & a, const Structure & b, const SearchBudget & budget = SearchBudget::unlimited());
std::optional<Homomorphism> find_isomorphism(const Structure & a, const Structure & b,
    const SearchBudget & budget = SearchBudget::unlimited());

} // namespace homforge
