#include "homforge/cores.hpp"

#include "homforge/error.hpp"

#include <algorithm>
#include <numeric>

namespace homforge {

namespace {

std::optional<Homomorphism> decide(const Structure & source, const Structure & target, const SearchBudget & budget)
{
    auto r = find_hom(source, target, budget);
    if (r.budget_exceeded())
        throw Error(ErrorCode::BudgetExceeded, "homomorphism search gave up");
    if (r.found())
        return r.homomorphism();
    return std::nullopt;
}

std::vector<Element> all_but(std::size_t n, Element skip)
{
    std::vector<Element> rest;
    for (Element x = 0; x < n; ++x)
        if (x != skip)
            rest.push_back(x);
    return rest;
}

// For each element: how often it sits at each position of each relation.
std::vector<std::vector<std::size_t>> occurrence_profiles(const Structure & a)
{
    std::size_t columns = 0;
    for (auto & s : a.signature())
        columns += s.arity;
    std::vector<std::vector<std::size_t>> profile(a.size(), std::vector<std::size_t>(columns, 0));
    std::size_t offset = 0;
    for (std::size_t r = 0; r < a.relation_count(); ++r) {
        for (auto & t : a.relation(r))
            for (std::size_t j = 0; j < t.size(); ++j)
                ++profile[t[j]][offset + j];
        offset += a.relation(r).arity();
    }
    return profile;
}

} // namespace

bool is_core(const Structure & a, const SearchBudget & budget)
{
    for (Element x = 0; x < a.size(); ++x) {
        auto rest = all_but(a.size(), x);
        if (decide(a, induced_substructure(a, rest), budget))
            return false;
    }
    return true;
}

CoreResult core_of(const Structure & a, const SearchBudget & budget)
{
    // `kept` lists the current substructure's elements as input indices.
    std::vector<Element> kept(a.size());
    std::iota(kept.begin(), kept.end(), Element{0});
    Structure current = a;
    Homomorphism retraction = identity_map(a.size()); // input -> current

    bool shrunk = true;
    while (shrunk) {
        shrunk = false;
        for (Element x = 0; x < current.size(); ++x) {
            auto rest = all_but(current.size(), x);
            auto h = decide(current, induced_substructure(current, rest), budget);
            if (! h)
                continue;
            // h maps current into `rest`; keep exactly its image.
            std::vector<char> hit(current.size(), 0);
            for (auto y : h->image)
                hit[rest[y]] = 1;
            std::vector<Element> image, position(current.size(), 0);
            for (Element y = 0; y < current.size(); ++y)
                if (hit[y]) {
                    position[y] = image.size();
                    image.push_back(y);
                }
            Homomorphism onto;
            for (auto y : h->image)
                onto.image.push_back(position[rest[y]]);
            retraction = compose(onto, retraction);
            std::vector<Element> next_kept;
            for (auto y : image)
                next_kept.push_back(kept[y]);
            kept = std::move(next_kept);
            current = induced_substructure(current, image);
            shrunk = true;
            break;
        }
    }

    Homomorphism inclusion;
    inclusion.image = kept;
    return {std::move(current), std::move(retraction), std::move(inclusion)};
}

bool are_hom_equivalent(const Structure & a, const Structure & b, const SearchBudget & budget)
{
    if (! a.similar_to(b))
        throw Error(ErrorCode::DissimilarStructures, "structures in different signatures");
    return decide(a, b, budget) && decide(b, a, budget);
}

std::optional<Homomorphism> find_isomorphism(const Structure & a, const Structure & b, const SearchBudget & budget)
{
    if (! a.similar_to(b))
        throw Error(ErrorCode::DissimilarStructures, "structures in different signatures");
    if (std::max(a.size(), b.size()) > isomorphism_limit)
        throw Error(ErrorCode::TooLarge, "isomorphism test is capped at " + std::to_string(isomorphism_limit) + " elements");
    if (a.size() != b.size())
        return std::nullopt;
    for (std::size_t r = 0; r < a.relation_count(); ++r)
        if (a.relation(r).size() != b.relation(r).size())
            return std::nullopt;

    auto pa = occurrence_profiles(a), pb = occurrence_profiles(b);
    auto sa = pa, sb = pb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb)
        return std::nullopt;

    // An injective homomorphism between equal-size universes with equal tuple
    // counts maps every relation onto its counterpart, so it is an isomorphism.
    SearchOptions options;
    options.injective = true;
    options.candidates.resize(a.size());
    for (Element x = 0; x < a.size(); ++x)
        for (Element y = 0; y < b.size(); ++y)
            if (pa[x] == pb[y])
                options.candidates[x].push_back(y);

    auto r = find_hom(a, b, options, budget);
    if (r.budget_exceeded())
        throw Error(ErrorCode::BudgetExceeded, "isomorphism search gave up");
    if (r.found())
        return r.homomorphism();
    return std::nullopt;
}

bool is_isomorphic(const Structure & a, const Structure & b, const SearchBudget & budget)
{
    return find_isomorphism(a, b, budget).has_value();
}

} // namespace homforge
