#include "homforge/solver.hpp"

#include "homforge/error.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

namespace homforge {

BudgetTracker::BudgetTracker(const SearchBudget & budget) : budget_(budget), start_(std::chrono::steady_clock::now())
{
    if (budget_.node_limit && *budget_.node_limit == 0)
        throw Error(ErrorCode::InvalidArgument, "node limit must be positive");
    if (budget_.time_limit && budget_.time_limit->count() <= 0)
        throw Error(ErrorCode::InvalidArgument, "time limit must be positive");
}

bool BudgetTracker::tick()
{
    if (exceeded_)
        return false;
    ++nodes_;
    if (budget_.node_limit && nodes_ > *budget_.node_limit)
        exceeded_ = true;
    else if (budget_.time_limit && (nodes_ & 63) == 0
        && std::chrono::steady_clock::now() - start_ > *budget_.time_limit)
        exceeded_ = true;
    return ! exceeded_;
}

namespace {

// Per-variable candidate sets packed into one flat word array.
class Domains {
public:
    Domains() = default;
    Domains(std::size_t vars, std::size_t values) :
        values_(values), words_((values + 63) / 64), bits_(vars * words_, 0)
    {
    }

    void fill(std::size_t var)
    {
        auto * w = row(var);
        for (std::size_t i = 0; i < words_; ++i)
            w[i] = ~std::uint64_t{0};
        if (values_ % 64)
            w[words_ - 1] = (std::uint64_t{1} << (values_ % 64)) - 1;
    }

    bool test(std::size_t var, std::size_t value) const { return (row(var)[value / 64] >> (value % 64)) & 1; }
    void set(std::size_t var, std::size_t value) { row(var)[value / 64] |= std::uint64_t{1} << (value % 64); }
    void reset(std::size_t var, std::size_t value) { row(var)[value / 64] &= ~(std::uint64_t{1} << (value % 64)); }

    void assign(std::size_t var, std::size_t value)
    {
        std::fill(row(var), row(var) + words_, 0);
        set(var, value);
    }

    std::size_t count(std::size_t var) const
    {
        std::size_t n = 0;
        for (std::size_t i = 0; i < words_; ++i)
            n += std::popcount(row(var)[i]);
        return n;
    }

    // Intersects var's row with `mask`; returns true if anything was removed.
    bool restrict(std::size_t var, const std::uint64_t * mask)
    {
        bool changed = false;
        auto * w = row(var);
        for (std::size_t i = 0; i < words_; ++i) {
            auto nw = w[i] & mask[i];
            changed |= nw != w[i];
            w[i] = nw;
        }
        return changed;
    }

    std::size_t first(std::size_t var) const
    {
        for (std::size_t i = 0; i < words_; ++i)
            if (row(var)[i])
                return i * 64 + std::countr_zero(row(var)[i]);
        return values_;
    }

    template <typename F>
    void for_each(std::size_t var, F && f) const
    {
        for (std::size_t i = 0; i < words_; ++i)
            for (auto w = row(var)[i]; w; w &= w - 1)
                f(i * 64 + std::countr_zero(w));
    }

    std::size_t words() const noexcept { return words_; }

private:
    std::uint64_t * row(std::size_t var) { return bits_.data() + var * words_; }
    const std::uint64_t * row(std::size_t var) const { return bits_.data() + var * words_; }

    std::size_t values_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

struct Constraint {
    std::size_t relation;
    Tuple scope;
    std::vector<Element> vars; // distinct scope entries
};

class SearchEngine {
public:
    SearchEngine(Structure source, Structure target, SearchOptions options, bool lexicographic) :
        source_(std::move(source)),
        target_(std::move(target)),
        options_(std::move(options)),
        lexicographic_(lexicographic)
    {
        if (! source_.similar_to(target_))
            throw Error(ErrorCode::DissimilarStructures, "source and target signatures differ");
        if (! options_.candidates.empty() && options_.candidates.size() != source_.size())
            throw Error(ErrorCode::InvalidArgument, "candidate lists must cover every source element");

        constraints_of_.resize(source_.size());
        for (std::size_t r = 0; r < source_.relation_count(); ++r)
            for (auto & t : source_.relation(r)) {
                Constraint c{r, t, t};
                std::sort(c.vars.begin(), c.vars.end());
                c.vars.erase(std::unique(c.vars.begin(), c.vars.end()), c.vars.end());
                for (auto v : c.vars)
                    constraints_of_[v].push_back(constraints_.size());
                constraints_.push_back(std::move(c));
            }
    }

    // Returns the next solution, or nullopt when the space is exhausted or the
    // budget runs out (check budget_hit()).
    std::optional<Homomorphism> next(BudgetTracker * budget)
    {
        if (! started_) {
            started_ = true;
            Domains d(source_.size(), target_.size());
            for (std::size_t v = 0; v < source_.size(); ++v) {
                if (options_.candidates.empty())
                    d.fill(v);
                else
                    for (auto x : options_.candidates[v])
                        if (x < target_.size())
                            d.set(v, x);
            }
            std::vector<std::size_t> all(constraints_.size());
            std::iota(all.begin(), all.end(), std::size_t{0});
            if (! propagate(d, all))
                return std::nullopt;
            if (auto sol = push_or_solve(std::move(d)))
                return sol;
        }

        while (! stack_.empty()) {
            auto & top = stack_.back();
            if (top.next == top.values.size()) {
                stack_.pop_back();
                continue;
            }
            if (budget && ! budget->tick()) {
                budget_hit_ = true;
                return std::nullopt;
            }
            auto value = top.values[top.next++];
            Domains d = top.domains;
            d.assign(top.var, value);
            if (! propagate(d, constraints_of_[top.var]))
                continue;
            if (auto sol = push_or_solve(std::move(d)))
                return sol;
        }
        return std::nullopt;
    }

    bool budget_hit() const noexcept { return budget_hit_; }

private:
    struct Frame {
        Domains domains;
        std::size_t var;
        std::vector<Element> values;
        std::size_t next = 0;
    };

    std::optional<Homomorphism> push_or_solve(Domains d)
    {
        std::size_t best = source_.size(), best_size = 0;
        for (std::size_t v = 0; v < source_.size(); ++v) {
            auto c = d.count(v);
            if (c == 0)
                return std::nullopt; // dead end, nothing pushed
            if (c == 1)
                continue;
            if (lexicographic_) {
                if (best == source_.size())
                    best = v;
                continue;
            }
            if (best == source_.size() || c < best_size) {
                best = v;
                best_size = c;
            }
        }
        if (best == source_.size()) {
            Homomorphism h;
            h.image.reserve(source_.size());
            for (std::size_t v = 0; v < source_.size(); ++v)
                h.image.push_back(d.first(v));
            return h;
        }
        Frame f{std::move(d), best, {}, 0};
        f.domains.for_each(best, [&](std::size_t x) { f.values.push_back(x); });
        stack_.push_back(std::move(f));
        return std::nullopt;
    }

    bool revise(Domains & d, const Constraint & c, std::vector<std::uint64_t> & support,
        std::vector<std::size_t> & changed)
    {
        const std::size_t words = d.words();
        const std::size_t arity = c.scope.size();
        support.assign(arity * words, 0);
        bool any = false;
        for (auto & x : target_.relation(c.relation)) {
            bool ok = true;
            for (std::size_t j = 0; j < arity && ok; ++j) {
                if (! d.test(c.scope[j], x[j]))
                    ok = false;
                for (std::size_t i = 0; i < j && ok; ++i)
                    if (c.scope[i] == c.scope[j] && x[i] != x[j])
                        ok = false;
            }
            if (! ok)
                continue;
            any = true;
            for (std::size_t j = 0; j < arity; ++j)
                support[j * words + x[j] / 64] |= std::uint64_t{1} << (x[j] % 64);
        }
        if (! any)
            return false;
        for (std::size_t j = 0; j < arity; ++j)
            if (d.restrict(c.scope[j], support.data() + j * words))
                changed.push_back(c.scope[j]);
        return true;
    }

    bool propagate(Domains & d, const std::vector<std::size_t> & initial)
    {
        std::vector<char> queued(constraints_.size(), 0);
        std::vector<std::size_t> queue;
        for (auto c : initial) {
            queue.push_back(c);
            queued[c] = 1;
        }
        std::vector<std::uint64_t> support;
        std::vector<std::size_t> changed;
        std::vector<char> propagated_value(source_.size(), 0);

        while (true) {
            while (! queue.empty()) {
                auto c = queue.back();
                queue.pop_back();
                queued[c] = 0;
                if (! revise(d, constraints_[c], support, changed))
                    return false;
                for (auto v : changed) {
                    if (d.count(v) == 0)
                        return false;
                    for (auto c2 : constraints_of_[v])
                        if (! queued[c2]) {
                            queued[c2] = 1;
                            queue.push_back(c2);
                        }
                }
                changed.clear();
            }
            if (! options_.injective)
                return true;

            // all-different by forward checking on fixed values
            bool progress = false;
            for (std::size_t v = 0; v < source_.size(); ++v) {
                if (propagated_value[v] || d.count(v) != 1)
                    continue;
                propagated_value[v] = 1;
                auto value = d.first(v);
                for (std::size_t w = 0; w < source_.size(); ++w) {
                    if (w == v || ! d.test(w, value))
                        continue;
                    d.reset(w, value);
                    if (d.count(w) == 0)
                        return false;
                    progress = true;
                    for (auto c2 : constraints_of_[w])
                        if (! queued[c2]) {
                            queued[c2] = 1;
                            queue.push_back(c2);
                        }
                }
            }
            if (! progress && queue.empty())
                return true;
        }
    }

    Structure source_, target_;
    SearchOptions options_;
    bool lexicographic_;
    std::vector<Constraint> constraints_;
    std::vector<std::vector<std::size_t>> constraints_of_;
    std::vector<Frame> stack_;
    bool started_ = false;
    bool budget_hit_ = false;
};

} // namespace

HomSearchResult find_hom(const Structure & source, const Structure & target, const SearchOptions & options,
    const SearchBudget & budget)
{
    BudgetTracker tracker(budget);
    SearchEngine engine(source, target, options, false);
    if (auto h = engine.next(&tracker))
        return *h;
    if (engine.budget_hit())
        return BudgetExceeded{};
    return NoneExists{};
}

HomSearchResult find_hom(const Structure & source, const Structure & target, const SearchBudget & budget)
{
    return find_hom(source, target, SearchOptions{}, budget);
}

struct HomEnumerator::State {
    SearchEngine engine;
};

HomEnumerator::HomEnumerator(const Structure & source, const Structure & target) :
    state_(std::make_unique<State>(State{SearchEngine(source, target, SearchOptions{}, true)}))
{
}

HomEnumerator::~HomEnumerator() = default;
HomEnumerator::HomEnumerator(HomEnumerator &&) noexcept = default;
HomEnumerator & HomEnumerator::operator=(HomEnumerator &&) noexcept = default;

std::optional<Homomorphism> HomEnumerator::next()
{
    return state_->engine.next(nullptr);
}

std::uint64_t count_homs(const Structure & source, const Structure & target)
{
    auto e = enumerate_homs(source, target);
    std::uint64_t n = 0;
    while (e.next())
        ++n;
    return n;
}

namespace {

// Node of a nice tree decomposition. Leaves have empty bags; introduce and
// forget nodes differ from their single child by one vertex; join nodes have
// two children with identical bags.
struct NiceNode {
    enum class Kind { Leaf, Introduce, Forget, Join } kind;
    std::vector<Element> bag; // sorted
    Element vertex = 0;
    std::vector<std::size_t> children;
};

class NiceDecomposition {
public:
    explicit NiceDecomposition(const TreeDecomposition & d)
    {
        std::vector<char> visited(d.bags.size(), 0);
        std::size_t top = build(d, 0, visited);
        std::vector<Element> bag = nodes_[top].bag;
        while (! bag.empty()) {
            auto v = bag.back();
            bag.pop_back();
            top = add({NiceNode::Kind::Forget, bag, v, {top}});
        }
        root_ = top;
    }

    const NiceNode & node(std::size_t i) const { return nodes_[i]; }
    std::size_t size() const noexcept { return nodes_.size(); }
    std::size_t root() const noexcept { return root_; }

private:
    std::size_t add(NiceNode n)
    {
        nodes_.push_back(std::move(n));
        return nodes_.size() - 1;
    }

    // Chain from a node with bag `from` to a node with bag `to`.
    std::size_t bridge(std::size_t child, const std::vector<Element> & to)
    {
        auto bag = nodes_[child].bag;
        for (auto v : std::vector<Element>(bag)) {
            if (std::binary_search(to.begin(), to.end(), v))
                continue;
            bag.erase(std::find(bag.begin(), bag.end(), v));
            child = add({NiceNode::Kind::Forget, bag, v, {child}});
        }
        for (auto v : to) {
            if (std::binary_search(bag.begin(), bag.end(), v))
                continue;
            bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
            child = add({NiceNode::Kind::Introduce, bag, v, {child}});
        }
        return child;
    }

    std::size_t build(const TreeDecomposition & d, std::size_t t, std::vector<char> & visited)
    {
        visited[t] = 1;
        std::vector<std::size_t> branches;
        for (auto c : d.tree.neighbors(t)) {
            if (visited[c])
                continue;
            auto sub = build(d, c, visited);
            branches.push_back(bridge(sub, d.bags[t]));
        }
        if (branches.empty())
            return bridge(add({NiceNode::Kind::Leaf, {}, 0, {}}), d.bags[t]);
        std::size_t acc = branches[0];
        for (std::size_t i = 1; i < branches.size(); ++i)
            acc = add({NiceNode::Kind::Join, d.bags[t], 0, {acc, branches[i]}});
        return acc;
    }

    std::vector<NiceNode> nodes_;
    std::size_t root_ = 0;
};

using Row = std::vector<Element>;
using Table = std::vector<Row>; // sorted, unique

} // namespace

HomSearchResult find_hom_td(const Structure & source, const Structure & target, const TreeDecomposition & decomposition)
{
    if (! source.similar_to(target))
        throw Error(ErrorCode::DissimilarStructures, "source and target signatures differ");
    bool valid = false;
    try {
        valid = validate_decomposition(gaifman_graph(source), decomposition);
    }
    catch (const Error & e) {
        throw Error(ErrorCode::InvalidDecomposition, e.what());
    }
    if (! valid)
        throw Error(ErrorCode::InvalidDecomposition, "decomposition does not cover the source's Gaifman graph");
    if (source.empty())
        return Homomorphism{};

    NiceDecomposition nice(decomposition);

    // Constraints indexed by each element they mention.
    struct Check {
        std::size_t relation;
        const Tuple * tuple;
    };
    std::vector<std::vector<Check>> checks_of(source.size());
    for (std::size_t r = 0; r < source.relation_count(); ++r)
        for (auto & t : source.relation(r)) {
            Tuple distinct = t;
            std::sort(distinct.begin(), distinct.end());
            distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
            for (auto v : distinct)
                checks_of[v].push_back({r, &t});
        }

    auto position = [](const std::vector<Element> & bag, Element v) {
        return static_cast<std::size_t>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
    };

    std::vector<Table> tables(nice.size());
    // Children always precede parents in node order.
    Tuple image;
    for (std::size_t i = 0; i < nice.size(); ++i) {
        auto & n = nice.node(i);
        Table out;
        switch (n.kind) {
        case NiceNode::Kind::Leaf:
            out.push_back({});
            break;
        case NiceNode::Kind::Introduce: {
            auto & child = tables[n.children[0]];
            auto p = position(n.bag, n.vertex);
            std::vector<const Check *> active;
            for (auto & c : checks_of[n.vertex])
                if (std::all_of(c.tuple->begin(), c.tuple->end(),
                        [&](Element x) { return std::binary_search(n.bag.begin(), n.bag.end(), x); }))
                    active.push_back(&c);
            for (auto & row : child)
                for (Element x = 0; x < target.size(); ++x) {
                    Row r = row;
                    r.insert(r.begin() + p, x);
                    bool ok = true;
                    for (auto * c : active) {
                        image.clear();
                        for (auto a : *c->tuple)
                            image.push_back(r[position(n.bag, a)]);
                        if (! target.relation(c->relation).contains(image)) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok)
                        out.push_back(std::move(r));
                }
            std::sort(out.begin(), out.end());
            break;
        }
        case NiceNode::Kind::Forget: {
            auto & childnode = nice.node(n.children[0]);
            auto p = position(childnode.bag, n.vertex);
            for (auto & row : tables[n.children[0]]) {
                Row r = row;
                r.erase(r.begin() + p);
                out.push_back(std::move(r));
            }
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            break;
        }
        case NiceNode::Kind::Join: {
            auto & a = tables[n.children[0]];
            auto & b = tables[n.children[1]];
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
            break;
        }
        }
        tables[i] = std::move(out);
    }

    if (tables[nice.root()].empty())
        return NoneExists{};

    // Walk back down, extending the chosen row at each node.
    Homomorphism h;
    h.image.assign(source.size(), 0);
    std::vector<std::pair<std::size_t, Row>> stack{{nice.root(), Row{}}};
    while (! stack.empty()) {
        auto [i, row] = std::move(stack.back());
        stack.pop_back();
        auto & n = nice.node(i);
        for (std::size_t j = 0; j < n.bag.size(); ++j)
            h.image[n.bag[j]] = row[j];
        switch (n.kind) {
        case NiceNode::Kind::Leaf:
            break;
        case NiceNode::Kind::Introduce: {
            Row r = row;
            r.erase(r.begin() + position(n.bag, n.vertex));
            stack.emplace_back(n.children[0], std::move(r));
            break;
        }
        case NiceNode::Kind::Forget: {
            auto & childnode = nice.node(n.children[0]);
            auto p = position(childnode.bag, n.vertex);
            for (auto & r : tables[n.children[0]]) {
                bool agrees = true;
                for (std::size_t j = 0, k = 0; j < r.size() && agrees; ++j) {
                    if (j == p)
                        continue;
                    agrees = r[j] == row[k++];
                }
                if (agrees) {
                    stack.emplace_back(n.children[0], r);
                    break;
                }
            }
            break;
        }
        case NiceNode::Kind::Join:
            stack.emplace_back(n.children[0], row);
            stack.emplace_back(n.children[1], row);
            break;
        }
    }
    return h;
}

namespace {

bool extend_clique(const Graph & g, std::size_t k, std::vector<Element> & clique, const std::vector<Element> & candidates)
{
    if (clique.size() == k)
        return true;
    if (clique.size() + candidates.size() < k)
        return false;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        auto v = candidates[i];
        std::vector<Element> next;
        for (std::size_t j = i + 1; j < candidates.size(); ++j)
            if (g.adjacent(v, candidates[j]))
                next.push_back(candidates[j]);
        clique.push_back(v);
        if (extend_clique(g, k, clique, next))
            return true;
        clique.pop_back();
    }
    return false;
}

} // namespace

std::optional<std::vector<Element>> find_k_clique(const Graph & g, std::size_t k)
{
    if (k < 1)
        throw Error(ErrorCode::InvalidArgument, "clique size must be at least 1");
    std::vector<Element> clique, all(g.order());
    std::iota(all.begin(), all.end(), Element{0});
    if (extend_clique(g, k, clique, all))
        return clique;
    return std::nullopt;
}

bool has_k_clique(const Graph & g, std::size_t k)
{
    return find_k_clique(g, k).has_value();
}

} // namespace homforge
