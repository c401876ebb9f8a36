#include "echinf/reduction.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

#include "echinf/errors.hpp"
#include "echinf/field.hpp"

namespace echinf {

class Eliminator {
public:
    Eliminator(const GradedComplex& c, std::uint32_t characteristic) : c_(c), char_(characteristic)
    {
        if (char_ != 0 && !is_prime(char_))
            throw std::invalid_argument("reduction characteristic must be 0 or prime");
        std::size_t n = c.size();
        cols_.resize(n);
        cob_.resize(n);
        alive_.assign(n, 1);
        r_.char_ = char_;
        r_.step_of_.assign(n, -1);
        for (std::uint32_t j = 0; j < n; ++j) {
            auto col = c.differential().column(j);
            for (const auto& t : col) {
                Integer v = norm(t.coef);
                if (v != 0) {
                    cols_[j].push_back(Term{t.index, std::move(v)});
                    cob_[t.index].push_back(j);
                }
            }
        }
    }

    Integer norm(const Integer& v) const { return char_ == 0 ? v : floor_mod(v, Integer(char_)); }

    bool unit(const Integer& v) const { return char_ == 0 ? is_unit(v) : v != 0; }

    Integer inverse(const Integer& u) const
    {
        if (char_ == 0)
            return u;
        return Integer(inverse_mod(static_cast<std::uint32_t>(u), char_));
    }

    // Explicit matching: validation, then elimination with downstream pairs first.
    void eliminate_matching(std::span<const MatchedPair> matching)
    {
        std::size_t n = c_.size();
        std::vector<std::int64_t> pair_of(n, -1);
        for (std::size_t k = 0; k < matching.size(); ++k) {
            auto [a, b] = matching[k];
            if (a >= n || b >= n)
                throw std::out_of_range("matched cell index out of range");
            if (a == b || pair_of[a] >= 0 || pair_of[b] >= 0)
                throw std::invalid_argument("matching is not disjoint at " + c_.label_string(pair_of[a] >= 0 ? a : b));
            pair_of[a] = pair_of[b] = static_cast<std::int64_t>(k);
            Integer u = coefficient(cols_[a], b);
            if (!unit(u))
                throw NonUnitPivot(a, b, "coefficient of " + c_.label_string(b) + " in d" + c_.label_string(a) + " is " +
                                             to_string(u) + ", not a unit");
        }
        // Pair graph: P -> Q when d(up_P) meets down_Q. Post-order DFS puts
        // sinks first and detects directed cycles.
        std::vector<char> state(matching.size(), 0);
        std::vector<std::size_t> order;
        order.reserve(matching.size());
        for (std::size_t s = 0; s < matching.size(); ++s) {
            if (state[s] != 0)
                continue;
            std::vector<std::pair<std::size_t, std::size_t>> stack{{s, 0}};
            state[s] = 1;
            while (!stack.empty()) {
                auto& [p, pos] = stack.back();
                const Chain& col = cols_[matching[p].up];
                bool pushed = false;
                while (pos < col.size()) {
                    std::uint32_t y = col[pos++].index;
                    std::int64_t q = pair_of[y];
                    if (q < 0 || static_cast<std::size_t>(q) == p || matching[q].down != y)
                        continue;
                    if (state[q] == 1)
                        throw CyclicMatching("matching has a directed cycle through " +
                                             c_.label_string(matching[q].up) + " and " + c_.label_string(y));
                    if (state[q] == 0) {
                        state[q] = 1;
                        stack.emplace_back(static_cast<std::size_t>(q), 0);
                        pushed = true;
                        break;
                    }
                }
                if (!pushed) {
                    state[p] = 2;
                    order.push_back(p);
                    stack.pop_back();
                }
            }
        }
        for (std::size_t k : order)
            eliminate(matching[k].up, matching[k].down);
    }

    void greedy()
    {
        std::vector<std::uint32_t> scan(c_.size());
        for (std::uint32_t i = 0; i < scan.size(); ++i)
            scan[i] = i;
        std::stable_sort(scan.begin(), scan.end(), [&](std::uint32_t a, std::uint32_t b) { return c_.key(a) < c_.key(b); });
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::uint32_t x : scan) {
                if (!alive_[x] || cols_[x].empty())
                    continue;
                std::int64_t best = -1;
                std::size_t best_count = 0;
                for (const auto& t : cols_[x]) {
                    if (!unit(t.coef))
                        continue;
                    std::size_t cnt = cob_[t.index].size();
                    if (best < 0 || cnt < best_count) {
                        best = t.index;
                        best_count = cnt;
                    }
                }
                if (best >= 0) {
                    eliminate(x, static_cast<std::uint32_t>(best));
                    changed = true;
                }
            }
        }
    }

    Reduction finish()
    {
        std::size_t n = c_.size();
        r_.reduced_index_.assign(n, -1);
        GradedComplex red(c_.modulus(), c_.arity());
        for (std::uint32_t i = 0; i < n; ++i)
            if (alive_[i]) {
                r_.reduced_index_[i] = static_cast<std::int64_t>(r_.critical_.size());
                r_.critical_.push_back(i);
                red.add_cell(c_.label(i), c_.lift(i));
            }
        std::vector<Chain> cols(r_.critical_.size());
        for (std::size_t k = 0; k < r_.critical_.size(); ++k) {
            for (const auto& t : cols_[r_.critical_[k]])
                cols[k].push_back(Term{static_cast<std::uint32_t>(r_.reduced_index_[t.index]), t.coef});
        }
        red.set_differential(SparseMatrix::from_columns(r_.critical_.size(), cols));
        if (c_.formatter())
            red.set_formatter(*c_.formatter());
        r_.reduced_ = std::move(red);
        r_.beta_steps_.assign(n, {});
        for (std::uint32_t k = 0; k < r_.steps_.size(); ++k)
            for (const auto& t : r_.steps_[k].beta)
                r_.beta_steps_[t.index].push_back(k);
        return std::move(r_);
    }

private:
    void eliminate(std::uint32_t a, std::uint32_t b)
    {
        Integer u = coefficient(cols_[a], b);
        if (!unit(u))
            throw NonUnitPivot(a, b, "pivot " + c_.label_string(b) + " in d" + c_.label_string(a) + " is not a unit");
        Reduction::Step step;
        step.up = a;
        step.down = b;
        step.unit_inverse = inverse(u);
        for (const auto& t : cols_[a])
            if (t.index != b)
                step.gamma.push_back(t);

        ++stamp_;
        if (mark_.size() < c_.size())
            mark_.assign(c_.size(), 0);
        for (std::uint32_t x : cob_[b]) {
            if (!alive_[x] || x == a || mark_[x] == stamp_)
                continue;
            mark_[x] = stamp_;
            Integer cb = coefficient(cols_[x], b);
            if (cb == 0)
                continue;
            step.beta.push_back(Term{x, cb});
            Integer factor = norm(-cb * step.unit_inverse);
            merge(x, step.gamma, factor, b);
        }
        std::sort(step.beta.begin(), step.beta.end(), [](const Term& l, const Term& r) { return l.index < r.index; });
        // Drop references to the up cell; they vanish under the projection.
        for (std::uint32_t x : cob_[a]) {
            if (!alive_[x])
                continue;
            auto& col = cols_[x];
            auto it = std::lower_bound(col.begin(), col.end(), a, [](const Term& t, std::uint32_t i) { return t.index < i; });
            if (it != col.end() && it->index == a)
                col.erase(it);
        }
        alive_[a] = alive_[b] = 0;
        cols_[a].clear();
        cols_[b].clear();
        cols_[a].shrink_to_fit();
        cols_[b].shrink_to_fit();
        cob_[a].clear();
        cob_[a].shrink_to_fit();
        cob_[b].clear();
        cob_[b].shrink_to_fit();
        auto k = static_cast<std::int32_t>(r_.steps_.size());
        r_.step_of_[a] = k;
        r_.step_of_[b] = k;
        r_.steps_.push_back(std::move(step));
        r_.pairs_.push_back(MatchedPair{a, b});
    }

    // cols[x] += factor * gamma, with the b term of cols[x] removed.
    void merge(std::uint32_t x, const Chain& gamma, const Integer& factor, std::uint32_t b)
    {
        Chain& acc = cols_[x];
        Chain out;
        out.reserve(acc.size() + gamma.size());
        std::size_t i = 0, j = 0;
        while (i < acc.size() || j < gamma.size()) {
            if (j == gamma.size() || (i < acc.size() && acc[i].index < gamma[j].index)) {
                if (acc[i].index != b)
                    out.push_back(std::move(acc[i]));
                ++i;
            } else if (i == acc.size() || gamma[j].index < acc[i].index) {
                Integer v = norm(gamma[j].coef * factor);
                if (v != 0) {
                    out.push_back(Term{gamma[j].index, std::move(v)});
                    cob_[gamma[j].index].push_back(x);
                }
                ++j;
            } else {
                Integer v = norm(acc[i].coef + gamma[j].coef * factor);
                if (v != 0)
                    out.push_back(Term{acc[i].index, std::move(v)});
                ++i;
                ++j;
            }
        }
        acc = std::move(out);
    }

    const GradedComplex& c_;
    std::uint32_t char_;
    std::vector<Chain> cols_;
    std::vector<std::vector<std::uint32_t>> cob_;
    std::vector<char> alive_;
    std::vector<std::uint64_t> mark_;
    std::uint64_t stamp_ = 0;
    Reduction r_;
};

std::int64_t Reduction::reduced_index(std::uint32_t original) const
{
    return reduced_index_.at(original);
}

Chain Reduction::project(const Chain& z) const
{
    std::map<std::uint32_t, Integer> acc;
    using Item = std::pair<std::int32_t, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    auto normed = [&](const Integer& v) { return char_ == 0 ? v : floor_mod(v, Integer(char_)); };
    auto add = [&](std::uint32_t cell, const Integer& v) {
        if (cell >= step_of_.size())
            throw std::out_of_range("chain index outside the reduced complex");
        auto [it, fresh] = acc.try_emplace(cell, 0);
        it->second = normed(it->second + v);
        if (fresh && step_of_[cell] >= 0)
            heap.emplace(step_of_[cell], cell);
    };
    for (const auto& t : z)
        add(t.index, t.coef);
    std::int32_t last = -1;
    while (!heap.empty()) {
        auto [k, cell] = heap.top();
        heap.pop();
        (void)cell;
        if (k == last)
            continue;
        last = k;
        const Step& s = steps_[k];
        acc.erase(s.up);
        auto it = acc.find(s.down);
        if (it == acc.end())
            continue;
        Integer c = it->second;
        acc.erase(it);
        if (c == 0)
            continue;
        Integer factor = normed(-c * s.unit_inverse);
        for (const auto& t : s.gamma)
            add(t.index, t.coef * factor);
    }
    Chain out;
    for (const auto& [cell, v] : acc)
        if (v != 0)
            out.push_back(Term{static_cast<std::uint32_t>(reduced_index_[cell]), v});
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
    return out;
}

Chain Reduction::lift(const Chain& z) const
{
    std::map<std::uint32_t, Integer> acc;
    std::priority_queue<std::uint32_t> heap;
    std::set<std::uint32_t> queued;
    auto normed = [&](const Integer& v) { return char_ == 0 ? v : floor_mod(v, Integer(char_)); };
    auto enqueue = [&](std::uint32_t cell, std::int64_t below) {
        for (std::uint32_t k : beta_steps_[cell])
            if ((below < 0 || k < below) && queued.insert(k).second)
                heap.push(k);
    };
    for (const auto& t : z) {
        if (t.index >= critical_.size())
            throw std::out_of_range("chain index outside the reduced complex");
        std::uint32_t cell = critical_[t.index];
        acc[cell] = normed(acc[cell] + t.coef);
        enqueue(cell, -1);
    }
    while (!heap.empty()) {
        std::uint32_t k = heap.top();
        heap.pop();
        const Step& s = steps_[k];
        Integer coef = 0;
        for (const auto& t : s.beta) {
            auto it = acc.find(t.index);
            if (it != acc.end())
                coef += it->second * t.coef;
        }
        coef = normed(coef);
        if (coef == 0)
            continue;
        Integer v = normed(-coef * s.unit_inverse);
        auto& slot = acc[s.up];
        slot = normed(slot + v);
        enqueue(s.up, k);
    }
    Chain out;
    for (const auto& [cell, v] : acc)
        if (v != 0)
            out.push_back(Term{cell, v});
    return out;
}

Reduction morse_reduce(const GradedComplex& c, std::span<const MatchedPair> matching, std::uint32_t characteristic)
{
    Eliminator e(c, characteristic);
    e.eliminate_matching(matching);
    return e.finish();
}

Reduction reduce(const GradedComplex& c, std::span<const MatchedPair> seed, std::uint32_t characteristic)
{
    Eliminator e(c, characteristic);
    e.eliminate_matching(seed);
    e.greedy();
    return e.finish();
}

}  // namespace echinf
