#include "echinf/ech_model.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <tuple>

#include "echinf/abelian.hpp"

namespace echinf {

std::int64_t handle_norm(std::span<const std::int32_t> h)
{
    std::int64_t n = 0;
    for (std::size_t p = 0; p + 1 < h.size(); p += 2)
        n += o_norm(OLabel{h[p], h[p + 1]});
    return n;
}

bool all_core(std::span<const std::int32_t> h)
{
    for (std::size_t p = 0; p + 1 < h.size(); p += 2)
        if (!is_core(OLabel{h[p], h[p + 1]}))
            return false;
    return true;
}

std::string handles_string(std::span<const std::int32_t> h)
{
    std::string s;
    for (std::size_t p = 0; p + 1 < h.size(); p += 2) {
        if (!s.empty())
            s += "⊗";
        s += o_label_string(OLabel{h[p], h[p + 1]});
    }
    return s;
}

namespace {

std::int64_t handle_weight(std::span<const std::int32_t> h)
{
    std::int64_t w = 0;
    for (std::size_t p = 0; p + 1 < h.size(); p += 2)
        w += o_weight(h[p + 1]);
    return w;
}

// Enumerates handle tuples of total norm < L in lexicographic window order.
std::vector<Label> handle_tuples(int g, std::int64_t L)
{
    GradedComplex v = o_window(std::max<std::int64_t>(L, 1));
    std::vector<Label> out;
    Label cur;
    auto rec = [&](auto&& self, int depth, std::int64_t budget) -> void {
        if (depth == g) {
            out.push_back(cur);
            return;
        }
        for (std::uint32_t i = 0; i < v.size(); ++i) {
            auto l = v.label(i);
            std::int64_t n = o_norm(OLabel{l[0], l[1]});
            if (n >= budget)
                continue;
            cur.push_back(l[0]);
            cur.push_back(l[1]);
            self(self, depth + 1, budget - n);
            cur.pop_back();
            cur.pop_back();
        }
    };
    if (L >= 1)
        rec(rec, 0, L);
    return out;
}

// Signed handle boundary of a tuple as (tuple, coef) terms.
void handle_boundary(std::span<const std::int32_t> h, OMutation mutation,
                     std::vector<std::pair<Label, int>>& out)
{
    out.clear();
    int sign = 1;
    for (std::size_t p = 0; p + 1 < h.size(); p += 2) {
        for (const auto& t : boundary_star(OLabel{h[p], h[p + 1]}, mutation)) {
            Label l(h.begin(), h.end());
            l[p] = t.label.m;
            l[p + 1] = t.label.o;
            out.emplace_back(std::move(l), sign * t.coef);
        }
        if (o_weight(h[p + 1]) % 2 != 0)
            sign = -sign;
    }
}

}  // namespace

GradedComplex handle_complex(int g, std::int64_t L, OMutation mutation)
{
    if (g < 1)
        throw std::invalid_argument("g must be at least 1");
    GradedComplex w(0, static_cast<std::size_t>(2 * g));
    for (const auto& t : handle_tuples(g, L))
        w.add_cell(t, handle_weight(t));
    std::vector<Chain> cols(w.size());
    std::vector<std::pair<Label, int>> terms;
    for (std::uint32_t i = 0; i < w.size(); ++i) {
        handle_boundary(w.label(i), mutation, terms);
        std::vector<Term> col;
        for (auto& [l, c] : terms) {
            auto j = w.find(l);
            if (!j)
                throw std::logic_error("handle boundary leaves the truncation");
            col.push_back(Term{*j, c});
        }
        cols[i] = make_chain(std::move(col));
    }
    w.set_differential(SparseMatrix::from_columns(w.size(), cols));
    w.set_formatter([](std::span<const std::int32_t> l) { return handles_string(l); });
    return w;
}

namespace {

// Partner of a handle tuple under the product matching, if any.
std::optional<Label> product_partner(std::span<const std::int32_t> h)
{
    for (std::size_t p = 0; p + 1 < h.size(); p += 2) {
        OLabel x{h[p], h[p + 1]};
        if (auto q = canonical_partner(x)) {
            Label l(h.begin(), h.end());
            l[p] = q->m;
            l[p + 1] = q->o;
            return l;
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<MatchedPair> handle_matching(const GradedComplex& w)
{
    std::vector<MatchedPair> pairs;
    for (std::uint32_t i = 0; i < w.size(); ++i) {
        auto partner = product_partner(w.label(i));
        if (!partner)
            continue;
        if (auto j = w.find(*partner); j && w.lift(*j) > w.lift(i))
            pairs.push_back(MatchedPair{*j, i});
    }
    return pairs;
}

GradedComplex core_handle_complex(int g)
{
    GradedComplex v(0, 2);
    v.add_cell({0, o_zero}, 0);
    v.add_cell({0, o_plus}, 1);
    v.set_differential(SparseMatrix(2, 2));
    v.set_formatter([](std::span<const std::int32_t> l) { return o_label_string(OLabel{l[0], l[1]}); });
    GradedComplex out = v;
    for (int p = 1; p < g; ++p)
        out = tensor(out, v);
    return out;
}

LabelFormatter ech_formatter(const HFData& hf)
{
    auto base = hf_formatter(hf);
    return [base](std::span<const std::int32_t> l) {
        return base(l.subspan(0, 2)) + "⊗" + handles_string(l.subspan(2));
    };
}

GradedComplex build_ech(const HFData& hf, const EchParams& p)
{
    GradedComplex hfw = hf_window(hf, p.i_min, p.i_max);
    GradedComplex w = handle_complex(p.g, p.L, p.mutation);
    std::size_t ha = w.arity();
    GradedComplex e(hf.modulus, 2 + ha);
    Label buf(2 + ha);
    for (std::uint32_t a = 0; a < hfw.size(); ++a) {
        buf[0] = hfw.label(a)[0];
        buf[1] = hfw.label(a)[1];
        for (std::uint32_t b = 0; b < w.size(); ++b) {
            auto h = w.label(b);
            std::copy(h.begin(), h.end(), buf.begin() + 2);
            e.add_cell(buf, hfw.lift(a) + w.lift(b));
        }
    }
    std::size_t nw = w.size();
    std::vector<Chain> cols(e.size());
    for (std::uint32_t a = 0; a < hfw.size(); ++a) {
        bool odd = hfw.lift(a) % 2 != 0;
        auto dhf = hfw.differential().column(a);
        for (std::uint32_t b = 0; b < nw; ++b) {
            std::vector<Term> col;
            for (const auto& t : dhf)
                col.push_back(Term{static_cast<std::uint32_t>(t.index * nw + b), t.coef});
            for (const auto& t : w.differential().column(b))
                col.push_back(Term{static_cast<std::uint32_t>(a * nw + t.index), odd ? Integer(-t.coef) : t.coef});
            cols[a * nw + b] = make_chain(std::move(col));
        }
    }
    e.set_differential(SparseMatrix::from_columns(e.size(), cols));
    e.set_formatter(ech_formatter(hf));
    return e;
}

std::vector<MatchedPair> ech_matching(const GradedComplex& e, int g)
{
    std::vector<MatchedPair> pairs;
    Label probe;
    for (std::uint32_t i = 0; i < e.size(); ++i) {
        auto l = e.label(i);
        auto partner = product_partner(l.subspan(2, static_cast<std::size_t>(2 * g)));
        if (!partner)
            continue;
        probe.assign(l.begin(), l.begin() + 2);
        probe.insert(probe.end(), partner->begin(), partner->end());
        if (auto j = e.find(probe); j && e.lift(*j) > e.lift(i))
            pairs.push_back(MatchedPair{*j, i});
    }
    return pairs;
}

SparseMatrix t_action(const GradedComplex& e)
{
    return shift_map(e, e, -1);
}

std::shared_ptr<const HandleModel> handle_model(int g, std::int64_t L, OMutation mutation)
{
    static std::mutex mu;
    static std::map<std::tuple<int, std::int64_t, int>, std::shared_ptr<const HandleModel>> cache;
    auto key = std::make_tuple(g, L, static_cast<int>(mutation));
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(key); it != cache.end())
            return it->second;
    }
    auto m = std::make_shared<HandleModel>();
    m->g = g;
    m->L = L;
    m->mutation = mutation;
    m->complex = handle_complex(g, L, mutation);
    auto pairs = handle_matching(m->complex);
    m->canonical = morse_reduce(m->complex, pairs);
    m->minimal = reduce(m->complex, pairs);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, m);
    return m;
}

SparseMatrix apply_handle_map(const GradedComplex& from, const GradedComplex& to, const HandleMap& m,
                              std::size_t hf_arity)
{
    std::vector<Triplet> trip;
    Label key, target;
    for (std::uint32_t c = 0; c < from.size(); ++c) {
        auto l = from.label(c);
        key.assign(l.begin() + static_cast<std::ptrdiff_t>(hf_arity), l.end());
        auto it = m.find(key);
        if (it == m.end())
            continue;
        for (const auto& [h, coef] : it->second) {
            target.assign(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(hf_arity));
            target.insert(target.end(), h.begin(), h.end());
            if (auto j = to.find(target))
                trip.push_back(Triplet{*j, c, coef});
        }
    }
    return SparseMatrix::from_triplets(to.size(), from.size(), std::move(trip));
}

namespace {

std::vector<std::pair<Label, Integer>> labelled(const GradedComplex& c, const Chain& z)
{
    std::vector<std::pair<Label, Integer>> out;
    for (const auto& t : z) {
        auto l = c.label(t.index);
        out.emplace_back(Label(l.begin(), l.end()), t.coef);
    }
    return out;
}

}  // namespace

HandleMap core_to_minimal(const HandleModel& h)
{
    HandleMap out;
    const GradedComplex& red = h.canonical.reduced();
    for (std::uint32_t i = 0; i < red.size(); ++i) {
        auto l = red.label(i);
        if (!all_core(l))
            continue;
        Chain lifted = h.canonical.lift(Chain{Term{i, 1}});
        out[Label(l.begin(), l.end())] = labelled(h.minimal.reduced(), h.minimal.project(lifted));
    }
    return out;
}

HandleMap minimal_to_next(const HandleModel& h, const HandleModel& next)
{
    HandleMap out;
    const GradedComplex& red = h.minimal.reduced();
    for (std::uint32_t i = 0; i < red.size(); ++i) {
        Chain lifted = h.minimal.lift(Chain{Term{i, 1}});
        Chain moved;
        for (const auto& t : lifted) {
            auto j = next.complex.find(h.complex.label(t.index));
            if (!j)
                throw std::logic_error("handle truncation is not nested");
            moved.push_back(Term{*j, t.coef});
        }
        moved = make_chain(std::move(moved));
        auto l = red.label(i);
        out[Label(l.begin(), l.end())] = labelled(next.minimal.reduced(), next.minimal.project(moved));
    }
    return out;
}

GradedComplex reduced_ech(const GradedComplex& c, const HandleModel& h)
{
    return tensor(c, h.minimal.reduced());
}

std::string EchHomology::status() const
{
    if (!L_stable)
        return "not-stabilized";
    return window_relative ? "stable-in-L, window-relative" : "stable";
}

namespace {

struct StableImages {
    std::map<GradingKey, FinAbGroup> raw;
    std::map<GradingKey, FinAbGroup> stable;
    std::vector<GradingKey> keys;
};

// Stable part of the handle factor: per grading, the rank of the image of
// W'_L in W'_{L+1}, provided both reduced factors have zero differential and
// that image is a direct summand. Empty otherwise.
std::optional<std::map<GradingKey, std::size_t>> split_handle_image(const HandleModel& h0, const HandleModel& h1)
{
    const GradedComplex& w0 = h0.minimal.reduced();
    const GradedComplex& w1 = h1.minimal.reduced();
    if (!w0.differential().is_zero() || !w1.differential().is_zero())
        return std::nullopt;
    SparseMatrix psi = apply_handle_map(w0, w1, minimal_to_next(h0, h1), 0);
    std::map<GradingKey, std::size_t> ranks;
    for (GradingKey k : w1.keys()) {
        IntMatrix m = psi.block(w1.cells_in(k), w0.cells_in(k));
        SNFResult snf = smith_normal_form(m, SNFOptions{false, false, false, false});
        for (std::size_t i = 0; i < snf.rank(); ++i)
            if (!is_unit(snf.d[i]))
                return std::nullopt;
        ranks[k] = snf.rank();
    }
    return ranks;
}

StableImages stable_images(const HFData& hf, Flavor flavor, const EchParams& p, Coefficients coeff)
{
    GradedComplex base = flavor_complex(hf, flavor, p.i_min, p.i_max);
    auto h0 = handle_model(p.g, p.L, p.mutation);
    auto h1 = handle_model(p.g, p.L + 1, p.mutation);
    GradedComplex e0 = reduced_ech(base, *h0);
    GradedComplex e1 = reduced_ech(base, *h1);
    StableImages out;
    out.keys = e0.keys();

    std::size_t widest = 0;
    for (GradingKey k : e1.keys())
        widest = std::max(widest, e1.cells_in(k).size());
    if (widest > p.direct_limit) {
        if (auto ranks = split_handle_image(*h0, *h1)) {
            // C (x) W with W free and d_W = 0 is a sum of shifted copies of C.
            ComplexHomology hc(base, coeff);
            const GradedComplex& w0 = h0->minimal.reduced();
            for (GradingKey k : out.keys) {
                std::vector<FinAbGroup> raw, stable;
                for (GradingKey d : w0.keys()) {
                    const FinAbGroup& piece = hc.group(base.key_of(k - d));
                    for (std::size_t n = w0.cells_in(d).size(); n > 0; --n)
                        raw.push_back(piece);
                    auto it = ranks->find(d);
                    for (std::size_t n = it == ranks->end() ? 0 : it->second; n > 0; --n)
                        stable.push_back(piece);
                }
                out.raw[k] = direct_sum_type(raw);
                out.stable[k] = direct_sum_type(stable);
            }
            return out;
        }
    }

    SparseMatrix psi = apply_handle_map(e0, e1, minimal_to_next(*h0, *h1));
    ComplexHomology a(e0, coeff), b(e1, coeff);
    for (GradingKey k : out.keys) {
        out.raw[k] = a.group(k);
        out.raw[k].generators.clear();
        IntMatrix m = a.induced(psi, b, k);
        out.stable[k] = image_type(m, a.group(k), b.group(k), coeff.rational());
    }
    return out;
}

}  // namespace

EchHomology ech_flavor_homology(const HFData& hf, Flavor flavor, const EchParams& p, Coefficients coeff)
{
    EchHomology res;
    res.flavor = flavor;
    res.params = p;
    res.coefficients = coeff;
    res.window_relative = hf.modulus > 0;

    StableImages at = stable_images(hf, flavor, p, coeff);
    EchParams next = p;
    next.L = p.L + 1;
    StableImages up = stable_images(hf, flavor, next, coeff);
    res.L_stable = true;
    for (GradingKey k : at.keys) {
        auto it = up.stable.find(k);
        FinAbGroup other = it == up.stable.end() ? FinAbGroup{} : it->second;
        if (!other.same_type(at.stable[k]))
            res.L_stable = false;
    }
    std::map<GradingKey, FinAbGroup> wider;
    if (!res.window_relative) {
        EchParams w = p;
        w.i_min -= 2;
        w.i_max += 2;
        wider = stable_images(hf, flavor, w, coeff).stable;
    }
    for (GradingKey k : at.keys) {
        EchGradingRow row;
        row.key = k;
        row.raw = at.raw[k];
        row.stable = at.stable[k];
        if (!res.window_relative) {
            auto it = wider.find(k);
            row.window_stable = it != wider.end() && it->second.same_type(row.stable);
        }
        res.rows.push_back(std::move(row));
    }
    return res;
}

}  // namespace echinf
