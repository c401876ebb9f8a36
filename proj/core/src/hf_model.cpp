#include "echinf/hf_model.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace echinf {

namespace {

std::string edge_string(const HFData& hf, const HFEntry& e)
{
    auto name = [&](std::uint32_t i) { return i < hf.names.size() ? hf.names[i] : "#" + std::to_string(i); };
    return name(e.from) + " -> " + to_string(e.coef) + "*T^" + std::to_string(e.t_power) + "*" + name(e.to);
}

bool degree_ok(const HFData& hf, const HFEntry& e)
{
    std::int64_t want = hf.gradings[e.from] - 1 + 2 * e.t_power;
    std::int64_t have = hf.gradings[e.to];
    return hf.modulus == 0 ? want == have : floor_mod(want - have, hf.modulus) == 0;
}

}  // namespace

std::int64_t HFData::max_t_power() const
{
    std::int64_t k = 0;
    for (const auto& e : differential)
        k = std::max(k, e.t_power);
    for (const auto& a : h1_actions)
        for (const auto& e : a.entries)
            k = std::max(k, e.t_power);
    return k;
}

LabelFormatter hf_formatter(const HFData& hf)
{
    std::vector<std::string> names = hf.names;
    return [names](std::span<const std::int32_t> l) {
        std::string x = l[0] >= 0 && static_cast<std::size_t>(l[0]) < names.size() ? names[l[0]] : std::to_string(l[0]);
        return "(" + x + "," + std::to_string(l[1]) + ")";
    };
}

HFValidation validate(const HFData& hf)
{
    HFValidation r;
    auto fail = [&](std::string msg) {
        r.ok = false;
        r.violation = std::move(msg);
        return r;
    };
    if (hf.modulus < 0 || hf.modulus % 2 != 0)
        return fail("grading modulus " + std::to_string(hf.modulus) + " is not an even nonnegative integer");
    if (hf.names.empty())
        return fail("no generators");
    if (hf.gradings.size() != hf.names.size())
        return fail("grading list does not match the generator list");
    std::set<std::string> seen;
    for (const auto& n : hf.names)
        if (!seen.insert(n).second)
            return fail("duplicate generator name '" + n + "'");

    auto check_entries = [&](const std::vector<HFEntry>& entries, const std::string& what) -> bool {
        for (const auto& e : entries) {
            if (e.from >= hf.size() || e.to >= hf.size()) {
                fail(what + " entry references an unknown generator");
                return false;
            }
            if (e.t_power < 0) {
                fail(what + " edge " + edge_string(hf, e) + " has negative exponent; the filtration must be preserved");
                return false;
            }
            if (e.coef != 0 && !degree_ok(hf, e)) {
                fail(what + " edge " + edge_string(hf, e) + " does not have degree -1");
                return false;
            }
        }
        return true;
    };
    if (!check_entries(hf.differential, "differential"))
        return r;
    for (const auto& a : hf.h1_actions)
        if (!check_entries(a.entries, "h1 action '" + a.name + "'"))
            return r;

    std::int64_t k = hf.max_t_power();
    GradedComplex w = hf_window(hf, 0, 2 * k + 1);
    auto check = verify_complex(w);
    if (!check.ok())
        return fail("differential: " + check.message);
    for (const auto& a : hf.h1_actions) {
        auto e = verify_endo(w, h1_endo(w, a));
        if (!e.ok())
            return fail("h1 action '" + a.name + "': " + e.message);
    }
    return r;
}

Flavor parse_flavor(const std::string& text)
{
    if (text == "inf" || text == "infinity")
        return Flavor::infinity;
    if (text == "minus")
        return Flavor::minus;
    if (text == "plus")
        return Flavor::plus;
    throw std::invalid_argument("unknown flavor '" + text + "' (expected inf, minus or plus)");
}

std::string flavor_name(Flavor f)
{
    switch (f) {
    case Flavor::infinity:
        return "inf";
    case Flavor::minus:
        return "minus";
    case Flavor::plus:
        return "plus";
    }
    return "?";
}

SparseMatrix hf_operator(const GradedComplex& from, const GradedComplex& to, std::span<const HFEntry> entries)
{
    std::vector<std::vector<const HFEntry*>> by_source;
    for (const auto& e : entries) {
        if (by_source.size() <= e.from)
            by_source.resize(e.from + 1);
        by_source[e.from].push_back(&e);
    }
    std::vector<Triplet> trip;
    Label target;
    for (std::uint32_t c = 0; c < from.size(); ++c) {
        auto l = from.label(c);
        auto x = static_cast<std::size_t>(l[0]);
        if (x >= by_source.size())
            continue;
        target.assign(l.begin(), l.end());
        for (const HFEntry* e : by_source[x]) {
            target[0] = static_cast<std::int32_t>(e->to);
            target[1] = static_cast<std::int32_t>(l[1] - e->t_power);
            if (auto j = to.find(target))
                trip.push_back(Triplet{*j, c, e->coef});
        }
    }
    return SparseMatrix::from_triplets(to.size(), from.size(), std::move(trip));
}

GradedComplex hf_window(const HFData& hf, std::int64_t i_min, std::int64_t i_max)
{
    if (i_min > i_max)
        throw std::invalid_argument("empty i-window");
    GradedComplex c(hf.modulus, 2);
    for (std::int64_t i = i_min; i <= i_max; ++i)
        for (std::uint32_t x = 0; x < hf.size(); ++x)
            c.add_cell({static_cast<std::int32_t>(x), static_cast<std::int32_t>(i)}, hf.gradings[x] + 2 * i);
    c.set_differential(hf_operator(c, c, hf.differential));
    c.set_formatter(hf_formatter(hf));
    return c;
}

bool in_minus_part(std::span<const std::int32_t> label)
{
    return label[1] <= -1;
}

ShortExactSequence flavor_ses(const GradedComplex& c)
{
    return sub_quotient(c, in_minus_part);
}

GradedComplex flavor_complex(const HFData& hf, Flavor flavor, std::int64_t i_min, std::int64_t i_max)
{
    GradedComplex w = hf_window(hf, i_min, i_max);
    if (flavor == Flavor::infinity)
        return w;
    auto s = flavor_ses(w);
    return flavor == Flavor::minus ? s.sub : s.quotient;
}

SparseMatrix shift_map(const GradedComplex& from, const GradedComplex& to, std::int64_t delta)
{
    return label_map(from, to, [delta](std::span<const std::int32_t> l, Label& out) {
        out[1] = static_cast<std::int32_t>(l[1] + delta);
        return 1;
    });
}

GradedEndo u_map(const GradedComplex& c)
{
    return GradedEndo{shift_map(c, c, -1), -2, Commutation::commutes};
}

GradedEndo h1_endo(const GradedComplex& c, const H1Action& action)
{
    return GradedEndo{hf_operator(c, c, action.entries), -1, Commutation::anticommutes};
}

}  // namespace echinf
