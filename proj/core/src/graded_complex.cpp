#include "echinf/graded_complex.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "echinf/errors.hpp"

namespace echinf {

namespace {

constexpr std::uint32_t empty_slot = 0xffffffffu;

std::size_t hash_label(std::span<const std::int32_t> label)
{
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (std::int32_t v : label) {
        h ^= static_cast<std::uint32_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdull;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
}

}  // namespace

std::string default_label_string(std::span<const std::int32_t> label)
{
    std::string s = "(";
    for (std::size_t i = 0; i < label.size(); ++i) {
        if (i > 0)
            s += ",";
        s += std::to_string(label[i]);
    }
    return s + ")";
}

GradedComplex::GradedComplex(std::int64_t modulus, std::size_t arity) : modulus_(modulus), arity_(arity), d_(0, 0)
{
    if (modulus < 0 || modulus % 2 != 0)
        throw GradingMismatch("grading modulus must be even and nonnegative, got " + std::to_string(modulus));
}

std::span<const std::int32_t> GradedComplex::label(std::size_t i) const
{
    if (i >= size())
        throw std::out_of_range("cell index out of range");
    return {labels_.data() + i * arity_, arity_};
}

GradingKey GradedComplex::key_of(std::int64_t lift) const
{
    return modulus_ == 0 ? lift : floor_mod(lift, modulus_);
}

std::size_t GradedComplex::probe(std::span<const std::int32_t> label) const
{
    std::size_t mask = table_.size() - 1;
    std::size_t pos = hash_label(label) & mask;
    while (true) {
        std::uint32_t idx = table_[pos];
        if (idx == empty_slot)
            return pos;
        if (std::equal(label.begin(), label.end(), labels_.begin() + static_cast<std::ptrdiff_t>(idx * arity_)))
            return pos;
        pos = (pos + 1) & mask;
    }
}

void GradedComplex::rehash(std::size_t capacity)
{
    table_.assign(capacity, empty_slot);
    for (std::uint32_t i = 0; i < size(); ++i)
        table_[probe(label(i))] = i;
}

std::uint32_t GradedComplex::add_cell(std::span<const std::int32_t> label, std::int64_t lift)
{
    if (label.size() != arity_)
        throw std::invalid_argument("label arity mismatch");
    if ((size() + 1) * 2 > table_.size())
        rehash(std::max<std::size_t>(16, table_.size() * 2));
    std::size_t pos = probe(label);
    if (table_[pos] != empty_slot)
        throw std::invalid_argument("duplicate label " + default_label_string(label));
    auto idx = static_cast<std::uint32_t>(size());
    labels_.insert(labels_.end(), label.begin(), label.end());
    lifts_.push_back(lift);
    table_[pos] = idx;
    return idx;
}

void GradedComplex::set_differential(SparseMatrix d)
{
    if (d.rows() != size() || d.cols() != size())
        throw std::invalid_argument("differential must be square of the complex size");
    d_ = std::move(d);
}

std::optional<std::uint32_t> GradedComplex::find(std::span<const std::int32_t> label) const
{
    if (label.size() != arity_ || table_.empty())
        return std::nullopt;
    std::uint32_t idx = table_[probe(label)];
    if (idx == empty_slot)
        return std::nullopt;
    return idx;
}

std::vector<GradingKey> GradedComplex::keys() const
{
    std::vector<GradingKey> ks;
    for (std::size_t i = 0; i < size(); ++i)
        ks.push_back(key(i));
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    return ks;
}

std::vector<std::uint32_t> GradedComplex::cells_in(GradingKey k) const
{
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < size(); ++i)
        if (key(i) == k)
            out.push_back(i);
    return out;
}

std::string GradedComplex::format_label(std::span<const std::int32_t> label) const
{
    return formatter_ ? (*formatter_)(label) : default_label_string(label);
}

std::string GradedComplex::label_string(std::size_t i) const
{
    return format_label(label(i));
}

std::string GradedComplex::chain_string(const Chain& c) const
{
    if (c.empty())
        return "0";
    std::string s;
    for (const auto& t : c) {
        bool neg = t.coef < 0;
        Integer a = abs_value(t.coef);
        if (s.empty())
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        if (a != 1)
            s += to_string(a) + "*";
        s += label_string(t.index);
    }
    return s;
}

ComplexCheck verify_complex(const GradedComplex& c)
{
    const SparseMatrix& d = c.differential();
    ComplexCheck r;
    if (d.rows() != c.size() || d.cols() != c.size()) {
        r.kind = ComplexCheck::Kind::shape;
        r.message = "differential shape does not match the basis";
        return r;
    }
    for (std::size_t j = 0; j < c.size(); ++j) {
        for (const auto& t : d.column(j)) {
            if (c.key(t.index) != c.shift_key(c.key(j), -1)) {
                r.kind = ComplexCheck::Kind::wrong_degree;
                r.witness = j;
                r.message = "d" + c.label_string(j) + " has term " + c.label_string(t.index) +
                            " whose grading is not one lower";
                return r;
            }
        }
    }
    for (std::size_t j = 0; j < c.size(); ++j) {
        Chain dd = d.apply(d.column_chain(j));
        if (!dd.empty()) {
            r.kind = ComplexCheck::Kind::square_nonzero;
            r.witness = j;
            r.message = "d^2 " + c.label_string(j) + " = " + c.chain_string(dd) + " != 0";
            return r;
        }
    }
    return r;
}

GradedComplex tensor(const GradedComplex& c, const GradedComplex& d)
{
    std::int64_t p = c.modulus(), q = d.modulus();
    std::int64_t m;
    if (p == q)
        m = p;
    else if (p == 0 || (q != 0 && p % q == 0))
        m = q;
    else if (q == 0 || q % p == 0)
        m = p;
    else
        throw GradingMismatch("incompatible grading moduli " + std::to_string(p) + " and " + std::to_string(q));

    GradedComplex out(m, c.arity() + d.arity());
    Label buf(c.arity() + d.arity());
    for (std::size_t i = 0; i < c.size(); ++i) {
        auto a = c.label(i);
        std::copy(a.begin(), a.end(), buf.begin());
        for (std::size_t j = 0; j < d.size(); ++j) {
            auto b = d.label(j);
            std::copy(b.begin(), b.end(), buf.begin() + static_cast<std::ptrdiff_t>(c.arity()));
            out.add_cell(buf, c.lift(i) + d.lift(j));
        }
    }
    std::size_t nd = d.size();
    std::vector<Chain> cols(out.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        auto dc = c.differential().column(i);
        int sign = (c.lift(i) % 2 == 0) ? 1 : -1;
        for (std::size_t j = 0; j < nd; ++j) {
            std::vector<Term> terms;
            for (const auto& t : dc)
                terms.push_back(Term{static_cast<std::uint32_t>(t.index * nd + j), t.coef});
            for (const auto& t : d.differential().column(j))
                terms.push_back(Term{static_cast<std::uint32_t>(i * nd + t.index), sign > 0 ? t.coef : Integer(-t.coef)});
            cols[i * nd + j] = make_chain(std::move(terms));
        }
    }
    out.set_differential(SparseMatrix::from_columns(out.size(), cols));
    auto fc = c.formatter(), fd = d.formatter();
    std::size_t ac = c.arity();
    out.set_formatter([fc, fd, ac](std::span<const std::int32_t> l) {
        auto left = l.subspan(0, ac), right = l.subspan(ac);
        return (fc ? (*fc)(left) : default_label_string(left)) + "⊗" + (fd ? (*fd)(right) : default_label_string(right));
    });
    return out;
}

GradedComplex restrict_to(const GradedComplex& c, std::span<const std::uint32_t> cells)
{
    GradedComplex out(c.modulus(), c.arity());
    std::vector<std::int64_t> pos(c.size(), -1);
    for (std::size_t k = 0; k < cells.size(); ++k) {
        pos[cells[k]] = static_cast<std::int64_t>(k);
        out.add_cell(c.label(cells[k]), c.lift(cells[k]));
    }
    std::vector<Chain> cols(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k)
        for (const auto& t : c.differential().column(cells[k]))
            if (pos[t.index] >= 0)
                cols[k].push_back(Term{static_cast<std::uint32_t>(pos[t.index]), t.coef});
    for (auto& col : cols)
        col = make_chain(std::move(col));
    out.set_differential(SparseMatrix::from_columns(cells.size(), cols));
    if (c.formatter())
        out.set_formatter(*c.formatter());
    return out;
}

ShortExactSequence sub_quotient(const GradedComplex& c, const std::function<bool(std::span<const std::int32_t>)>& keep)
{
    ShortExactSequence s;
    std::vector<char> kept(c.size());
    for (std::uint32_t i = 0; i < c.size(); ++i) {
        kept[i] = keep(c.label(i)) ? 1 : 0;
        (kept[i] ? s.sub_cells : s.quotient_cells).push_back(i);
    }
    for (std::uint32_t i : s.sub_cells)
        for (const auto& t : c.differential().column(i))
            if (!kept[t.index])
                throw NotSubcomplex(i, "d" + c.label_string(i) + " leaves the kept span through " +
                                           c.label_string(t.index));
    s.sub = restrict_to(c, s.sub_cells);
    s.quotient = restrict_to(c, s.quotient_cells);
    s.total = c;
    std::vector<Triplet> inc, proj;
    for (std::uint32_t k = 0; k < s.sub_cells.size(); ++k)
        inc.push_back(Triplet{s.sub_cells[k], k, 1});
    for (std::uint32_t k = 0; k < s.quotient_cells.size(); ++k)
        proj.push_back(Triplet{k, s.quotient_cells[k], 1});
    s.inclusion = SparseMatrix::from_triplets(c.size(), s.sub_cells.size(), std::move(inc));
    s.projection = SparseMatrix::from_triplets(s.quotient_cells.size(), c.size(), std::move(proj));
    return s;
}

SparseMatrix label_map(const GradedComplex& from, const GradedComplex& to, const LabelTransform& f)
{
    std::vector<Triplet> trip;
    Label target;
    for (std::uint32_t i = 0; i < from.size(); ++i) {
        target.assign(from.label(i).begin(), from.label(i).end());
        int sign = f(from.label(i), target);
        if (sign == 0)
            continue;
        if (auto j = to.find(target))
            trip.push_back(Triplet{*j, i, sign});
    }
    return SparseMatrix::from_triplets(to.size(), from.size(), std::move(trip));
}

std::optional<std::size_t> chain_map_violation(const SparseMatrix& f, const GradedComplex& from,
                                               const GradedComplex& to, int sign)
{
    if (f.cols() != from.size() || f.rows() != to.size())
        throw std::invalid_argument("map shape does not match complexes");
    for (std::size_t j = 0; j < from.size(); ++j) {
        Chain lhs = f.apply(from.differential().column_chain(j));
        Chain rhs = to.differential().apply(f.column_chain(j));
        add_scaled(lhs, rhs, -sign);
        if (!lhs.empty())
            return j;
    }
    return std::nullopt;
}

std::optional<std::size_t> degree_violation(const SparseMatrix& f, const GradedComplex& from, const GradedComplex& to,
                                            std::int64_t degree)
{
    for (std::size_t j = 0; j < from.size(); ++j)
        for (const auto& t : f.column(j))
            if (to.key(t.index) != to.key_of(from.lift(j) + degree))
                return j;
    return std::nullopt;
}

ComplexCheck verify_endo(const GradedComplex& c, const GradedEndo& e)
{
    ComplexCheck r;
    if (auto w = degree_violation(e.matrix, c, c, e.degree)) {
        r.kind = ComplexCheck::Kind::wrong_degree;
        r.witness = *w;
        r.message = "endomorphism has the wrong degree on " + c.label_string(*w);
        return r;
    }
    int sign = e.commutation == Commutation::commutes ? 1 : -1;
    if (auto w = chain_map_violation(e.matrix, c, c, sign)) {
        r.kind = ComplexCheck::Kind::square_nonzero;
        r.witness = *w;
        r.message = std::string("endomorphism fails to ") +
                    (sign > 0 ? "commute" : "anticommute") + " with d on " + c.label_string(*w);
    }
    return r;
}

}  // namespace echinf

namespace echinf {

SparseMatrix tensor_maps(const SparseMatrix& f, const GradedComplex& c_from, const SparseMatrix& g,
                         const GradedComplex& d_from, std::int64_t g_degree)
{
    if (f.cols() != c_from.size() || g.cols() != d_from.size())
        throw std::invalid_argument("tensor_maps: map shapes do not match the source complexes");
    std::size_t nd_from = g.cols(), nd_to = g.rows();
    std::vector<Triplet> trip;
    for (std::uint32_t i = 0; i < f.cols(); ++i) {
        bool flip = (g_degree % 2 != 0) && (c_from.lift(i) % 2 != 0);
        for (const auto& a : f.column(i))
            for (std::uint32_t j = 0; j < nd_from; ++j)
                for (const auto& b : g.column(j)) {
                    Integer v = a.coef * b.coef;
                    trip.push_back(Triplet{static_cast<std::uint32_t>(a.index * nd_to + b.index),
                                           static_cast<std::uint32_t>(i * nd_from + j), flip ? Integer(-v) : v});
                }
    }
    return SparseMatrix::from_triplets(f.rows() * nd_to, f.cols() * nd_from, std::move(trip));
}

}  // namespace echinf
