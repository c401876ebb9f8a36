#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "echinf/matrix.hpp"

namespace echinf {

// Key of a grading slot: the integer degree when the modulus is 0, otherwise the
// degree reduced into [0, modulus).
using GradingKey = std::int64_t;

using Label = std::vector<std::int32_t>;
using LabelFormatter = std::function<std::string(std::span<const std::int32_t>)>;

// Finite free chain complex over Z. Every cell carries a label (a fixed-arity
// tuple of ints, unique within the complex) and an integer degree lift; the
// grading itself is the lift reduced mod the modulus.
class GradedComplex {
public:
    GradedComplex() = default;
    GradedComplex(std::int64_t modulus, std::size_t arity);

    std::uint32_t add_cell(std::span<const std::int32_t> label, std::int64_t lift);
    std::uint32_t add_cell(std::initializer_list<std::int32_t> label, std::int64_t lift)
    {
        return add_cell(std::span<const std::int32_t>(label.begin(), label.size()), lift);
    }
    void set_differential(SparseMatrix d);

    std::size_t size() const noexcept { return lifts_.size(); }
    std::int64_t modulus() const noexcept { return modulus_; }
    std::size_t arity() const noexcept { return arity_; }
    std::span<const std::int32_t> label(std::size_t i) const;
    std::int64_t lift(std::size_t i) const { return lifts_.at(i); }
    GradingKey key(std::size_t i) const { return key_of(lift(i)); }
    GradingKey key_of(std::int64_t lift) const;
    GradingKey shift_key(GradingKey k, std::int64_t delta) const { return key_of(k + delta); }
    std::optional<std::uint32_t> find(std::span<const std::int32_t> label) const;
    const SparseMatrix& differential() const noexcept { return d_; }
    // Sorted distinct grading keys that carry at least one cell.
    std::vector<GradingKey> keys() const;
    std::vector<std::uint32_t> cells_in(GradingKey k) const;

    void set_formatter(LabelFormatter f) { formatter_ = std::make_shared<LabelFormatter>(std::move(f)); }
    const std::shared_ptr<LabelFormatter>& formatter() const noexcept { return formatter_; }
    std::string label_string(std::size_t i) const;
    std::string format_label(std::span<const std::int32_t> label) const;
    std::string chain_string(const Chain& c) const;

private:
    void rehash(std::size_t capacity);
    std::size_t probe(std::span<const std::int32_t> label) const;

    std::int64_t modulus_ = 0;
    std::size_t arity_ = 0;
    std::vector<std::int32_t> labels_;
    std::vector<std::int64_t> lifts_;
    std::vector<std::uint32_t> table_;
    SparseMatrix d_;
    std::shared_ptr<LabelFormatter> formatter_;
};

std::string default_label_string(std::span<const std::int32_t> label);

struct ComplexCheck {
    enum class Kind { ok, square_nonzero, wrong_degree, shape };
    Kind kind = Kind::ok;
    std::size_t witness = 0;
    std::string message;
    bool ok() const noexcept { return kind == Kind::ok; }
};

// Confirms d^2 = 0 and that d lowers the grading by one.
ComplexCheck verify_complex(const GradedComplex& c);

// Koszul tensor product; cells ordered lexicographically (first factor major).
// Moduli must divide one another (0 counts as divisible by everything); the
// result carries the smaller one. Throws GradingMismatch otherwise.
GradedComplex tensor(const GradedComplex& c, const GradedComplex& d);

// Complex spanned by the given cells with the differential restricted to them.
GradedComplex restrict_to(const GradedComplex& c, std::span<const std::uint32_t> cells);

struct ShortExactSequence {
    GradedComplex sub;
    GradedComplex total;
    GradedComplex quotient;
    std::vector<std::uint32_t> sub_cells;       // indices in total
    std::vector<std::uint32_t> quotient_cells;  // indices in total
    SparseMatrix inclusion;                     // total x sub
    SparseMatrix projection;                    // quotient x total
};

// The kept cells must span a subcomplex; NotSubcomplex otherwise.
ShortExactSequence sub_quotient(const GradedComplex& c, const std::function<bool(std::span<const std::int32_t>)>& keep);

// Cell-to-cell map sending a cell with label l to the cell of `to` labelled f(l),
// times the returned sign; f returns 0 to send the cell to zero. Targets
// missing from `to` are dropped.
using LabelTransform = std::function<int(std::span<const std::int32_t>, Label&)>;
SparseMatrix label_map(const GradedComplex& from, const GradedComplex& to, const LabelTransform& f);

enum class Commutation { commutes, anticommutes };

struct GradedEndo {
    SparseMatrix matrix;
    std::int64_t degree = 0;
    Commutation commutation = Commutation::commutes;
};

// First basis element where f d_from != s d_to f (s = -1 for anticommuting maps).
std::optional<std::size_t> chain_map_violation(const SparseMatrix& f, const GradedComplex& from,
                                               const GradedComplex& to, int sign = 1);
// First basis element whose image has a term of the wrong degree.
std::optional<std::size_t> degree_violation(const SparseMatrix& f, const GradedComplex& from, const GradedComplex& to,
                                            std::int64_t degree);
ComplexCheck verify_endo(const GradedComplex& c, const GradedEndo& e);

}  // namespace echinf

namespace echinf {

// f (x) g : C (x) D -> C' (x) D' with (f (x) g)(c (x) d) = (-1)^{deg(g) deg(c)} f(c) (x) g(d);
// all four complexes indexed as produced by tensor().
SparseMatrix tensor_maps(const SparseMatrix& f, const GradedComplex& c_from, const SparseMatrix& g,
                         const GradedComplex& d_from, std::int64_t g_degree);

}  // namespace echinf
