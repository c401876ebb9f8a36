#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "echinf/graded_complex.hpp"

namespace echinf {

// One term c * T^t_power * to in the image of `from`.
struct HFEntry {
    std::uint32_t from = 0;
    std::uint32_t to = 0;
    std::int64_t t_power = 0;
    Integer coef = 1;
};

struct H1Action {
    std::string name;
    std::vector<HFEntry> entries;
};

// Generators with integer grading lifts (read mod `modulus`) and a
// differential over Z[T], T of degree -2.
struct HFData {
    std::int64_t modulus = 0;
    std::vector<std::string> names;
    std::vector<std::int64_t> gradings;
    std::vector<HFEntry> differential;
    std::vector<H1Action> h1_actions;
    std::string description;
    std::string provenance;

    std::size_t size() const noexcept { return names.size(); }
    std::int64_t max_t_power() const;
};

struct HFValidation {
    bool ok = true;
    std::string violation;
};

// Checks names, exponents, degrees, d^2 = 0 and the h1 relations on the window
// [0, 2K + 1], K the largest exponent present.
HFValidation validate(const HFData& hf);

enum class Flavor { infinity, minus, plus };
Flavor parse_flavor(const std::string& text);
std::string flavor_name(Flavor f);

// Cells (x, i) for i_min <= i <= i_max, grading lift(x) + 2i; terms landing
// below i_min are dropped, i.e. the complex Z(i <= i_max) / Z(i < i_min).
GradedComplex hf_window(const HFData& hf, std::int64_t i_min, std::int64_t i_max);

// Sub = cells with i <= -1, quotient = cells with i >= 0.
bool in_minus_part(std::span<const std::int32_t> label);
ShortExactSequence flavor_ses(const GradedComplex& c);
GradedComplex flavor_complex(const HFData& hf, Flavor flavor, std::int64_t i_min, std::int64_t i_max);

// Translation (x, i, ...) -> (x, i + delta, ...) between complexes whose
// labels start with (generator, i). Targets outside `to` are dropped.
SparseMatrix shift_map(const GradedComplex& from, const GradedComplex& to, std::int64_t delta);
GradedEndo u_map(const GradedComplex& c);

// Applies entries acting on the (generator, i) part of the labels, identity on the rest.
SparseMatrix hf_operator(const GradedComplex& from, const GradedComplex& to, std::span<const HFEntry> entries);
GradedEndo h1_endo(const GradedComplex& c, const H1Action& action);

LabelFormatter hf_formatter(const HFData& hf);

}  // namespace echinf
