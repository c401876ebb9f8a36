#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "echinf/abelian.hpp"
#include "echinf/graded_complex.hpp"
#include "echinf/reduction.hpp"

namespace echinf {

struct Coefficients {
    enum class Kind { integers, rationals, prime };
    Kind kind = Kind::integers;
    std::uint32_t p = 0;

    static Coefficients integers() { return {}; }
    static Coefficients rationals() { return {Kind::rationals, 0}; }
    static Coefficients prime(std::uint32_t p);
    // "z", "q", or "f<p>" with p prime.
    static Coefficients parse(const std::string& text);

    bool rational() const noexcept { return kind == Kind::rationals; }
    std::string name() const;
};

// Homology of a GradedComplex in every grading slot. The complex is first
// shrunk by greedy cancellation (optionally seeded); the remaining blocks go
// through Smith normal form. Over F_p a group of dimension d is stored as
// (Z/p)^d, over Q torsion is discarded and only free ranks remain.
class ComplexHomology {
public:
    explicit ComplexHomology(const GradedComplex& c, Coefficients coeff = {}, std::span<const MatchedPair> seed = {});

    const GradedComplex& complex() const noexcept { return c_; }
    const Coefficients& coefficients() const noexcept { return coeff_; }
    const Reduction& reduction() const noexcept { return red_; }
    bool rational() const noexcept { return coeff_.rational(); }

    // Keys carrying cells in the complex.
    const std::vector<GradingKey>& keys() const noexcept { return keys_; }
    // Group at a grading key; trivial for keys without cells. Generators are
    // cycles in the original basis.
    const FinAbGroup& group(GradingKey k) const;
    bool is_cycle(const Chain& z) const;
    std::vector<Integer> coordinates(GradingKey k, const Chain& cycle) const;
    // Matrix of f_*: H_k(this) -> H_{k+degree}(target). Throws NotChainMap if a
    // generator is not sent to a cycle.
    IntMatrix induced(const SparseMatrix& f, const ComplexHomology& target, GradingKey k, std::int64_t degree = 0) const;

private:
    struct Slot {
        std::vector<std::uint32_t> cells;  // reduced indices
        std::unique_ptr<PairHomology> pair;
        FinAbGroup group;
    };
    const Slot* slot(GradingKey k) const;

    GradedComplex c_;
    Coefficients coeff_;
    Reduction red_;
    std::vector<GradingKey> keys_;
    std::map<GradingKey, Slot> slots_;
    std::vector<std::uint32_t> slot_pos_;  // reduced index -> position in its slot
    FinAbGroup empty_;
};

// Throws NotChainMap (witness = source basis element) unless f d = sign d' f.
void require_chain_map(const SparseMatrix& f, const GradedComplex& from, const GradedComplex& to, int sign = 1);

}  // namespace echinf
