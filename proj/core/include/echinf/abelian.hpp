#pragma once

#include <string>
#include <vector>

#include "echinf/matrix.hpp"
#include "echinf/snf.hpp"

namespace echinf {

// Z^free_rank + sum Z/torsion[i]. Coordinates of elements list the torsion
// summands first, then the free ones. Generators, when present, follow the
// same order and live in the ambient basis of whatever complex was measured.
struct FinAbGroup {
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;
    std::vector<Chain> generators;

    std::size_t dimension() const noexcept { return torsion.size() + free_rank; }
    bool is_trivial() const noexcept { return dimension() == 0; }
    bool same_type(const FinAbGroup& other) const { return free_rank == other.free_rank && torsion == other.torsion; }
    // e.g. "Z^2 + Z/2 + Z/4", "(Z/2)^3", "0"
    std::string describe() const;
};

// Z^n modulo the column span of a relation matrix.
class Cokernel {
public:
    explicit Cokernel(const IntMatrix& relations);

    std::size_t ambient_dim() const noexcept { return n_; }
    FinAbGroup type() const;
    // Group coordinates of an ambient vector (torsion entries reduced).
    std::vector<Integer> coordinates(const std::vector<Integer>& v) const;
    // Ambient representative of the k-th group generator.
    std::vector<Integer> generator(std::size_t k) const;
    bool is_zero(const std::vector<Integer>& v) const;

private:
    std::size_t n_ = 0;
    SNFResult snf_;
    std::vector<std::size_t> rows_;  // SNF rows carrying group coordinates, in order
    std::vector<Integer> moduli_;    // 0 for free coordinates
};

// Homology ker(d_out) / im(d_in) of a composable pair of dense matrices.
class PairHomology {
public:
    PairHomology(const IntMatrix& d_in, const IntMatrix& d_out);

    std::size_t ambient_dim() const noexcept { return m_; }
    const IntMatrix& d_in() const noexcept { return d_in_; }
    // Type plus a generator (ambient cycle) for every summand.
    const FinAbGroup& group() const noexcept { return group_; }
    bool is_cycle(const std::vector<Integer>& v) const;
    // Throws std::invalid_argument if v is not a cycle.
    std::vector<Integer> coordinates(const std::vector<Integer>& v) const;

private:
    std::size_t m_ = 0;
    IntMatrix d_in_;
    IntMatrix d_out_;
    IntMatrix kernel_;         // m x k, columns span ker(d_out)
    IntMatrix kernel_coords_;  // k x m, left inverse of kernel_ on ker(d_out)
    Cokernel coker_;
    FinAbGroup group_;
};

// ker(d_out)/im(d_in). Generators are reported for free summands only unless
// torsion_generators is set.
FinAbGroup homology_pair(const IntMatrix& d_in, const IntMatrix& d_out, bool torsion_generators = false);

// Matrix of the map induced by f (middle to middle) in the generator bases of the
// two pairs. If f_up is given, f * d_in == d_in' * f_up is also checked.
IntMatrix induced_map(const IntMatrix& f, const PairHomology& source, const PairHomology& target,
                      const IntMatrix* f_up = nullptr);

IntMatrix integer_kernel(const IntMatrix& m);

// Type (free rank, invariant factors) of a direct sum; generators are dropped.
FinAbGroup direct_sum_type(const std::vector<FinAbGroup>& parts);

// Homomorphisms between FinAbGroups are integer matrices in group coordinates.
// With rational set, the groups are read as Q-vector spaces of dimension free_rank
// and all tests reduce to rank arithmetic.
IntMatrix relation_matrix(const FinAbGroup& g);
std::vector<Integer> reduce_element(const FinAbGroup& g, std::vector<Integer> v);
bool element_is_zero(const FinAbGroup& g, const std::vector<Integer>& v);
IntMatrix reduce_hom(const IntMatrix& m, const FinAbGroup& target);

bool hom_is_zero(const IntMatrix& m, const FinAbGroup& target, bool rational = false);
bool hom_equal(const IntMatrix& a, const IntMatrix& b, const FinAbGroup& target, bool rational = false);
// Columns are kernel generators in source coordinates.
IntMatrix hom_kernel(const IntMatrix& m, const FinAbGroup& source, const FinAbGroup& target);
bool in_subgroup(const std::vector<Integer>& v, const IntMatrix& generators, const FinAbGroup& group);
bool is_injective(const IntMatrix& m, const FinAbGroup& source, const FinAbGroup& target, bool rational = false);
bool is_surjective(const IntMatrix& m, const FinAbGroup& target, bool rational = false);
bool is_isomorphism(const IntMatrix& m, const FinAbGroup& source, const FinAbGroup& target, bool rational = false);
// im(f) == ker(g) for A --f--> B --g--> C.
bool is_exact(const IntMatrix& f, const IntMatrix& g, const FinAbGroup& a, const FinAbGroup& b, const FinAbGroup& c,
              bool rational = false);
// im(f) == im(h) as subgroups of the common target.
bool same_image(const IntMatrix& f, const IntMatrix& h, const FinAbGroup& target, bool rational = false);
// Isomorphism type of im(m), which is source / ker(m).
FinAbGroup image_type(const IntMatrix& m, const FinAbGroup& source, const FinAbGroup& target, bool rational = false);
// Columns are a basis of im(m) in target coordinates, adapted to its type
// (torsion first); generators of the returned group are left empty.
IntMatrix image_basis(const IntMatrix& m, const FinAbGroup& source, const FinAbGroup& target, FinAbGroup* type = nullptr);

}  // namespace echinf
