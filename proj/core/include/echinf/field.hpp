#pragma once

#include <cstdint>

#include "echinf/matrix.hpp"

namespace echinf {

// Rank over F_p (p prime) after reducing entries mod p.
std::size_t rank_mod_p(const IntMatrix& m, std::uint32_t p);
// Rank over Q by fraction-free (Bareiss) elimination.
std::size_t rank_rational(const IntMatrix& m);

// dim ker(d_out) - rank im(d_in) over Q (characteristic 0) or F_p.
// d_out * d_in must vanish over Z; CompositionNonzero otherwise.
std::size_t field_homology_pair(const IntMatrix& d_in, const IntMatrix& d_out, std::uint32_t characteristic);

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);
bool is_prime(std::uint32_t p);

}  // namespace echinf
