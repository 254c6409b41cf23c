#pragma once

#include <utility>

#include "itrm/ordinal.hpp"

namespace itrm {

// Goedel pairing: pairs are ordered by (max(a, b), a, b) and each pair is
// sent to the order type of its predecessors. For multiplicatively closed
// alpha this is a bijection alpha x alpha -> alpha.
//
// Inside the block of pairs with max m, the pairs (a, m) with a < m come
// first, then (m, b) for b <= m; so with G(m) the order type of all pairs
// with max below m,
//   pair(a, b) = G(m) + a        if a < m
//              = G(m) + m + b    otherwise.
Ordinal godel_pair(const Ordinal& a, const Ordinal& b, const Ordinal& alpha);
std::pair<Ordinal, Ordinal> godel_unpair(const Ordinal& z, const Ordinal& alpha);

// G(m): the order type of {(a, b) : max(a, b) < m}. Exposed for testing.
Ordinal pairing_block_start(const Ordinal& m);

}  // namespace itrm
