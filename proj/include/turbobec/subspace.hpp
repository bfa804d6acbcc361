#ifndef TURBOBEC_SUBSPACE_HPP
#define TURBOBEC_SUBSPACE_HPP

#include <cstdint>
#include <optional>
#include <vector>

namespace turbobec {

/// Vectors of small GF(2) spaces packed into machine words (bit i = coordinate i).
using Word = uint32_t;

/// Subspaces are kept as canonical reduced bases: rows with strictly
/// decreasing leading bits, each leading bit cleared from every other row.
using Basis = std::vector<Word>;

Basis span_rref(std::vector<Word> vecs);
bool in_span(const Basis& b, Word v);
/// Coordinate bits of v with respect to the basis rows (bit i <-> b[i]),
/// or nullopt when v is outside the span.
std::optional<Word> coords_in_basis(const Basis& b, Word v);
Basis intersect_spans(const Basis& a, const Basis& b);
/// Every subspace of F_2^dim as a canonical basis, in a deterministic order
/// (ascending dimension, then lexicographic basis).
std::vector<Basis> all_subspaces(int dim);

}  // namespace turbobec

#endif
