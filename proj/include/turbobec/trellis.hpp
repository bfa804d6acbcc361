#ifndef TURBOBEC_TRELLIS_HPP
#define TURBOBEC_TRELLIS_HPP

#include <gmpxx.h>

#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "turbobec/conv.hpp"
#include "turbobec/subspace.hpp"

namespace turbobec {

/// One period of the minimal trellis. Vertices at boundary i are the integers
/// 0..2^layer_dim[i]-1; vertex ids are coordinates with respect to an internal
/// reduced basis, so the zero state is always id 0 and edge maps are linear in
/// (left id, input).
///
/// A freshly built module is bit-level: depth n, one output label bit per
/// section, no input labels. sectionalize_info() turns it into the
/// information-bit-oriented form: depth k, one input bit and section_len[i]
/// output bits per section.
struct TrellisModule {
    struct Edge {
        uint32_t left;
        uint32_t right;
        uint32_t in;   // input label (sectionalized modules only)
        uint32_t out;  // output label bits, bit j = j-th symbol of the section
    };

    int n = 0, k = 0, nu = 0;
    int depth = 0;
    bool info_oriented = false;
    std::vector<int> layer_dim;                // depth+1
    std::vector<int> section_len;              // output bits per section
    std::vector<std::vector<Edge>> sections;   // depth entries

    // Rank profiles and sectionalization data of the bit-level module.
    std::vector<int> b_profile, f_profile;     // b_0..b_n, f_0..f_n
    std::vector<int> info_positions;           // I_info
    std::vector<int> info_section_len;         // n_i per info position

    std::size_t vertex_count(int boundary) const {
        return std::size_t{1} << layer_dim[boundary];
    }
};

/// Extended module: vertices are subspaces of the corresponding vertex space,
/// edges are subspaces of the section edge space, deduplicated per
/// (endpoints, labels). Vertex 0 of every layer is the zero subspace.
struct ExtendedTrellisModule {
    struct Edge {
        int left;
        int right;
        uint32_t in;   // OR of input labels over a basis of the edge subspace
        uint32_t out;  // OR of output labels likewise
        int dim;       // dimension of the edge subspace
    };

    int k = 0, nu = 0;
    int depth = 0;
    std::vector<int> layer_dim;                 // of the underlying vertex spaces
    std::vector<std::vector<Basis>> layers;     // subspace list per boundary
    std::vector<std::vector<Edge>> sections;
    std::vector<int> section_len;
    std::optional<int> prune_alpha;

    /// Index of a subspace within layers[boundary]; the layers are sorted so
    /// lookup is by binary search.
    int vertex_index(int boundary, const Basis& b) const;
};

/// Minimal trellis module from the parity-check matrix (syndrome-former
/// states restricted to the reachable/co-reachable subspaces).
TrellisModule build_minimal_module(const ConvCodeSpec& spec);

/// Information-bit-oriented sectionalization (depth k, input labels assigned).
TrellisModule sectionalize_info(const TrellisModule& t);

ExtendedTrellisModule build_extended_module(const TrellisModule& t_info,
                                            std::optional<int> prune_alpha = std::nullopt);

/// Vertex and edge complexities (sums over the depth boundaries, divided by k).
std::pair<mpq_class, mpq_class> module_complexity(const TrellisModule& m);
std::pair<mpq_class, mpq_class> module_complexity(const ExtendedTrellisModule& m);

void dump_module(std::ostream& os, const TrellisModule& m);
void dump_module(std::ostream& os, const ExtendedTrellisModule& m);

}  // namespace turbobec

#endif
