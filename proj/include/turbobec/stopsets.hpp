#ifndef TURBOBEC_STOPSETS_HPP
#define TURBOBEC_STOPSETS_HPP

#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

#include "turbobec/turbo.hpp"

namespace turbobec {

struct StoppingSet {
    std::vector<int> positions;        // turbo codeword positions, sorted
    std::vector<int> witness_a, witness_b;  // constituent supports chi(C̄_x)
    int dim_a = 0, dim_b = 0;          // dimensions of the maximal witnesses
    int size() const { return static_cast<int>(positions.size()); }
    bool operator==(const StoppingSet& o) const { return positions == o.positions; }
    bool operator<(const StoppingSet& o) const {
        if (positions.size() != o.positions.size()) return positions.size() < o.positions.size();
        return positions < o.positions;
    }
};

struct MaximalSubcode {
    std::vector<int> support;
    int dim = 0;
    std::vector<BitVec> basis;  // codewords spanning the subcode
};

/// Largest subcode of the row space of gen supported within X.
MaximalSubcode maximal_supported_subcode(const BinaryMatrix& gen, const std::vector<int>& X);

bool is_turbo_stopping_set(const TurboCode& code, const std::vector<int>& S);

/// All turbo stopping sets of size <= tau by subset scan; refuses N > 22.
std::vector<StoppingSet> brute_force_stopping_sets(const TurboCode& code, int tau);

/// True iff the indicator vector of S is a turbo codeword.
bool is_codeword_support(const TurboCode& code, const std::vector<int>& S);

/// True iff both maximal witness subcodes contain pairwise support-disjoint
/// codewords covering the witness support exactly; equivalent to S being a
/// codeword support.
bool witness_decomposes(const TurboCode& code, const StoppingSet& s);

// ---------------------------------------------------------------------------
// extended-trellis search machinery

constexpr int kInfWeight = std::numeric_limits<int>::max() / 4;

/// Minimum masked label weight from every (depth, subspace-vertex) to the
/// zero subspace at depth I; kInfWeight marks unreachable vertices.
/// weight_mask[g] selects which label bits of section g are counted.
std::vector<std::vector<int>> tail_weight_table(const ExtendedTrellisModule& ext, int I,
                                                const std::vector<uint32_t>& weight_mask);

/// Minimum masked weight over zero-to-zero paths of length I whose input
/// labels honor the scattered (time, bit) constraints.
int constrained_min_weight(const ExtendedTrellisModule& ext, int I,
                           const std::vector<std::pair<int, int>>& constraints,
                           const std::vector<uint32_t>& weight_mask);

struct GpbResult {
    std::vector<StoppingSet> sets;  // sorted, duplicate free
    bool exact = true;              // false when prune_alpha may lose sets
    long nodes_expanded = 0;
};

/// Branch-and-bound enumeration of all turbo stopping sets of size <= tau
/// over the constituent extended trellises. The default bound adds the
/// constrained second-constituent parity weight; cheap_bound skips that DP
/// per node (still a valid lower bound, more expansions, same output).
GpbResult gpb_enumerate(const TurboCode& code, int tau,
                        std::optional<int> prune_alpha = std::nullopt,
                        bool cheap_bound = false);

/// Versioned structured-text report with a size histogram.
void write_stopset_report(std::ostream& os, const TurboCode& code,
                          const std::vector<StoppingSet>& sets, int tau, bool exact);

}  // namespace turbobec

#endif
