#ifndef TURBOBEC_TURBO_HPP
#define TURBOBEC_TURBO_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "turbobec/bits.hpp"
#include "turbobec/conv.hpp"
#include "turbobec/trellis.hpp"

namespace turbobec {

/// One position of the turbo codeword: a systematic bit (index = input
/// position) or a parity slot of one constituent (index = position within
/// that constituent's unpunctured parity stream).
struct MuxToken {
    enum Kind { Sys, ParA, ParB } kind;
    int index;
    bool operator==(const MuxToken&) const = default;
};

struct TurboCodeSpec {
    ConvCodeSpec constituent;
    int K = 0;
    /// Read-address form: the second constituent encoder is fed
    /// u[interleaver[t]] at time t. (The stopping-set condition's permutation
    /// is the inverse map; see TurboCode::landing.)
    std::vector<int> interleaver;
    /// Keep-masks over the unpunctured constituent codeword, length
    /// (I/k)*n; empty means keep everything. Systematic slots must be kept.
    std::vector<uint8_t> puncture_a, puncture_b;
    /// Empty = default order: per section, the systematic bit followed by the
    /// surviving parity slots of constituent a, then of constituent b.
    std::vector<MuxToken> multiplex;
};

struct IndexMaps {
    int N = 0, Na = 0, Nb = 0;
    static constexpr int star = -1;
    std::vector<int> mu_a, mu_b;    // turbo position -> constituent index or star
    std::vector<int> psi_a, psi_b;  // constituent index -> (interleaved) systematic index or star
};

class TurboCode {
public:
    TurboCodeSpec spec;
    int I = 0, K = 0, N = 0, nu = 0;
    int delta = 0;  // unpunctured constituent length (I/k)*n

    TrellisModule info_module;
    ExtendedTrellisModule ext_module;

    IndexMaps maps;
    std::vector<int> landing;        // Def-1 pi: input index -> encoder-b time
    std::vector<int> sys_turbo_pos;  // input index -> turbo position of the systematic bit

    struct Slot {
        int section;     // 0..I-1
        int pos;         // label offset within the section; 0 = systematic
        bool kept;
        int punct_idx;   // index in the punctured constituent codeword, -1 if dropped
        int parity_idx;  // index in the unpunctured parity stream, -1 for systematic
        int turbo_pos;   // position in the turbo codeword, -1 if absent
    };
    std::vector<Slot> slots_a, slots_b;
    /// label position -> turbo position (or -1), per constituent and section.
    std::vector<std::vector<int>> lab2turbo_a, lab2turbo_b;

    /// Input block driving both encoders to the zero state: info bits followed
    /// by the 2*nu solved tail bits.
    BitVec dual_terminate(const BitVec& info) const;
    BitVec encode(const BitVec& info) const;

    /// Unpunctured constituent labels for a full input block (x for a, its
    /// interleaved reading for b happens inside when which == 1).
    BitVec constituent_labels(int which, const BitVec& input_block) const;

    /// Punctured constituent codeword of the given constituent for a full
    /// input block of encoder a.
    BitVec constituent_word(int which, const BitVec& input_block) const;

    /// Generator matrix of the turbo code (K x N).
    const BinaryMatrix& generator() const { return gen_; }
    /// Generator matrix of the punctured, terminated constituent code
    /// ((I - nu) x N_x).
    const BinaryMatrix& constituent_generator(int which) const {
        return which == 0 ? gen_a_ : gen_b_;
    }

    int num_parity_slots() const {
        return (I / spec.constituent.k) * (spec.constituent.n - spec.constituent.k);
    }

    // encoding walk internals, exposed for the decoder and enumerators
    uint32_t walk_next(int section, uint32_t state, uint32_t in) const;
    uint32_t walk_out(int section, uint32_t state, uint32_t in) const;

private:
    friend TurboCode make_turbo_code(const TurboCodeSpec& spec);
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> walk_;  // per module section
    std::vector<Word> response_;  // final-state response of a unit input per position
    BinaryMatrix tail_inv_;       // solves the 2*nu-bit dual-termination system
    BinaryMatrix gen_, gen_a_, gen_b_;
};

TurboCode make_turbo_code(const TurboCodeSpec& spec);

/// Structured key-value code spec file; see README for the format.
TurboCodeSpec read_code_spec(std::istream& is);
void write_code_spec(std::ostream& os, const TurboCodeSpec& spec);

/// Whitespace-separated permutation, one block.
std::vector<int> read_interleaver(std::istream& is);
void write_interleaver(std::ostream& os, const std::vector<int>& perm);

/// Dithered relative-prime interleaver (read-address form).
std::vector<int> drp_interleaver(int length, int start, int prime,
                                 const std::vector<int>& read_dither,
                                 const std::vector<int>& write_dither);
std::vector<int> random_interleaver(int length, uint64_t seed);

}  // namespace turbobec

#endif
