#ifndef TURBOBEC_DECODE_HPP
#define TURBOBEC_DECODE_HPP

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "turbobec/bec.hpp"
#include "turbobec/turbo.hpp"

namespace turbobec {

enum class DecodeStatus { Recovered, Stalled, Ambiguous, BudgetExhausted };

struct DecodeOutcome {
    DecodeStatus status;
    ReceivedWord estimate;
    std::vector<int> residual;  // still-erased turbo positions
    long iterations = 0;        // the T counter
    /// Guessed positions in input-sequence indices with the guessed values
    /// along the branch the decoder ended on.
    std::vector<std::pair<int, uint8_t>> guesses;
};

/// Boolean forward/backward state of both constituent decoders. alpha/beta
/// are indexed [constituent][depth][vertex]; est is the running estimate of
/// the turbo codeword.
struct DecoderState {
    const TurboCode* code = nullptr;
    std::array<std::vector<std::vector<uint8_t>>, 2> alpha, beta;
    ReceivedWord est;
    long T = 0;
    long J = 0;

    /// Number of legal vertices (alpha and beta both true) at a depth.
    int gamma(int which, int depth) const;
};

DecoderState make_decoder_state(const TurboCode& code, const ReceivedWord& received);

enum class StepResult { Recovered, Stalled, Inconsistent, Budget };

/// Drive an existing decoder state forward by up to l_max further iterations;
/// the state keeps its metrics and estimate across calls, so repeated
/// l_max = 1 calls step iteration by iteration. Unlike turbo_decode this
/// reports inconsistencies (which can only follow preset wrong bits) instead
/// of throwing.
StepResult run_decoder(DecoderState& st, long l_max);

/// Basic iterative decoding: activate constituent a then b per iteration,
/// until the systematic bits are known, the metrics and estimate reach a
/// fixed point, or l_max iterations have run. On recovery the estimate is
/// completed to the full re-encoded codeword.
DecodeOutcome turbo_decode(const ReceivedWord& received, const TurboCode& code, long l_max);

/// The next position to guess, as an input-sequence index; requires a stalled
/// state. Throws SelectionUnavailable when no constituent exposes a 1<->2
/// legal-vertex transition.
int select_bit_position(const DecoderState& state, const TurboCode& code);

enum class GuessQueue { Lifo, Fifo };

struct ImprovedOptions {
    long l_max = -1;  // < 0 means unbounded
    GuessQueue discipline = GuessQueue::Lifo;
    /// When true (default) the search continues after the first recovered
    /// branch to certify uniqueness; patterns covering a nonzero codeword
    /// support come back Ambiguous and no unverified bit is ever emitted.
    /// When false the first recovered branch is decided immediately, which is
    /// the literal step-2/step-3 termination rule.
    bool ambiguity_check = true;
};

DecodeOutcome improved_decode(const ReceivedWord& received, const TurboCode& code,
                              const ImprovedOptions& opt = {});

/// Reference maximum-likelihood erasure decoder: solves the generator-matrix
/// system restricted to the known positions.
DecodeOutcome ml_decode_oracle(const ReceivedWord& received, const TurboCode& code);

}  // namespace turbobec

#endif
