#ifndef TURBOBEC_SIM_HPP
#define TURBOBEC_SIM_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "turbobec/decode.hpp"

namespace turbobec {

enum class DecoderKind { Basic, Improved, MlOracle };

struct SimConfig {
    std::vector<double> epsilons;
    long frames = 1000;
    long l_max = -1;  // improved-decoder budget, < 0 unbounded
    DecoderKind decoder = DecoderKind::Improved;
    GuessQueue discipline = GuessQueue::Lifo;
    uint64_t seed = 1;
    int threads = 0;  // 0: TURBOBEC_THREADS or 1
};

struct SimRecord {
    double epsilon = 0;
    long frames = 0;
    long frame_errors = 0;
    long ambiguous = 0;
    double fer = 0;
    double mean_iterations = 0;
    double stderr_fer = 0;  // binomial standard error of the FER estimate
    double wall_seconds = 0;
};

/// Monte-Carlo frame error rates. A frame counts as an error unless the
/// decoder recovered exactly the transmitted codeword; Ambiguous outcomes are
/// errors. Deterministic for a given config and seed, whatever the thread
/// count.
std::vector<SimRecord> simulate_fer(const TurboCode& code, const SimConfig& cfg);

/// CSV schema: epsilon,frames,frame_errors,fer,mean_iterations,ambiguous,stderr
void write_sim_csv(std::ostream& os, const std::vector<SimRecord>& records);

}  // namespace turbobec

#endif
