#include "turbobec/sim.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <thread>

namespace turbobec {

namespace {

uint64_t frame_seed(uint64_t seed, std::size_t eps_index, long frame) {
    uint64_t s = seed;
    s ^= (eps_index + 1) * 0x9e3779b97f4a7c15ull;
    s ^= (static_cast<uint64_t>(frame) + 1) * 0xbf58476d1ce4e5b9ull;
    return s;
}

int thread_count(const SimConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    if (const char* env = std::getenv("TURBOBEC_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

}  // namespace

std::vector<SimRecord> simulate_fer(const TurboCode& code, const SimConfig& cfg) {
    if (cfg.frames < 1) throw DomainError("frames must be >= 1");
    for (double e : cfg.epsilons)
        if (e < 0.0 || e > 1.0) throw DomainError("epsilon must be in [0,1]");

    std::vector<SimRecord> out;
    const int nthreads = thread_count(cfg);
    for (std::size_t ei = 0; ei < cfg.epsilons.size(); ++ei) {
        const double eps = cfg.epsilons[ei];
        auto t0 = std::chrono::steady_clock::now();

        struct Tally {
            long errors = 0, ambiguous = 0;
            long long iterations = 0;
        };
        std::vector<Tally> tallies(nthreads);
        auto worker = [&](int tid) {
            Tally& tally = tallies[tid];
            for (long f = tid; f < cfg.frames; f += nthreads) {
                BecRng rng(frame_seed(cfg.seed, ei, f));
                BitVec info(code.K);
                for (int i = 0; i < code.K; ++i) info.set(i, rng.next() & 1);
                BitVec cw = code.encode(info);
                ReceivedWord r;
                r.symbols.resize(code.N);
                for (int p = 0; p < code.N; ++p)
                    r.symbols[p] = rng.uniform01() < eps ? Sym::Erased : sym_of_bit(cw.get(p));

                DecodeOutcome outc;
                switch (cfg.decoder) {
                    case DecoderKind::Basic:
                        outc = turbo_decode(r, code, cfg.l_max);
                        break;
                    case DecoderKind::Improved: {
                        ImprovedOptions opt;
                        opt.l_max = cfg.l_max;
                        opt.discipline = cfg.discipline;
                        outc = improved_decode(r, code, opt);
                        break;
                    }
                    case DecoderKind::MlOracle:
                        outc = ml_decode_oracle(r, code);
                        break;
                }
                bool correct = outc.status == DecodeStatus::Recovered;
                if (correct)
                    for (int p = 0; p < code.N && correct; ++p)
                        correct = outc.estimate[p] == sym_of_bit(cw.get(p));
                tally.errors += !correct;
                tally.ambiguous += outc.status == DecodeStatus::Ambiguous;
                tally.iterations += outc.iterations;
            }
        };
        if (nthreads == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
            for (auto& t : pool) t.join();
        }

        SimRecord rec;
        rec.epsilon = eps;
        rec.frames = cfg.frames;
        for (const auto& t : tallies) {
            rec.frame_errors += t.errors;
            rec.ambiguous += t.ambiguous;
            rec.mean_iterations += static_cast<double>(t.iterations);
        }
        rec.fer = static_cast<double>(rec.frame_errors) / static_cast<double>(rec.frames);
        rec.mean_iterations /= static_cast<double>(rec.frames);
        rec.stderr_fer =
            std::sqrt(rec.fer * (1.0 - rec.fer) / static_cast<double>(rec.frames));
        rec.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(rec);
    }
    return out;
}

void write_sim_csv(std::ostream& os, const std::vector<SimRecord>& records) {
    os << "epsilon,frames,frame_errors,fer,mean_iterations,ambiguous,stderr\n";
    char buf[256];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof buf, "%.10g,%ld,%ld,%.10g,%.10g,%ld,%.10g\n", r.epsilon,
                      r.frames, r.frame_errors, r.fer, r.mean_iterations, r.ambiguous,
                      r.stderr_fer);
        os << buf;
    }
}

}  // namespace turbobec
