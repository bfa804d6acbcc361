#include "turbobec/decode.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <limits>
#include <memory>

#include "turbobec/errors.hpp"

namespace turbobec {

namespace {

constexpr long kUnbounded = std::numeric_limits<long>::max() / 4;

enum class RunEnd { Recovered, Stalled, Inconsistent, Budget };

struct Engine {
    const TurboCode& c;
    DecoderState& st;
    bool changed = false;

    int nverts(int depth) const {
        return 1 << c.info_module.layer_dim[depth % c.spec.constituent.k];
    }

    bool consistent(int which, int section, const TrellisModule::Edge& e) const {
        const auto& l2t = which == 0 ? c.lab2turbo_a[section] : c.lab2turbo_b[section];
        for (std::size_t p = 0; p < l2t.size(); ++p) {
            int tp = l2t[p];
            if (tp < 0) continue;  // punctured: no observation
            Sym s = st.est[tp];
            if (s == Sym::Erased) continue;
            if (static_cast<uint8_t>(s) != ((e.out >> p) & 1)) return false;
        }
        return true;
    }

    // One constituent activation: forward pass, backward pass, estimate
    // update. Returns false on an inconsistency (a depth with no legal
    // vertex), which is possible only after a wrong guess.
    bool activate(int which) {
        const int I = c.I, k = c.spec.constituent.k;
        auto& alpha = st.alpha[which];
        auto& beta = st.beta[which];

        for (int j = 1; j <= I; ++j) {
            const auto& sec = c.info_module.sections[(j - 1) % k];
            std::vector<uint8_t> zeta(nverts(j), 0);
            for (const auto& e : sec)
                if (alpha[j - 1][e.left] && !zeta[e.right] && consistent(which, j - 1, e))
                    zeta[e.right] = 1;
            bool anyTrue = false;
            for (int v = 0; v < nverts(j); ++v) {
                uint8_t na = beta[j][v] && zeta[v];
                if (na != alpha[j][v]) changed = true;
                alpha[j][v] = na;
                anyTrue |= na != 0;
            }
            if (!anyTrue) return false;
        }

        for (int j = I - 1; j >= 0; --j) {
            const auto& sec = c.info_module.sections[j % k];
            std::vector<uint8_t> xi(nverts(j), 0);
            for (const auto& e : sec)
                if (beta[j + 1][e.right] && !xi[e.left] && consistent(which, j, e))
                    xi[e.left] = 1;
            bool anyTrue = false;
            for (int v = 0; v < nverts(j); ++v) {
                uint8_t nb = alpha[j][v] && xi[v];
                if (nb != beta[j][v]) changed = true;
                beta[j][v] = nb;
                anyTrue |= nb != 0;
            }
            if (!anyTrue) return false;
        }

        // keep only values consistent with the legal edges
        for (int j = 0; j < I; ++j) {
            const auto& sec = c.info_module.sections[j % k];
            const auto& l2t = which == 0 ? c.lab2turbo_a[j] : c.lab2turbo_b[j];
            uint32_t seen_any = 0;
            uint32_t and_mask = ~0u, or_mask = 0;
            bool first = true;
            for (const auto& e : sec) {
                if (!alpha[j][e.left] || !beta[j + 1][e.right] || !consistent(which, j, e))
                    continue;
                if (first) {
                    and_mask = e.out;
                    or_mask = e.out;
                    first = false;
                } else {
                    and_mask &= e.out;
                    or_mask |= e.out;
                }
                seen_any = 1;
            }
            if (!seen_any) return false;
            for (std::size_t p = 0; p < l2t.size(); ++p) {
                int tp = l2t[p];
                if (tp < 0 || st.est[tp] != Sym::Erased) continue;
                bool bit1 = (and_mask >> p) & 1;  // all legal edges have 1
                bool bit0 = !((or_mask >> p) & 1);  // all legal edges have 0
                if (bit0 || bit1) {
                    st.est[tp] = bit1 ? Sym::One : Sym::Zero;
                    changed = true;
                }
            }
        }
        return true;
    }

    bool recovered() const {
        for (int t = 0; t < c.I; ++t)
            if (st.est[c.sys_turbo_pos[t]] == Sym::Erased) return false;
        return true;
    }

    void complete_estimate() {
        BitVec info(c.K);
        for (int i = 0; i < c.K; ++i) info.set(i, st.est[c.sys_turbo_pos[i]] == Sym::One);
        BitVec cw = c.encode(info);
        for (int p = 0; p < c.N; ++p) {
            Sym s = sym_of_bit(cw.get(p));
            if (st.est[p] != Sym::Erased && st.est[p] != s)
                throw std::logic_error("recovered estimate disagrees with its own re-encoding");
            st.est[p] = s;
        }
    }

    // Runs up to `budget` iterations (a then b per iteration). With
    // stop_on_recovery the run ends as soon as every systematic position is
    // known (sound without guesses); otherwise it runs to the metric/estimate
    // fixed point first, so that a wrong guess surfaces as an inconsistency
    // rather than a bogus recovery.
    std::pair<RunEnd, long> run(long budget, bool stop_on_recovery) {
        for (long iter = 1; iter <= budget; ++iter) {
            changed = false;
            if (!activate(0)) return {RunEnd::Inconsistent, iter};
            if (stop_on_recovery && recovered()) {
                complete_estimate();
                return {RunEnd::Recovered, iter};
            }
            if (!activate(1)) return {RunEnd::Inconsistent, iter};
            if (stop_on_recovery && recovered()) {
                complete_estimate();
                return {RunEnd::Recovered, iter};
            }
            if (!changed) {
                if (recovered()) {
                    complete_estimate();
                    return {RunEnd::Recovered, iter};
                }
                return {RunEnd::Stalled, iter};
            }
        }
        return {RunEnd::Budget, budget};
    }
};

DecodeOutcome outcome_of(const DecoderState& st, DecodeStatus status, long T,
                         std::vector<std::pair<int, uint8_t>> guesses = {}) {
    DecodeOutcome out;
    out.status = status;
    out.estimate = st.est;
    out.residual = st.est.erased_positions();
    out.iterations = T;
    out.guesses = std::move(guesses);
    return out;
}

}  // namespace

int DecoderState::gamma(int which, int depth) const {
    int g = 0;
    for (std::size_t v = 0; v < alpha[which][depth].size(); ++v)
        g += alpha[which][depth][v] && beta[which][depth][v];
    return g;
}

DecoderState make_decoder_state(const TurboCode& code, const ReceivedWord& received) {
    if (static_cast<int>(received.size()) != code.N)
        throw DomainError("received word length mismatch");
    DecoderState st;
    st.code = &code;
    st.est = received;
    const int I = code.I, k = code.spec.constituent.k;
    for (int x = 0; x < 2; ++x) {
        st.alpha[x].resize(I + 1);
        st.beta[x].resize(I + 1);
        for (int d = 0; d <= I; ++d) {
            int nv = 1 << code.info_module.layer_dim[d % k];
            st.alpha[x][d].assign(nv, 1);
            st.beta[x][d].assign(nv, 1);
        }
        for (int v = 1; v < (1 << code.nu); ++v) {
            st.alpha[x][0][v] = 0;
            st.beta[x][I][v] = 0;
        }
    }
    return st;
}

StepResult run_decoder(DecoderState& st, long l_max) {
    Engine eng{*st.code, st};
    auto [end, iters] = eng.run(l_max < 0 ? kUnbounded : l_max, false);
    st.T += iters;
    switch (end) {
        case RunEnd::Recovered: return StepResult::Recovered;
        case RunEnd::Stalled: return StepResult::Stalled;
        case RunEnd::Inconsistent: return StepResult::Inconsistent;
        case RunEnd::Budget: return StepResult::Budget;
    }
    throw std::logic_error("unreachable");
}

DecodeOutcome turbo_decode(const ReceivedWord& received, const TurboCode& code, long l_max) {
    DecoderState st = make_decoder_state(code, received);
    Engine eng{code, st};
    long budget = l_max < 0 ? kUnbounded : l_max;
    auto [end, iters] = eng.run(budget, true);
    st.T = iters;
    switch (end) {
        case RunEnd::Recovered: return outcome_of(st, DecodeStatus::Recovered, iters);
        case RunEnd::Stalled: return outcome_of(st, DecodeStatus::Stalled, iters);
        case RunEnd::Budget: return outcome_of(st, DecodeStatus::BudgetExhausted, iters);
        case RunEnd::Inconsistent:
            throw ChannelContractViolated("basic decoding reached an inconsistency");
    }
    throw std::logic_error("unreachable");
}

int select_bit_position(const DecoderState& state, const TurboCode& code) {
    const int I = code.I;
    struct Scan {
        long l = 0;
        int wf = -1, f = -1;
        int wr = -1, r = -1;
    } scan[2];
    for (int x = 0; x < 2; ++x) {
        std::vector<int> g(I + 1);
        for (int j = 0; j <= I; ++j) g[j] = state.gamma(x, j);
        for (int j = 0; j < I; ++j)
            if (g[j] == 1 && g[j + 1] == 2) ++scan[x].l;
        for (int f = 1; f <= I; ++f) {
            if (!(g[f - 1] == 1 && g[f] == 2)) continue;
            int m = 0;
            while (f + m <= I && g[f + m] == 2) ++m;
            if (m - 1 > scan[x].wf) {
                scan[x].wf = m - 1;
                scan[x].f = f;
            }
        }
        for (int r = 0; r + 1 <= I; ++r) {
            if (!(g[r + 1] == 1 && g[r] == 2)) continue;
            int m = 0;
            while (r - m >= 0 && g[r - m] == 2) ++m;
            if (m - 1 > scan[x].wr) {
                scan[x].wr = m - 1;
                scan[x].r = r;
            }
        }
    }
    auto w = [&](int x) { return std::max(scan[x].wf, scan[x].wr); };
    int x = (scan[0].l > scan[1].l || (scan[0].l == scan[1].l && w(0) >= w(1))) ? 0 : 1;
    if (scan[x].wf < 0 && scan[x].wr < 0)
        throw SelectionUnavailable("no 1<->2 legal-vertex transition in the chosen constituent");
    int section = scan[x].wf >= scan[x].wr ? scan[x].f - 1 : scan[x].r;
    return x == 0 ? section : code.spec.interleaver[section];
}

DecodeOutcome improved_decode(const ReceivedWord& received, const TurboCode& code,
                              const ImprovedOptions& opt) {
    const long l_max = opt.l_max < 0 ? kUnbounded : opt.l_max;
    long T = 0, J = 0;

    // step 2: plain turbo decoding
    DecoderState st = make_decoder_state(code, received);
    Engine eng{code, st};
    auto [end, iters] = eng.run(l_max, true);
    T = iters;
    if (end == RunEnd::Recovered) return outcome_of(st, DecodeStatus::Recovered, T);
    if (end == RunEnd::Budget || T >= l_max)
        return outcome_of(st, DecodeStatus::BudgetExhausted, T);
    if (end == RunEnd::Inconsistent)
        throw ChannelContractViolated("turbo decoding reached an inconsistency without guesses");

    // stalled: the guess-free estimate is safe whatever happens later
    const ReceivedWord safe = st.est;

    struct Node {
        std::vector<std::pair<int, uint8_t>> guesses;
        std::shared_ptr<const ReceivedWord> snapshot;
    };
    std::deque<Node> list;
    {
        int v = select_bit_position(st, code);
        auto snap = std::make_shared<const ReceivedWord>(st.est);
        list.push_back({{{v, 0}}, snap});
        list.push_back({{{v, 1}}, snap});
    }

    std::optional<BitVec> first_codeword;
    std::vector<std::pair<int, uint8_t>> first_guesses;

    while (!list.empty()) {
        ++J;
        Node node;
        if (opt.discipline == GuessQueue::Lifo) {
            node = std::move(list.back());
            list.pop_back();
        } else {
            node = std::move(list.front());
            list.pop_front();
        }

        DecoderState bst = make_decoder_state(code, *node.snapshot);
        auto [pos, val] = node.guesses.back();
        int tp = code.sys_turbo_pos[pos];
        assert(bst.est[tp] == Sym::Erased);
        bst.est[tp] = val ? Sym::One : Sym::Zero;

        Engine beng{code, bst};
        auto [bend, biter] = beng.run(l_max - T, false);
        T += biter;
        bst.T = T;
        bst.J = J;

        if (bend == RunEnd::Inconsistent) continue;
        if (bend == RunEnd::Budget) {
            DecodeOutcome out;
            out.status = DecodeStatus::BudgetExhausted;
            out.estimate = safe;
            out.residual = safe.erased_positions();
            out.iterations = T;
            out.guesses = node.guesses;
            return out;
        }
        if (bend == RunEnd::Recovered) {
            BitVec cw(code.N);
            for (int p = 0; p < code.N; ++p) cw.set(p, bst.est[p] == Sym::One);
            if (!opt.ambiguity_check)
                return outcome_of(bst, DecodeStatus::Recovered, T, node.guesses);
            if (!first_codeword) {
                first_codeword = cw;
                first_guesses = node.guesses;
                continue;
            }
            if (!(cw == *first_codeword)) {
                DecodeOutcome out;
                out.status = DecodeStatus::Ambiguous;
                out.estimate = safe;
                out.residual = safe.erased_positions();
                out.iterations = T;
                return out;
            }
            continue;
        }
        // stalled again
        if (T >= l_max) {
            DecodeOutcome out;
            out.status = DecodeStatus::BudgetExhausted;
            out.estimate = safe;
            out.residual = safe.erased_positions();
            out.iterations = T;
            out.guesses = node.guesses;
            return out;
        }
        int v = select_bit_position(bst, code);
        auto snap = std::make_shared<const ReceivedWord>(bst.est);
        auto g0 = node.guesses;
        g0.emplace_back(v, 0);
        auto g1 = node.guesses;
        g1.emplace_back(v, 1);
        list.push_back({std::move(g0), snap});
        list.push_back({std::move(g1), snap});
    }

    if (!first_codeword)
        throw std::logic_error("improved decoding exhausted the guess tree without recovering");
    DecodeOutcome out;
    out.status = DecodeStatus::Recovered;
    out.estimate.symbols.resize(code.N);
    for (int p = 0; p < code.N; ++p) out.estimate[p] = sym_of_bit(first_codeword->get(p));
    out.iterations = T;
    out.guesses = first_guesses;
    return out;
}

DecodeOutcome ml_decode_oracle(const ReceivedWord& received, const TurboCode& code) {
    if (static_cast<int>(received.size()) != code.N)
        throw DomainError("received word length mismatch");
    const BinaryMatrix& G = code.generator();
    std::vector<int> known;
    for (int p = 0; p < code.N; ++p)
        if (received[p] != Sym::Erased) known.push_back(p);

    BinaryMatrix M(code.K, known.size());
    BitVec b(known.size());
    for (std::size_t j = 0; j < known.size(); ++j) {
        for (int i = 0; i < code.K; ++i) M.set(i, j, G.get(i, known[j]));
        b.set(j, received[known[j]] == Sym::One);
    }
    auto sol = solve_left(M, b);
    if (!sol) throw ChannelContractViolated("received word fits no codeword");

    DecodeOutcome out;
    out.iterations = 0;
    if (sol->kernel.empty()) {
        out.status = DecodeStatus::Recovered;
        BitVec cw = G.mul_left(sol->particular);
        out.estimate.symbols.resize(code.N);
        for (int p = 0; p < code.N; ++p) out.estimate[p] = sym_of_bit(cw.get(p));
        return out;
    }
    out.status = DecodeStatus::Ambiguous;
    BitVec undecided(code.N);
    for (const auto& h : sol->kernel) {
        BitVec img = G.mul_left(h);
        for (int p = 0; p < code.N; ++p)
            if (img.get(p)) undecided.set(p, true);
    }
    BitVec cw = G.mul_left(sol->particular);
    out.estimate.symbols.resize(code.N);
    for (int p = 0; p < code.N; ++p) {
        if (undecided.get(p)) {
            out.estimate[p] = Sym::Erased;
            out.residual.push_back(p);
        } else {
            out.estimate[p] = sym_of_bit(cw.get(p));
        }
    }
    return out;
}

}  // namespace turbobec
