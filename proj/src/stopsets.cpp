#include "turbobec/stopsets.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <ostream>
#include <queue>
#include <set>

namespace turbobec {

MaximalSubcode maximal_supported_subcode(const BinaryMatrix& gen, const std::vector<int>& X) {
    std::vector<char> inX(gen.cols(), 0);
    for (int p : X) inX.at(p) = 1;
    std::vector<int> comp;
    for (std::size_t p = 0; p < gen.cols(); ++p)
        if (!inX[p]) comp.push_back(static_cast<int>(p));

    BinaryMatrix restr(gen.rows(), comp.size());
    for (std::size_t i = 0; i < gen.rows(); ++i)
        for (std::size_t j = 0; j < comp.size(); ++j)
            restr.set(i, j, gen.get(i, comp[j]));

    MaximalSubcode out;
    BitVec sup(gen.cols());
    for (const BitVec& m : left_kernel(restr)) {
        BitVec cw = gen.mul_left(m);
        sup |= cw;
        out.basis.push_back(std::move(cw));
    }
    out.dim = static_cast<int>(out.basis.size());
    for (std::size_t p = 0; p < gen.cols(); ++p)
        if (sup.get(p)) out.support.push_back(static_cast<int>(p));
    return out;
}

namespace {

std::vector<int> project(const std::vector<int>& S, const std::vector<int>& mu) {
    std::vector<int> out;
    for (int j : S)
        if (mu.at(j) != IndexMaps::star) out.push_back(mu[j]);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> systematic_image(const std::vector<int>& X, const std::vector<int>& psi,
                                  const std::vector<int>* landing) {
    std::vector<int> out;
    for (int i : X)
        if (psi[i] != IndexMaps::star) out.push_back(landing ? (*landing)[psi[i]] : psi[i]);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

bool is_turbo_stopping_set(const TurboCode& code, const std::vector<int>& S) {
    std::vector<int> Xa = project(S, code.maps.mu_a);
    std::vector<int> Xb = project(S, code.maps.mu_b);
    MaximalSubcode ma = maximal_supported_subcode(code.constituent_generator(0), Xa);
    if (ma.dim == 0 || ma.support != Xa) return false;
    MaximalSubcode mb = maximal_supported_subcode(code.constituent_generator(1), Xb);
    if (mb.dim == 0 || mb.support != Xb) return false;
    // pi(psi_a(chi_a)) == psi_b(chi_b); automatic given the two support checks
    return systematic_image(Xa, code.maps.psi_a, &code.landing) ==
           systematic_image(Xb, code.maps.psi_b, nullptr);
}

std::vector<StoppingSet> brute_force_stopping_sets(const TurboCode& code, int tau) {
    if (code.N > 22) throw CapacityError("brute force supports N <= 22 only");
    std::vector<StoppingSet> out;
    if (tau <= 0) return out;
    for (uint32_t mask = 1; mask < (uint32_t{1} << code.N); ++mask) {
        if (std::popcount(mask) > static_cast<unsigned>(tau)) continue;
        std::vector<int> S;
        for (int p = 0; p < code.N; ++p)
            if ((mask >> p) & 1) S.push_back(p);
        std::vector<int> Xa = project(S, code.maps.mu_a);
        std::vector<int> Xb = project(S, code.maps.mu_b);
        MaximalSubcode ma = maximal_supported_subcode(code.constituent_generator(0), Xa);
        if (ma.dim == 0 || ma.support != Xa) continue;
        MaximalSubcode mb = maximal_supported_subcode(code.constituent_generator(1), Xb);
        if (mb.dim == 0 || mb.support != Xb) continue;
        StoppingSet s;
        s.positions = std::move(S);
        s.witness_a = std::move(ma.support);
        s.witness_b = std::move(mb.support);
        s.dim_a = ma.dim;
        s.dim_b = mb.dim;
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_codeword_support(const TurboCode& code, const std::vector<int>& S) {
    BitVec indicator(code.N);
    for (int p : S) indicator.set(p, true);
    return solve_left(code.generator(), indicator).has_value();
}

namespace {

bool decomposes(const MaximalSubcode& m, std::size_t cols) {
    std::vector<BitVec> words;
    for (uint32_t msk = 1; msk < (uint32_t{1} << m.dim); ++msk) {
        BitVec w(cols);
        for (int i = 0; i < m.dim; ++i)
            if ((msk >> i) & 1) w ^= m.basis[i];
        words.push_back(std::move(w));
    }
    BitVec target(cols);
    for (int p : m.support) target.set(p, true);
    std::function<bool(const BitVec&, std::size_t)> rec = [&](const BitVec& covered,
                                                              std::size_t from) -> bool {
        if (covered == target) return true;
        for (std::size_t i = from; i < words.size(); ++i) {
            if (!covered.disjoint(words[i])) continue;
            BitVec next = covered;
            next |= words[i];
            if (rec(next, i + 1)) return true;
        }
        return false;
    };
    return rec(BitVec(cols), 0);
}

}  // namespace

bool witness_decomposes(const TurboCode& code, const StoppingSet& s) {
    MaximalSubcode ma = maximal_supported_subcode(code.constituent_generator(0), s.witness_a);
    MaximalSubcode mb = maximal_supported_subcode(code.constituent_generator(1), s.witness_b);
    return decomposes(ma, code.maps.Na) && decomposes(mb, code.maps.Nb);
}

// ---------------------------------------------------------------------------
// extended-trellis machinery

namespace {

int layer_index(const ExtendedTrellisModule& ext, int I, int depth) {
    return depth == I ? ext.k : depth % ext.k;
}

std::vector<std::vector<std::vector<int>>> adjacency(const ExtendedTrellisModule& ext) {
    std::vector<std::vector<std::vector<int>>> adj(ext.depth);
    for (int s = 0; s < ext.depth; ++s) {
        adj[s].resize(ext.layers[s].size());
        for (std::size_t e = 0; e < ext.sections[s].size(); ++e)
            adj[s][ext.sections[s][e].left].push_back(static_cast<int>(e));
    }
    return adj;
}

}  // namespace

std::vector<std::vector<int>> tail_weight_table(const ExtendedTrellisModule& ext, int I,
                                                const std::vector<uint32_t>& weight_mask) {
    std::vector<std::vector<int>> w(I + 1);
    for (int d = 0; d <= I; ++d)
        w[d].assign(ext.layers[layer_index(ext, I, d)].size(), kInfWeight);
    w[I][0] = 0;
    for (int d = I - 1; d >= 0; --d) {
        int s = d % ext.k;
        for (const auto& e : ext.sections[s]) {
            int tail = w[d + 1][e.right];
            if (tail >= kInfWeight) continue;
            int cand = tail + std::popcount(e.out & weight_mask[d]);
            w[d][e.left] = std::min(w[d][e.left], cand);
        }
    }
    return w;
}

int constrained_min_weight(const ExtendedTrellisModule& ext, int I,
                           const std::vector<std::pair<int, int>>& constraints,
                           const std::vector<uint32_t>& weight_mask) {
    std::vector<int> want(I, -1);
    for (auto [t, bit] : constraints) want.at(t) = bit;
    std::vector<int> cur(ext.layers[0].size(), kInfWeight);
    cur[0] = 0;
    for (int d = 0; d < I; ++d) {
        int s = d % ext.k;
        std::vector<int> next(ext.layers[layer_index(ext, I, d + 1)].size(), kInfWeight);
        for (const auto& e : ext.sections[s]) {
            if (cur[e.left] >= kInfWeight) continue;
            if (want[d] >= 0 && static_cast<int>(e.in) != want[d]) continue;
            int cand = cur[e.left] + std::popcount(e.out & weight_mask[d]);
            next[e.right] = std::min(next[e.right], cand);
        }
        cur = std::move(next);
    }
    return cur[0];
}

namespace {

struct GpbContext {
    const TurboCode& code;
    const ExtendedTrellisModule& ext;
    int I;
    std::vector<uint32_t> mask_a_full;    // kept label bits, constituent a
    std::vector<uint32_t> mask_a_par;     // kept parity bits, constituent a
    std::vector<uint32_t> mask_b_parity;  // kept parity bits, constituent b
    std::vector<std::vector<std::vector<int>>> adj;
    std::vector<std::vector<int>> tail_a, tail_b;

    /// Distinct kept-parity supports (as turbo positions) over zero-to-zero
    /// paths whose input labels equal the pinned indicator; the path weight
    /// bounded by budget uses the constituent's weight mask.
    void paths(int which, const std::vector<uint8_t>& bits, int budget,
               std::set<std::vector<int>>& out) const {
        if (budget < 0) return;
        const auto& l2t = which == 0 ? code.lab2turbo_a : code.lab2turbo_b;
        const auto& tail = which == 0 ? tail_a : tail_b;
        const auto& wmask = which == 0 ? mask_a_full : mask_b_parity;
        const auto& pmask = which == 0 ? mask_a_par : mask_b_parity;
        std::vector<int> acc;
        std::function<void(int, int, int)> rec = [&](int d, int v, int weight) {
            if (tail[d][v] >= kInfWeight || weight + tail[d][v] > budget) return;
            if (d == I) {
                std::vector<int> s = acc;
                std::sort(s.begin(), s.end());
                out.insert(std::move(s));
                return;
            }
            int in = which == 0 ? bits[d] : bits[code.spec.interleaver[d]];
            for (int ei : adj[d % ext.k][v]) {
                const auto& e = ext.sections[d % ext.k][ei];
                if (static_cast<int>(e.in) != in) continue;
                int extra = std::popcount(e.out & wmask[d]);
                uint32_t add = e.out & pmask[d];
                std::size_t mark = acc.size();
                for (int b = 0; b < ext.section_len[d % ext.k]; ++b)
                    if ((add >> b) & 1) acc.push_back(l2t[d][b]);
                rec(d + 1, e.right, weight + extra);
                acc.resize(mark);
            }
        };
        rec(0, 0, 0);
    }
};

}  // namespace

GpbResult gpb_enumerate(const TurboCode& code, int tau, std::optional<int> prune_alpha,
                        bool cheap_bound) {
    GpbResult result;
    result.exact = !prune_alpha.has_value();
    if (tau <= 0) return result;

    ExtendedTrellisModule pruned;
    const ExtendedTrellisModule* ext = &code.ext_module;
    if (prune_alpha) {
        pruned = build_extended_module(code.info_module, prune_alpha);
        ext = &pruned;
    }

    const int I = code.I;
    GpbContext ctx{code, *ext, I, {}, {}, {}, adjacency(*ext), {}, {}};
    {
        int at = 0;
        for (int g = 0; g < I; ++g) {
            int len = code.info_module.section_len[g % code.spec.constituent.k];
            uint32_t ma = 0, map_ = 0, mb = 0;
            for (int p = 0; p < len; ++p) {
                if (code.slots_a[at + p].kept) {
                    ma |= uint32_t{1} << p;
                    if (p > 0) map_ |= uint32_t{1} << p;
                }
                if (code.slots_b[at + p].kept && p > 0) mb |= uint32_t{1} << p;
            }
            ctx.mask_a_full.push_back(ma);
            ctx.mask_a_par.push_back(map_);
            ctx.mask_b_parity.push_back(mb);
            at += len;
        }
    }
    ctx.tail_a = tail_weight_table(*ext, I, ctx.mask_a_full);
    ctx.tail_b = tail_weight_table(*ext, I, ctx.mask_b_parity);

    struct Node {
        int len;
        std::vector<uint8_t> bits;
        std::vector<std::pair<int, int>> frontier;  // (vertex, min kept-weight so far)
        int bound;
        long seq;
    };
    struct Cmp {
        bool operator()(const Node& a, const Node& b) const {
            if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
            return a.seq < b.seq;                              // newest first
        }
    };
    std::priority_queue<Node, std::vector<Node>, Cmp> open;
    long seq = 0;
    open.push({0, {}, {{0, 0}}, 0, seq++});

    std::map<std::vector<int>, StoppingSet> found;

    auto wb_of = [&](const std::vector<uint8_t>& bits) {
        std::vector<std::pair<int, int>> cons;
        for (std::size_t p = 0; p < bits.size(); ++p)
            cons.emplace_back(code.landing[p], bits[p]);
        return constrained_min_weight(*ext, I, cons, ctx.mask_b_parity);
    };

    while (!open.empty()) {
        Node node = open.top();
        open.pop();
        if (node.bound > tau) break;  // bounds only grow down the tree
        ++result.nodes_expanded;

        if (node.len == I) {
            int wsys = 0;
            for (uint8_t b : node.bits) wsys += b;
            if (wsys == 0) continue;  // the zero word is not a stopping set
            int wb_min = wb_of(node.bits);
            int wa_par_min = kInfWeight;
            for (auto& [v, w] : node.frontier)
                if (v == 0) wa_par_min = std::min(wa_par_min, w - wsys);
            if (wa_par_min >= kInfWeight || wb_min >= kInfWeight) continue;
            std::set<std::vector<int>> supa, supb;
            ctx.paths(0, node.bits, tau - wb_min, supa);
            ctx.paths(1, node.bits, tau - wsys - wa_par_min, supb);
            for (const auto& sa : supa) {
                int za = static_cast<int>(sa.size());
                for (const auto& sb : supb) {
                    int zb = static_cast<int>(sb.size());
                    if (wsys + za + zb > tau) continue;
                    StoppingSet s;
                    for (std::size_t t = 0; t < node.bits.size(); ++t)
                        if (node.bits[t]) s.positions.push_back(code.sys_turbo_pos[t]);
                    s.positions.insert(s.positions.end(), sa.begin(), sa.end());
                    s.positions.insert(s.positions.end(), sb.begin(), sb.end());
                    std::sort(s.positions.begin(), s.positions.end());
                    for (int j : s.positions) {
                        if (code.maps.mu_a[j] != IndexMaps::star)
                            s.witness_a.push_back(code.maps.mu_a[j]);
                        if (code.maps.mu_b[j] != IndexMaps::star)
                            s.witness_b.push_back(code.maps.mu_b[j]);
                    }
                    std::sort(s.witness_a.begin(), s.witness_a.end());
                    std::sort(s.witness_b.begin(), s.witness_b.end());
                    std::vector<int> key = s.positions;
                    found.emplace(std::move(key), std::move(s));
                }
            }
            continue;
        }

        for (int u = 0; u < 2; ++u) {
            Node child;
            child.len = node.len + 1;
            child.bits = node.bits;
            child.bits.push_back(static_cast<uint8_t>(u));
            std::map<int, int> fr;
            for (auto& [v, w] : node.frontier) {
                for (int ei : ctx.adj[node.len % ext->k][v]) {
                    const auto& e = ext->sections[node.len % ext->k][ei];
                    if (static_cast<int>(e.in) != u) continue;
                    int w2 = w + std::popcount(e.out & ctx.mask_a_full[node.len]);
                    auto it = fr.find(e.right);
                    if (it == fr.end() || it->second > w2) fr[e.right] = w2;
                }
            }
            if (fr.empty()) continue;
            child.frontier.assign(fr.begin(), fr.end());
            int wa = kInfWeight;
            for (auto& [v, w] : child.frontier)
                if (ctx.tail_a[child.len][v] < kInfWeight)
                    wa = std::min(wa, w + ctx.tail_a[child.len][v]);
            if (wa >= kInfWeight) continue;
            int wb = cheap_bound ? 0 : wb_of(child.bits);
            if (wb >= kInfWeight) continue;
            child.bound = wa + wb;
            if (child.bound > tau) continue;
            child.seq = seq++;
            open.push(std::move(child));
        }
    }

    for (auto& [pos, s] : found) result.sets.push_back(std::move(s));
    std::sort(result.sets.begin(), result.sets.end());
    return result;
}

void write_stopset_report(std::ostream& os, const TurboCode& code,
                          const std::vector<StoppingSet>& sets, int tau, bool exact) {
    os << "stopset-report v1\n";
    os << "N " << code.N << " tau " << tau << " exact " << (exact ? 1 : 0) << "\n";
    os << "count " << sets.size() << "\n";
    std::vector<StoppingSet> sorted = sets;
    std::sort(sorted.begin(), sorted.end());
    std::map<int, long> histogram;
    auto list = [&os](const std::vector<int>& v) {
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    };
    for (const auto& s : sorted) {
        ++histogram[s.size()];
        os << "set size=" << s.size() << " positions=";
        list(s.positions);
        os << " witness_a=";
        list(s.witness_a);
        os << " witness_b=";
        list(s.witness_b);
        os << " codeword=" << (is_codeword_support(code, s.positions) ? 1 : 0) << "\n";
    }
    os << "histogram";
    for (auto& [size, count] : histogram) os << ' ' << size << ':' << count;
    os << "\n";
}

}  // namespace turbobec
