#include "turbobec/uniform.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "turbobec/stopsets.hpp"
#include "turbobec/trellis.hpp"

namespace turbobec {

ConstituentCode terminated_constituent(const ConvCodeSpec& spec, int I) {
    if (I <= 0 || I % spec.k != 0) throw DomainError("I must be a positive multiple of k");
    if (I < spec.nu) throw DomainError("I too short to terminate");
    TrellisModule info = sectionalize_info(build_minimal_module(spec));
    const int k = spec.k;
    const int delta = (I / k) * spec.n;

    // deterministic walk over the periodic module
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> walk(k);
    for (int s = 0; s < k; ++s) {
        walk[s].assign(std::size_t{1} << (info.layer_dim[s] + 1), {0, 0});
        for (auto& e : info.sections[s])
            walk[s][e.left | (e.in << info.layer_dim[s])] = {e.right, e.out};
    }
    auto encode = [&](const BitVec& x, bool& term) {
        BitVec out(delta);
        uint32_t state = 0;
        int at = 0;
        for (int g = 0; g < I; ++g) {
            auto [nxt, lab] = walk[g % k][state | (x.get(g) << info.layer_dim[g % k])];
            for (int b = 0; b < info.section_len[g % k]; ++b) out.set(at + b, (lab >> b) & 1);
            at += info.section_len[g % k];
            state = nxt;
        }
        term = state == 0;
        return out;
    };

    // termination kernel of the final-state map
    BinaryMatrix fmap(I, std::max(spec.nu, 1));
    for (int t = 0; t < I; ++t) {
        uint32_t state = 0;
        for (int g = t; g < I; ++g)
            state = walk[g % k][state | ((g == t ? 1u : 0u) << info.layer_dim[g % k])].first;
        for (int b = 0; b < spec.nu; ++b) fmap.set(t, b, (state >> b) & 1);
    }

    ConstituentCode out;
    out.gen = BinaryMatrix(0, delta);
    for (const BitVec& x : left_kernel(fmap)) {
        bool term = false;
        BitVec cw = encode(x, term);
        if (!term) throw std::logic_error("termination kernel vector does not terminate");
        out.gen.append_row(cw);
    }
    if (out.gen.rows() != static_cast<std::size_t>(I - spec.nu))
        throw DomainError("terminated code has unexpected dimension");
    {
        int at = 0;
        for (int g = 0; g < I; ++g) {
            for (int b = 0; b < info.section_len[g % k]; ++b)
                (b == 0 ? out.sys_positions : out.parity_positions).push_back(at + b);
            at += info.section_len[g % k];
        }
    }
    return out;
}

namespace {

std::pair<int, int> support_sizes(const BitVec& sup, const std::vector<char>& is_sys) {
    int w = 0, z = 0;
    for (std::size_t p = 0; p < sup.size(); ++p)
        if (sup.get(p)) (is_sys[p] ? w : z) += 1;
    return {w, z};
}

}  // namespace

EnumFn sirsef_block(const ConstituentCode& code, SubcodeMode mode) {
    const std::size_t n = code.gen.cols();
    const std::size_t kdim = code.gen.rows();
    std::vector<char> is_sys(n, 0);
    for (int p : code.sys_positions) is_sys[p] = 1;

    EnumFn A;
    if (mode == SubcodeMode::DimensionOne) {
        if (kdim > 20) throw CapacityError("too many codewords to enumerate");
        for (uint32_t m = 1; m < (uint32_t{1} << kdim); ++m) {
            BitVec msg(kdim);
            for (std::size_t i = 0; i < kdim; ++i) msg.set(i, (m >> i) & 1);
            auto [w, z] = support_sizes(code.gen.mul_left(msg), is_sys);
            A.add_term(w, z, 1);
        }
        return A;
    }
    if (n > 22) throw CapacityError("too many coordinates for the support scan");
    for (uint32_t X = 1; X < (uint32_t{1} << n); ++X) {
        std::vector<int> Xv;
        for (std::size_t p = 0; p < n; ++p)
            if ((X >> p) & 1) Xv.push_back(static_cast<int>(p));
        MaximalSubcode ms = maximal_supported_subcode(code.gen, Xv);
        if (ms.dim == 0 || ms.support != Xv) continue;
        BitVec sup(n);
        for (int p : Xv) sup.set(p, true);
        auto [w, z] = support_sizes(sup, is_sys);
        A.add_term(w, z, 1);
    }
    return A;
}

EnumFn sirsef_conv(const ConvCodeSpec& spec, int I, int max_total, SubcodeMode mode) {
    if (spec.k != 1) throw DomainError("sirsef_conv handles k = 1 constituents");
    if (I <= 0) throw DomainError("I must be positive");
    TrellisModule info = sectionalize_info(build_minimal_module(spec));
    ExtendedTrellisModule ext = build_extended_module(
        info, mode == SubcodeMode::DimensionOne ? std::optional<int>(2) : std::nullopt);
    const int n = spec.n;
    const uint32_t sysmask = 1, parmask = (uint32_t{1} << n) - 2;

    // Detours: zero-subspace to zero-subspace excursions without intermediate
    // zero visits, within the truncation budget. Deduplicated by label block.
    struct Detour {
        int len, w, z;
        std::vector<uint32_t> labels;
    };
    std::vector<Detour> detours;
    {
        std::set<std::vector<uint32_t>> seen;
        std::vector<uint32_t> labels;
        std::function<void(int, int, int, int)> rec = [&](int v, int len, int w, int z) {
            if (w + z > max_total || len > I) return;
            if (len > 0 && v == 0) {
                if (seen.insert(labels).second) detours.push_back({len, w, z, labels});
                return;
            }
            for (const auto& e : ext.sections[0]) {
                if (e.left != v) continue;
                if (len == 0 && e.dim == 0) continue;  // skip the dwell edge
                labels.push_back(e.out);
                rec(e.right, len + 1, w + std::popcount(e.out & sysmask),
                    z + std::popcount(e.out & parmask));
                labels.pop_back();
            }
        };
        rec(0, 0, 0, 0);
    }

    // Compounds: ordered detour sequences with explicit gap placement. The
    // realized label sequences are deduplicated so a support class reachable
    // through several detour decompositions counts once.
    std::set<std::vector<uint32_t>> realized;
    std::vector<uint32_t> seq(I, 0);
    std::function<void(int, int)> place = [&](int from, int total) {
        for (const auto& d : detours) {
            if (total + d.w + d.z > max_total) continue;
            for (int t = from; t + d.len <= I; ++t) {
                for (int j = 0; j < d.len; ++j) seq[t + j] = d.labels[j];
                realized.insert(seq);
                place(t + d.len, total + d.w + d.z);
                for (int j = 0; j < d.len; ++j) seq[t + j] = 0;
            }
        }
    };
    place(0, 0);

    EnumFn A;
    for (const auto& s : realized) {
        int w = 0, z = 0;
        for (uint32_t lab : s) {
            w += std::popcount(lab & sysmask);
            z += std::popcount(lab & parmask);
        }
        if (w + z <= max_total) A.add_term(w, z, 1);
    }
    return A;
}

EnumFn irtssef_uniform(const EnumFn& Aa, const EnumFn& Ab, int I) {
    EnumFn S;
    int maxw = std::max(Aa.max_w_degree(), Ab.max_w_degree());
    for (int w = 1; w <= maxw; ++w) {
        EnumFn prod = conditional_from_full(Aa, w) * conditional_from_full(Ab, w);
        if (prod.is_zero()) continue;
        prod *= Rat(Int(1), binomial(I, w));
        for (auto& [key, c] : prod.terms()) S.add_term(w, key.second, c);
    }
    return S;
}

EnumFn tssef(const EnumFn& S, TssefMode mode) {
    EnumFn out;
    for (auto& [key, c] : S.terms()) out.add_term(key.first + key.second, 0, c);
    if (mode == TssefMode::Codeword) out.add_term(0, 0, 1);
    return out;
}

InterleaverAverage interleaver_average_oracle(const ConvCodeSpec& constituent, int I) {
    if (constituent.nu != 0) throw DomainError("interleaver averaging needs a block constituent");
    if (constituent.k != I) throw DomainError("block constituents use I = k");
    if (I > 6) throw CapacityError("interleaver averaging enumerates I!, so I <= 6");

    std::vector<int> perm(I);
    for (int i = 0; i < I; ++i) perm[i] = i;

    std::map<std::vector<std::pair<EnumFn::Key, Rat>>, std::size_t> classindex;
    InterleaverAverage out;
    EnumFn total;
    long count = 0;

    do {
        TurboCodeSpec spec;
        spec.constituent = constituent;
        spec.K = I;
        spec.interleaver = perm;
        TurboCode code = make_turbo_code(spec);

        std::vector<char> is_sys(code.N, 0);
        for (int t = 0; t < code.I; ++t) is_sys[code.sys_turbo_pos[t]] = 1;

        EnumFn irtssef;
        for (const auto& s : brute_force_stopping_sets(code, code.N)) {
            int w = 0, z = 0;
            for (int p : s.positions) (is_sys[p] ? w : z) += 1;
            irtssef.add_term(w, z, 1);
        }
        EnumFn wef;
        wef.add_term(0, 0, 1);  // zero codeword
        for (int u = 1; u < (1 << code.K); ++u) {
            BitVec info(code.K);
            for (int i = 0; i < code.K; ++i) info.set(i, (u >> i) & 1);
            wef.add_term(static_cast<int>(code.encode(info).popcount()), 0, 1);
        }

        total += irtssef;
        ++count;
        std::vector<std::pair<EnumFn::Key, Rat>> key(irtssef.terms().begin(),
                                                     irtssef.terms().end());
        auto [it, fresh] = classindex.emplace(std::move(key), out.classes.size());
        if (fresh) out.classes.push_back({irtssef, {}, {}});
        InterleaverClass& cls = out.classes[it->second];
        cls.perms.push_back(perm);
        if (std::find(cls.wefs.begin(), cls.wefs.end(), wef) == cls.wefs.end())
            cls.wefs.push_back(wef);
    } while (std::next_permutation(perm.begin(), perm.end()));

    total *= Rat(1, count);
    out.average = total;
    return out;
}

}  // namespace turbobec
