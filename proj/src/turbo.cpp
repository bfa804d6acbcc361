#include "turbobec/turbo.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace turbobec {

namespace {

std::vector<int> invert_perm(const std::vector<int>& p) {
    std::vector<int> inv(p.size(), -1);
    for (std::size_t t = 0; t < p.size(); ++t) {
        int v = p[t];
        if (v < 0 || v >= static_cast<int>(p.size()) || inv[v] != -1)
            throw DataError("interleaver is not a permutation");
        inv[v] = static_cast<int>(t);
    }
    return inv;
}

}  // namespace

uint32_t TurboCode::walk_next(int section, uint32_t state, uint32_t in) const {
    int s = section % spec.constituent.k;
    return walk_[s][state | (in << info_module.layer_dim[s])].first;
}

uint32_t TurboCode::walk_out(int section, uint32_t state, uint32_t in) const {
    int s = section % spec.constituent.k;
    return walk_[s][state | (in << info_module.layer_dim[s])].second;
}

BitVec TurboCode::constituent_labels(int which, const BitVec& input_block) const {
    const int k = spec.constituent.k;
    BitVec out(delta);
    uint32_t state = 0;
    int at = 0;
    for (int g = 0; g < I; ++g) {
        uint32_t u = which == 0 ? input_block.get(g) : input_block.get(spec.interleaver[g]);
        uint32_t lab = walk_out(g, state, u);
        state = walk_next(g, state, u);
        int len = info_module.section_len[g % k];
        for (int b = 0; b < len; ++b) out.set(at + b, (lab >> b) & 1);
        at += len;
    }
    if (state != 0) throw DomainError("constituent encoder did not terminate");
    return out;
}

BitVec TurboCode::constituent_word(int which, const BitVec& input_block) const {
    BitVec labels = constituent_labels(which, input_block);
    const auto& slots = which == 0 ? slots_a : slots_b;
    BitVec out(which == 0 ? maps.Na : maps.Nb);
    for (int s = 0; s < delta; ++s)
        if (slots[s].kept) out.set(slots[s].punct_idx, labels.get(s));
    return out;
}

BitVec TurboCode::dual_terminate(const BitVec& info) const {
    if (static_cast<int>(info.size()) != K) throw DomainError("info length mismatch");
    BitVec x(I);
    for (int i = 0; i < K; ++i) x.set(i, info.get(i));
    if (nu == 0) return x;
    Word fa = 0, fb = 0;
    for (int j = 0; j < K; ++j)
        if (info.get(j)) {
            fa ^= response_[j];
            fb ^= response_[landing[j]];
        }
    BitVec rhs(2 * nu);
    for (int b = 0; b < nu; ++b) {
        rhs.set(b, (fa >> b) & 1);
        rhs.set(nu + b, (fb >> b) & 1);
    }
    BitVec tail = tail_inv_.mul_left(rhs);
    for (int j = 0; j < 2 * nu; ++j) x.set(K + j, tail.get(j));
    return x;
}

BitVec TurboCode::encode(const BitVec& info) const {
    BitVec x = dual_terminate(info);
    BitVec la = constituent_labels(0, x);
    BitVec lb = constituent_labels(1, x);
    BitVec cw(N);
    for (int s = 0; s < delta; ++s) {
        if (slots_a[s].turbo_pos >= 0) cw.set(slots_a[s].turbo_pos, la.get(s));
        if (slots_b[s].turbo_pos >= 0) cw.set(slots_b[s].turbo_pos, lb.get(s));
    }
    return cw;
}

TurboCode make_turbo_code(const TurboCodeSpec& spec) {
    TurboCode c;
    c.spec = spec;
    const ConvCodeSpec& cc = spec.constituent;
    c.nu = cc.nu;
    c.K = spec.K;
    c.I = spec.K + 2 * cc.nu;
    if (c.I % cc.k != 0) throw DataError("K + 2*nu must be a multiple of k");
    if (static_cast<int>(spec.interleaver.size()) != c.I)
        throw DataError("interleaver length must equal K + 2*nu = " + std::to_string(c.I));
    c.landing = invert_perm(spec.interleaver);
    c.delta = (c.I / cc.k) * cc.n;

    c.info_module = sectionalize_info(build_minimal_module(cc));
    c.ext_module = build_extended_module(c.info_module);
    if (c.info_module.layer_dim[0] != c.nu)
        throw DomainError("unexpected boundary state dimension");

    // deterministic walk tables per module section
    for (int s = 0; s < cc.k; ++s) {
        int dim = c.info_module.layer_dim[s];
        std::vector<std::pair<uint32_t, uint32_t>> tab(std::size_t{1} << (dim + 1));
        std::vector<char> seen(tab.size(), 0);
        for (auto& e : c.info_module.sections[s]) {
            uint32_t key = e.left | (e.in << dim);
            tab[key] = {e.right, e.out};
            seen[key] = 1;
        }
        for (char ok : seen)
            if (!ok) throw DomainError("info module walk table incomplete");
        c.walk_.push_back(std::move(tab));
    }

    // final-state response of a unit input at each position
    c.response_.assign(c.I, 0);
    for (int t = 0; t < c.I; ++t) {
        uint32_t state = 0;
        for (int g = t; g < c.I; ++g) state = c.walk_next(g, state, g == t ? 1u : 0u);
        c.response_[t] = state;
    }

    // dual-termination solver over the 2*nu tail bits
    if (c.nu > 0) {
        BinaryMatrix tail(2 * c.nu, 2 * c.nu);
        for (int j = 0; j < 2 * c.nu; ++j) {
            Word fa = c.response_[c.K + j];
            Word fb = c.response_[c.landing[c.K + j]];
            for (int b = 0; b < c.nu; ++b) {
                tail.set(j, b, (fa >> b) & 1);
                tail.set(j, c.nu + b, (fb >> b) & 1);
            }
        }
        if (gf2_rank(tail) != static_cast<std::size_t>(2 * c.nu))
            throw TerminationUnsupported(
                "dual-termination system is singular for this interleaver");
        c.tail_inv_ = BinaryMatrix(2 * c.nu, 2 * c.nu);
        for (int i = 0; i < 2 * c.nu; ++i) {
            BitVec e(2 * c.nu);
            e.set(i, true);
            c.tail_inv_.row(i) = solve_left(tail, e)->particular;
        }
    }

    // slot tables
    auto build_slots = [&](const std::vector<uint8_t>& mask_in) {
        std::vector<TurboCode::Slot> slots;
        std::vector<uint8_t> mask = mask_in;
        if (mask.empty()) mask.assign(c.delta, 1);
        if (static_cast<int>(mask.size()) != c.delta)
            throw DataError("puncture mask length must be " + std::to_string(c.delta));
        int punct = 0, par = 0, at = 0;
        for (int g = 0; g < c.I; ++g) {
            int len = c.info_module.section_len[g % cc.k];
            for (int p = 0; p < len; ++p) {
                TurboCode::Slot s;
                s.section = g;
                s.pos = p;
                s.kept = mask[at] != 0;
                s.parity_idx = p == 0 ? -1 : par++;
                if (p == 0 && !s.kept) throw DataError("systematic slots must not be punctured");
                s.punct_idx = s.kept ? punct++ : -1;
                s.turbo_pos = -1;
                slots.push_back(s);
                ++at;
            }
        }
        return slots;
    };
    c.slots_a = build_slots(spec.puncture_a);
    c.slots_b = build_slots(spec.puncture_b);
    c.maps.Na = 0;
    c.maps.Nb = 0;
    for (auto& s : c.slots_a) c.maps.Na += s.kept;
    for (auto& s : c.slots_b) c.maps.Nb += s.kept;

    // multiplex order
    std::vector<MuxToken> mux = spec.multiplex;
    if (mux.empty()) {
        std::vector<std::vector<int>> par_a(c.I), par_b(c.I);
        for (int s = 0; s < c.delta; ++s) {
            if (c.slots_a[s].pos > 0 && c.slots_a[s].kept)
                par_a[c.slots_a[s].section].push_back(c.slots_a[s].parity_idx);
            if (c.slots_b[s].pos > 0 && c.slots_b[s].kept)
                par_b[c.slots_b[s].section].push_back(c.slots_b[s].parity_idx);
        }
        for (int g = 0; g < c.I; ++g) {
            mux.push_back({MuxToken::Sys, g});
            for (int p : par_a[g]) mux.push_back({MuxToken::ParA, p});
            for (int p : par_b[g]) mux.push_back({MuxToken::ParB, p});
        }
    }

    std::vector<int> slot_of_par_a(c.num_parity_slots(), -1),
        slot_of_par_b(c.num_parity_slots(), -1), sys_slot(c.I, -1);
    for (int s = 0; s < c.delta; ++s) {
        if (c.slots_a[s].parity_idx >= 0) slot_of_par_a[c.slots_a[s].parity_idx] = s;
        if (c.slots_b[s].parity_idx >= 0) slot_of_par_b[c.slots_b[s].parity_idx] = s;
        if (c.slots_a[s].pos == 0) sys_slot[c.slots_a[s].section] = s;
    }

    c.N = static_cast<int>(mux.size());
    c.maps.N = c.N;
    c.maps.mu_a.assign(c.N, IndexMaps::star);
    c.maps.mu_b.assign(c.N, IndexMaps::star);
    c.sys_turbo_pos.assign(c.I, -1);
    std::vector<char> seen_sys(c.I, 0), seen_pa(c.num_parity_slots(), 0),
        seen_pb(c.num_parity_slots(), 0);
    for (int j = 0; j < c.N; ++j) {
        const MuxToken& t = mux[j];
        switch (t.kind) {
            case MuxToken::Sys: {
                if (t.index < 0 || t.index >= c.I || seen_sys[t.index]++)
                    throw DataError("multiplex: bad systematic token");
                c.sys_turbo_pos[t.index] = j;
                int sa = sys_slot[t.index];
                c.slots_a[sa].turbo_pos = j;
                c.maps.mu_a[j] = c.slots_a[sa].punct_idx;
                int sb = sys_slot[c.landing[t.index]];
                c.slots_b[sb].turbo_pos = j;  // encoder b carries the same bit
                c.maps.mu_b[j] = c.slots_b[sb].punct_idx;
                break;
            }
            case MuxToken::ParA: {
                if (t.index < 0 || t.index >= c.num_parity_slots() || seen_pa[t.index]++)
                    throw DataError("multiplex: bad parity-a token");
                int s = slot_of_par_a[t.index];
                if (!c.slots_a[s].kept) throw DataError("multiplex references punctured parity");
                c.slots_a[s].turbo_pos = j;
                c.maps.mu_a[j] = c.slots_a[s].punct_idx;
                break;
            }
            case MuxToken::ParB: {
                if (t.index < 0 || t.index >= c.num_parity_slots() || seen_pb[t.index]++)
                    throw DataError("multiplex: bad parity-b token");
                int s = slot_of_par_b[t.index];
                if (!c.slots_b[s].kept) throw DataError("multiplex references punctured parity");
                c.slots_b[s].turbo_pos = j;
                c.maps.mu_b[j] = c.slots_b[s].punct_idx;
                break;
            }
        }
    }
    for (int t = 0; t < c.I; ++t)
        if (!seen_sys[t]) throw DataError("multiplex: systematic bit missing");
    for (int s = 0; s < c.delta; ++s) {
        if (c.slots_a[s].kept && c.slots_a[s].pos > 0 && c.slots_a[s].turbo_pos < 0)
            throw DataError("multiplex: kept parity slot of constituent a missing");
        if (c.slots_b[s].kept && c.slots_b[s].pos > 0 && c.slots_b[s].turbo_pos < 0)
            throw DataError("multiplex: kept parity slot of constituent b missing");
    }

    // psi maps: constituent index -> (interleaved) systematic sequence index
    c.maps.psi_a.assign(c.maps.Na, IndexMaps::star);
    c.maps.psi_b.assign(c.maps.Nb, IndexMaps::star);
    for (int s = 0; s < c.delta; ++s) {
        if (c.slots_a[s].kept && c.slots_a[s].pos == 0)
            c.maps.psi_a[c.slots_a[s].punct_idx] = c.slots_a[s].section;
        if (c.slots_b[s].kept && c.slots_b[s].pos == 0)
            c.maps.psi_b[c.slots_b[s].punct_idx] = c.slots_b[s].section;
    }

    // per-section label position -> turbo position
    c.lab2turbo_a.assign(c.I, {});
    c.lab2turbo_b.assign(c.I, {});
    {
        int at = 0;
        for (int g = 0; g < c.I; ++g) {
            int len = c.info_module.section_len[g % cc.k];
            for (int p = 0; p < len; ++p) {
                c.lab2turbo_a[g].push_back(c.slots_a[at + p].turbo_pos);
                c.lab2turbo_b[g].push_back(c.slots_b[at + p].turbo_pos);
            }
            at += len;
        }
    }

    // generator matrices
    c.gen_ = BinaryMatrix(0, c.N);
    for (int i = 0; i < c.K; ++i) {
        BitVec info(c.K);
        info.set(i, true);
        c.gen_.append_row(c.encode(info));
    }
    {
        BinaryMatrix fmap(c.I, std::max(c.nu, 1));
        for (int t = 0; t < c.I; ++t)
            for (int b = 0; b < c.nu; ++b) fmap.set(t, b, (c.response_[t] >> b) & 1);
        auto kernel = left_kernel(fmap);
        c.gen_a_ = BinaryMatrix(0, c.maps.Na);
        c.gen_b_ = BinaryMatrix(0, c.maps.Nb);
        for (auto& x : kernel) {
            c.gen_a_.append_row(c.constituent_word(0, x));
            // present the kernel vector so that encoder b reads the stream x
            BitVec xb(c.I);
            for (int t = 0; t < c.I; ++t) xb.set(spec.interleaver[t], x.get(t));
            c.gen_b_.append_row(c.constituent_word(1, xb));
        }
    }

    BitVec zero(c.K);
    if (c.encode(zero).any()) throw DomainError("encode(0) != 0");
    return c;
}

// ---------------------------------------------------------------------------
// file formats

namespace {
std::vector<uint8_t> parse_mask(const std::string& s) {
    std::vector<uint8_t> m;
    for (char ch : s) {
        if (ch != '0' && ch != '1') throw DataError("mask must be a 0/1 string");
        m.push_back(ch == '1');
    }
    return m;
}

MuxToken parse_token(const std::string& t) {
    if (t.size() < 2) throw DataError("bad multiplex token: " + t);
    MuxToken::Kind kind;
    switch (t[0]) {
        case 'S': kind = MuxToken::Sys; break;
        case 'A': kind = MuxToken::ParA; break;
        case 'B': kind = MuxToken::ParB; break;
        default: throw DataError("bad multiplex token: " + t);
    }
    std::size_t used = 0;
    int idx = std::stoi(t.substr(1), &used);
    if (used + 1 != t.size()) throw DataError("bad multiplex token: " + t);
    return {kind, idx};
}
}  // namespace

TurboCodeSpec read_code_spec(std::istream& is) {
    TurboCodeSpec spec;
    std::string line;
    bool have_header = false, have_constituent = false, have_k = false;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (!have_header) {
            std::string ver;
            ls >> ver;
            if (key != "turbo-code-spec" || ver != "v1")
                throw DataError("expected 'turbo-code-spec v1' header");
            have_header = true;
            continue;
        }
        if (key == "constituent") {
            std::string kind;
            ls >> kind;
            if (kind == "hamming74") {
                spec.constituent = ConvCodeSpec::hamming74();
            } else if (kind == "conv") {
                std::vector<Poly> polys;
                std::string p;
                while (ls >> p) polys.push_back(poly_from_octal(p));
                if (polys.size() != 2)
                    throw DataError("constituent conv expects two octal polynomials");
                spec.constituent = ConvCodeSpec::rate_half(polys[0], polys[1]);
            } else {
                throw DataError("unknown constituent: " + kind);
            }
            have_constituent = true;
        } else if (key == "K") {
            if (!(ls >> spec.K) || spec.K <= 0) throw DataError("bad K");
            have_k = true;
        } else if (key == "puncture_a" || key == "puncture_b") {
            std::string m;
            if (!(ls >> m)) throw DataError("bad mask");
            (key == "puncture_a" ? spec.puncture_a : spec.puncture_b) = parse_mask(m);
        } else if (key == "multiplex") {
            std::string t;
            while (ls >> t) {
                if (t == "default") break;
                spec.multiplex.push_back(parse_token(t));
            }
        } else {
            throw DataError("unknown key in code spec: " + key);
        }
    }
    if (!have_header) throw DataError("missing 'turbo-code-spec v1' header");
    if (!have_constituent || !have_k) throw DataError("code spec needs 'constituent' and 'K'");
    return spec;
}

void write_code_spec(std::ostream& os, const TurboCodeSpec& spec) {
    os << "turbo-code-spec v1\n";
    if (spec.constituent.nu == 0 && spec.constituent.n == 7 && spec.constituent.k == 4) {
        os << "constituent hamming74\n";
    } else {
        os << "constituent conv " << poly_to_octal(spec.constituent.parity_check[0][0]) << ' '
           << poly_to_octal(spec.constituent.parity_check[0][1]) << '\n';
    }
    os << "K " << spec.K << '\n';
    auto mask = [](const std::vector<uint8_t>& m) {
        std::string s;
        for (uint8_t b : m) s += b ? '1' : '0';
        return s;
    };
    if (!spec.puncture_a.empty()) os << "puncture_a " << mask(spec.puncture_a) << '\n';
    if (!spec.puncture_b.empty()) os << "puncture_b " << mask(spec.puncture_b) << '\n';
    if (!spec.multiplex.empty()) {
        os << "multiplex";
        for (auto& t : spec.multiplex) os << ' ' << "SAB"[t.kind] << t.index;
        os << '\n';
    }
}

std::vector<int> read_interleaver(std::istream& is) {
    std::vector<int> perm;
    int v;
    while (is >> v) perm.push_back(v);
    if (perm.empty()) throw DataError("empty interleaver file");
    return perm;
}

void write_interleaver(std::ostream& os, const std::vector<int>& perm) {
    for (std::size_t i = 0; i < perm.size(); ++i) os << (i ? " " : "") << perm[i];
    os << '\n';
}

std::vector<int> drp_interleaver(int length, int start, int prime,
                                 const std::vector<int>& read_dither,
                                 const std::vector<int>& write_dither) {
    int m = static_cast<int>(read_dither.size());
    if (m == 0 || length % m != 0 || write_dither.size() != read_dither.size())
        throw DataError("dither length must divide the interleaver length");
    if (std::gcd(prime, length) != 1) throw DataError("drp: prime must be coprime to the length");
    invert_perm(read_dither);  // permutation checks
    invert_perm(write_dither);
    std::vector<int> pi(length);
    for (int i = 0; i < length; ++i) {
        int w = (i / m) * m + write_dither[i % m];
        int core = static_cast<int>((start + static_cast<long long>(w) * prime) % length);
        pi[i] = (core / m) * m + read_dither[core % m];
    }
    invert_perm(pi);
    return pi;
}

std::vector<int> random_interleaver(int length, uint64_t seed) {
    std::vector<int> pi(length);
    for (int i = 0; i < length; ++i) pi[i] = i;
    std::mt19937_64 rng(seed);
    for (int i = length - 1; i > 0; --i) {
        int j = static_cast<int>(rng() % (i + 1));
        std::swap(pi[i], pi[j]);
    }
    return pi;
}

}  // namespace turbobec
