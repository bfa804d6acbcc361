#include "turbobec/trellis.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <numeric>
#include <ostream>

#include "turbobec/enumfn.hpp"

namespace turbobec {

namespace {

// Syndrome-former state layout. Period-boundary states hold, per row r, the
// pending partial sums of the checks at offsets 0..nu_r-1 ahead. Intra-period
// states additionally track the check completing in the current period
// (offsets 0..nu_r per row).
struct Layout {
    int rows;
    std::vector<int> nu_r;
    std::vector<int> pbase, qbase;  // per-row bit offsets
    int pdim = 0, qdim = 0;

    explicit Layout(const ConvCodeSpec& s) : rows(s.n - s.k), nu_r(s.row_degrees) {
        for (int r = 0; r < rows; ++r) {
            pbase.push_back(pdim);
            qbase.push_back(qdim);
            pdim += nu_r[r];
            qdim += nu_r[r] + 1;
        }
    }
    Word embed(Word s) const {  // period state -> intra state
        Word q = 0;
        for (int r = 0; r < rows; ++r)
            for (int o = 0; o < nu_r[r]; ++o)
                if ((s >> (pbase[r] + o)) & 1) q |= Word(1) << (qbase[r] + o);
        return q;
    }
    Word shift(Word q) const {  // intra state (offset-0 bits zero) -> next period state
        Word s = 0;
        for (int r = 0; r < rows; ++r)
            for (int o = 1; o <= nu_r[r]; ++o)
                if ((q >> (qbase[r] + o)) & 1) s |= Word(1) << (pbase[r] + o - 1);
        return s;
    }
    bool check_ok(Word q) const {  // completed checks must be zero
        for (int r = 0; r < rows; ++r)
            if ((q >> qbase[r]) & 1) return false;
        return true;
    }
    Word step_vec(const ConvCodeSpec& s, int j) const {  // effect of symbol j being 1
        Word h = 0;
        for (int r = 0; r < rows; ++r) {
            Poly p = s.parity_check[r][j];
            for (int o = 0; o <= nu_r[r]; ++o)
                if ((p >> o) & 1) h |= Word(1) << (qbase[r] + o);
        }
        return h;
    }
};

Basis add_vec(const Basis& b, Word h) {
    std::vector<Word> v(b.begin(), b.end());
    v.push_back(h);
    return span_rref(std::move(v));
}

Basis map_span(const Basis& b, auto&& f) {
    std::vector<Word> v;
    for (Word w : b) v.push_back(f(w));
    return span_rref(std::move(v));
}

// {q : offset-0 bits zero, shift(q) in target}; shift restricted to that
// kernel is a bijection onto the period space.
Basis lift_through_shift(const Layout& L, const Basis& target) {
    std::vector<Word> v;
    for (Word s : target) {
        Word q = 0;
        for (int r = 0; r < L.rows; ++r)
            for (int o = 1; o <= L.nu_r[r]; ++o)
                if ((s >> (L.pbase[r] + o - 1)) & 1) q |= Word(1) << (L.qbase[r] + o);
        v.push_back(q);
    }
    return span_rref(std::move(v));
}

Basis constraint_kernel(const Layout& L, const Basis& space) {
    std::vector<Word> keep;
    for (Word m = 0; m < (Word(1) << space.size()); ++m) {
        Word v = 0;
        for (std::size_t i = 0; i < space.size(); ++i)
            if ((m >> i) & 1) v ^= space[i];
        if (L.check_ok(v)) keep.push_back(v);
    }
    return span_rref(std::move(keep));
}

std::vector<std::vector<uint8_t>> submatrix_cols(const std::vector<std::vector<uint8_t>>& m,
                                                 int lo, int hi) {  // columns [lo, hi)
    std::vector<std::vector<uint8_t>> out;
    for (auto& row : m) out.push_back({row.begin() + lo, row.begin() + hi});
    return out;
}

int rank_u8(std::vector<std::vector<uint8_t>> m) {
    if (m.empty() || m[0].empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size(), r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && !m[p][c]) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = 0; i < rows; ++i)
            if (i != r && m[i][c])
                for (std::size_t j = 0; j < cols; ++j) m[i][j] ^= m[r][j];
        ++r;
    }
    return static_cast<int>(r);
}

}  // namespace

TrellisModule build_minimal_module(const ConvCodeSpec& spec) {
    spec.validate();
    const int n = spec.n, k = spec.k, nu = spec.nu;
    Layout L(spec);

    std::vector<Word> h(n);
    for (int j = 0; j < n; ++j) h[j] = L.step_vec(spec, j);

    // Forward-reachable subspace at the period boundary (fixpoint from {0}).
    Basis reach{};
    for (int pass = 0; pass <= nu + 1; ++pass) {
        Basis q = map_span(reach, [&](Word s) { return L.embed(s); });
        for (int j = 0; j < n; ++j) q = add_vec(q, h[j]);
        q = constraint_kernel(L, q);
        Basis next = map_span(q, [&](Word w) { return L.shift(w); });
        if (next == reach) break;
        reach = next;
    }
    // Co-reachable subspace at the period boundary.
    Basis coreach{};
    for (int pass = 0; pass <= nu + 1; ++pass) {
        Basis q = lift_through_shift(L, coreach);
        for (int j = n; j-- > 0;) q = add_vec(q, h[j]);
        // q now sits at boundary 0 in intra coordinates; pull back through embed
        Basis embedded;  // embed image of the full period space
        {
            std::vector<Word> units;
            for (int b = 0; b < L.pdim; ++b) units.push_back(L.embed(Word(1) << b));
            embedded = span_rref(std::move(units));
        }
        Basis meet = intersect_spans(q, embedded);
        Basis next;
        {
            // invert embed on the intersection
            std::vector<Word> v;
            for (Word w : meet) {
                Word s = 0;
                for (int r = 0; r < L.rows; ++r)
                    for (int o = 0; o < L.nu_r[r]; ++o)
                        if ((w >> (L.qbase[r] + o)) & 1) s |= Word(1) << (L.pbase[r] + o);
                v.push_back(s);
            }
            next = span_rref(std::move(v));
        }
        if (next == coreach) break;
        coreach = next;
    }

    // Valid state spaces per boundary.
    std::vector<Basis> valid(n + 1);
    valid[0] = intersect_spans(reach, coreach);
    {
        std::vector<Basis> fwd(n), bwd(n);
        Basis q = map_span(valid[0], [&](Word s) { return L.embed(s); });
        fwd[0] = q;
        for (int j = 1; j < n; ++j) fwd[j] = add_vec(fwd[j - 1], h[j - 1]);
        Basis c = lift_through_shift(L, valid[0]);
        c = add_vec(c, h[n - 1]);
        bwd[n - 1] = c;
        for (int j = n - 1; j-- > 0;) bwd[j] = add_vec(bwd[j + 1], h[j]);
        for (int j = 1; j < n; ++j) valid[j] = intersect_spans(fwd[j], bwd[j]);
    }
    valid[n] = valid[0];

    TrellisModule m;
    m.n = n; m.k = k; m.nu = nu;
    m.depth = n;
    m.info_oriented = false;
    m.section_len.assign(n, 1);
    for (int j = 0; j <= n; ++j) m.layer_dim.push_back(static_cast<int>(valid[j].size()));

    // Rank profiles from the interval submatrices of H(0) and the
    // leading-coefficient matrix.
    auto hl = spec.h_low(), hh = spec.h_high();
    m.b_profile.assign(n + 1, 0);
    m.f_profile.assign(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        m.b_profile[i] = rank_u8(submatrix_cols(hl, n - i, n));
        m.f_profile[i] = rank_u8(submatrix_cols(hh, 0, i));
    }
    for (int j = 0; j <= n; ++j) {
        int want = nu - n + k + m.f_profile[j] + m.b_profile[n - j];
        if (m.layer_dim[j] != want)
            throw DomainError("trellis: state space dimension disagrees with rank profile");
    }
    if (m.b_profile[n] != m.b_profile[n - 1])
        throw DomainError("trellis: position 0 is not an information position (reorder columns)");

    // Information positions and section lengths.
    for (int i = 0; i < n; ++i)
        if (m.b_profile[n - i] == m.b_profile[n - i - 1]) m.info_positions.push_back(i);
    if (static_cast<int>(m.info_positions.size()) != k)
        throw DomainError("trellis: expected k information positions");
    for (int i : m.info_positions) {
        int j = 0;
        while (j < n - i - 1 && m.b_profile[n - i - 1 - j] != m.b_profile[n - i - 2 - j]) ++j;
        m.info_section_len.push_back(j + 1);
    }
    {
        int at = 0;
        for (int s = 0; s < k; ++s) {
            if (m.info_positions[s] != at)
                throw DomainError("trellis: sections do not tile the period");
            at += m.info_section_len[s];
        }
        if (at != n) throw DomainError("trellis: sections do not tile the period");
    }

    // Edges. Boundary 0/n ids live in period coordinates, interior in intra
    // coordinates; every id is a coordinate vector against valid[j].
    m.sections.assign(n, {});
    for (int j = 0; j < n; ++j) {
        const Basis& lb = valid[j];
        const Basis& rb = valid[j + 1];
        for (Word lid = 0; lid < (Word(1) << lb.size()); ++lid) {
            Word raw = 0;
            for (std::size_t i = 0; i < lb.size(); ++i)
                if ((lid >> i) & 1) raw ^= lb[i];
            if (j == 0) raw = L.embed(raw);
            for (Word c = 0; c < 2; ++c) {
                Word nxt = raw ^ (c ? h[j] : 0);
                if (j == n - 1) {
                    if (!L.check_ok(nxt)) continue;
                    nxt = L.shift(nxt);
                }
                auto rid = coords_in_basis(rb, nxt);
                if (!rid) continue;
                m.sections[j].push_back({lid, *rid, 0, c});
            }
        }
        int edim = nu - n + k + m.f_profile[j] + m.b_profile[n - j - 1] + 1;
        if (m.sections[j].size() != (std::size_t{1} << edim))
            throw DomainError("trellis: edge space dimension disagrees with rank profile");
    }
    return m;
}

TrellisModule sectionalize_info(const TrellisModule& t) {
    if (t.info_oriented) throw DomainError("sectionalize_info: already sectionalized");
    const int k = t.k, n = t.n;

    // Per-section out-edge lookup: (boundary, left id, label) -> edge.
    std::vector<std::vector<std::array<int, 2>>> out(n);
    for (int j = 0; j < n; ++j) {
        out[j].assign(t.vertex_count(j), {-1, -1});
        for (std::size_t e = 0; e < t.sections[j].size(); ++e) {
            auto& ed = t.sections[j][e];
            out[j][ed.left][ed.out & 1] = static_cast<int>(e);
        }
    }

    TrellisModule m;
    m.n = n; m.k = k; m.nu = t.nu;
    m.depth = k;
    m.info_oriented = true;
    m.b_profile = t.b_profile;
    m.f_profile = t.f_profile;
    m.info_positions = t.info_positions;
    m.info_section_len = t.info_section_len;
    m.section_len = t.info_section_len;
    for (int s = 0; s < k; ++s) m.layer_dim.push_back(t.layer_dim[t.info_positions[s]]);
    m.layer_dim.push_back(t.layer_dim[n]);

    m.sections.assign(k, {});
    for (int s = 0; s < k; ++s) {
        int i0 = t.info_positions[s];
        int len = t.info_section_len[s];
        for (uint32_t v = 0; v < t.vertex_count(i0); ++v) {
            for (uint32_t u = 0; u < 2; ++u) {
                int e = out[i0][v][u];
                if (e < 0) throw DomainError("sectionalize: missing free edge");
                uint32_t cur = t.sections[i0][e].right;
                uint32_t lab = t.sections[i0][e].out & 1;
                for (int d = 1; d < len; ++d) {
                    int j = i0 + d;
                    int e0 = out[j][cur][0], e1 = out[j][cur][1];
                    if ((e0 >= 0) == (e1 >= 0))
                        throw DomainError("sectionalize: forced step is not forced");
                    int e2 = e0 >= 0 ? e0 : e1;
                    lab |= (t.sections[j][e2].out & 1) << d;
                    cur = t.sections[j][e2].right;
                }
                m.sections[s].push_back({v, cur, u, lab});
            }
        }
    }
    return m;
}

int ExtendedTrellisModule::vertex_index(int boundary, const Basis& b) const {
    auto& layer = layers[boundary];
    auto it = std::lower_bound(layer.begin(), layer.end(), b);
    assert(it != layer.end() && *it == b);
    return static_cast<int>(it - layer.begin());
}

ExtendedTrellisModule build_extended_module(const TrellisModule& t,
                                            std::optional<int> prune_alpha) {
    if (!t.info_oriented) throw DomainError("build_extended_module: need an info-oriented module");
    if (prune_alpha && *prune_alpha < 2)
        throw DomainError("build_extended_module: prune_alpha must be >= 2");

    ExtendedTrellisModule x;
    x.k = t.k; x.nu = t.nu;
    x.depth = t.depth;
    x.layer_dim = t.layer_dim;
    x.section_len = t.section_len;
    x.prune_alpha = prune_alpha;

    for (int b = 0; b <= t.depth; ++b) {
        auto subs = all_subspaces(t.layer_dim[b]);
        std::sort(subs.begin(), subs.end());
        x.layers.push_back(std::move(subs));
    }

    x.sections.assign(t.depth, {});
    for (int s = 0; s < t.depth; ++s) {
        // Edge lookup and linearity of the section maps in (left, input).
        int dl = t.layer_dim[s];
        std::vector<std::pair<uint32_t, uint32_t>> img(std::size_t{1} << (dl + 1));  // (right, out)
        {
            std::vector<char> seen(img.size(), 0);
            for (auto& e : t.sections[s]) {
                Word key = e.left | (e.in << dl);
                img[key] = {e.right, e.out};
                seen[key] = 1;
            }
            for (char c : seen)
                if (!c) throw DomainError("extended module: section edge table incomplete");
            for (Word key = 0; key < img.size(); ++key) {
                uint32_t r = 0, o = 0;
                for (int b = 0; b <= dl; ++b)
                    if ((key >> b) & 1) {
                        r ^= img[std::size_t{1} << b].first;
                        o ^= img[std::size_t{1} << b].second;
                    }
                if (img[key] != std::make_pair(r, o))
                    throw DomainError("extended module: section maps are not linear");
            }
        }

        // One edge per subspace of the section edge space. Distinct subspaces
        // with equal endpoints and labels stay distinct edges; the edge
        // complexity counts subspaces, and collapsing such twins would change
        // it for nu >= 3.
        for (auto& sub : all_subspaces(dl + 1)) {
            int dim = static_cast<int>(sub.size());
            if (prune_alpha && dim >= *prune_alpha) continue;
            std::vector<Word> lv, rv;
            uint32_t inOr = 0, outOr = 0;
            for (Word e : sub) {
                lv.push_back(e & ((Word(1) << dl) - 1));
                auto [r, o] = img[e];
                rv.push_back(r);
                inOr |= (e >> dl) & 1;
                outOr |= o;
            }
            Basis lspan = span_rref(std::move(lv));
            Basis rspan = span_rref(std::move(rv));
            x.sections[s].push_back({x.vertex_index(s, lspan), x.vertex_index(s + 1, rspan),
                                     inOr, outOr, dim});
        }
    }
    return x;
}

namespace {
std::pair<mpq_class, mpq_class> complexity_from_counts(const mpz_class& v, const mpz_class& e,
                                                       int k) {
    mpq_class mu(v, mpz_class(k)), phi(e, mpz_class(k));
    mu.canonicalize();
    phi.canonicalize();
    return {mu, phi};
}
}  // namespace

std::pair<mpq_class, mpq_class> module_complexity(const TrellisModule& m) {
    mpz_class v = 0, e = 0;
    for (int b = 0; b < m.depth; ++b) {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 2, m.layer_dim[b]);
        v += p;
    }
    for (auto& s : m.sections) e += s.size();
    return complexity_from_counts(v, e, m.k);
}

std::pair<mpq_class, mpq_class> module_complexity(const ExtendedTrellisModule& m) {
    mpz_class v = 0, e = 0;
    for (int b = 0; b < m.depth; ++b) v += m.layers[b].size();
    for (auto& s : m.sections) e += s.size();
    return complexity_from_counts(v, e, m.k);
}

namespace {
std::string label_bits(uint32_t v, int len) {
    std::string s;
    for (int i = 0; i < len; ++i) s += char('0' + ((v >> i) & 1));
    return s;
}
}

void dump_module(std::ostream& os, const TrellisModule& m) {
    os << "trellis-module v1 n=" << m.n << " k=" << m.k << " nu=" << m.nu
       << " depth=" << m.depth << (m.info_oriented ? " info" : " bit") << "\n";
    os << "layers";
    for (int d : m.layer_dim) os << ' ' << d;
    os << "\n";
    for (int s = 0; s < m.depth; ++s) {
        os << "section " << s << " len=" << m.section_len[s] << "\n";
        for (auto& e : m.sections[s]) {
            os << "  " << e.left << " -> " << e.right;
            if (m.info_oriented) os << " in=" << (e.in & 1);
            os << " out=" << label_bits(e.out, m.section_len[s]) << "\n";
        }
    }
}

void dump_module(std::ostream& os, const ExtendedTrellisModule& m) {
    os << "extended-module v1 k=" << m.k << " nu=" << m.nu << " depth=" << m.depth;
    if (m.prune_alpha) os << " prune_alpha=" << *m.prune_alpha;
    os << "\n";
    for (int b = 0; b <= m.depth; ++b) {
        os << "layer " << b << " dim=" << m.layer_dim[b] << " vertices=" << m.layers[b].size()
           << "\n";
        for (std::size_t i = 0; i < m.layers[b].size(); ++i) {
            os << "  v" << i << " = <";
            for (std::size_t j = 0; j < m.layers[b][i].size(); ++j)
                os << (j ? "," : "") << label_bits(m.layers[b][i][j], m.layer_dim[b]);
            os << ">\n";
        }
    }
    for (int s = 0; s < m.depth; ++s) {
        os << "section " << s << " len=" << m.section_len[s] << "\n";
        for (auto& e : m.sections[s])
            os << "  v" << e.left << " -> v" << e.right << " in=" << (e.in & 1)
               << " out=" << label_bits(e.out, m.section_len[s]) << " dim=" << e.dim << "\n";
    }
}

}  // namespace turbobec
