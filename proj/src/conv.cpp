#include "turbobec/conv.hpp"

#include <algorithm>

namespace turbobec {

int poly_degree(Poly p) {
    int d = -1;
    for (int i = 0; i < 32; ++i)
        if ((p >> i) & 1) d = i;
    return d;
}

Poly poly_gcd(Poly a, Poly b) {
    while (b) {
        // a mod b
        int db = poly_degree(b);
        while (poly_degree(a) >= db && a) a ^= b << (poly_degree(a) - db);
        std::swap(a, b);
    }
    return a;
}

Poly poly_from_octal(const std::string& s) {
    Poly p = 0;
    for (char c : s) {
        if (c < '0' || c > '7') throw DataError("bad octal polynomial: " + s);
        p = (p << 3) | Poly(c - '0');
    }
    return p;
}

std::string poly_to_octal(Poly p) {
    if (p == 0) return "0";
    std::string s;
    while (p) {
        s += char('0' + (p & 7));
        p >>= 3;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

ConvCodeSpec ConvCodeSpec::from_rows(std::vector<std::vector<Poly>> rows) {
    ConvCodeSpec spec;
    if (rows.empty() || rows[0].empty()) throw DomainError("empty parity-check matrix");
    spec.n = static_cast<int>(rows[0].size());
    spec.k = spec.n - static_cast<int>(rows.size());
    spec.parity_check = std::move(rows);
    spec.nu = 0;
    for (auto& r : spec.parity_check) {
        if (static_cast<int>(r.size()) != spec.n) throw DomainError("ragged parity-check matrix");
        int d = 0;
        for (Poly p : r) d = std::max(d, poly_degree(p));
        spec.row_degrees.push_back(d);
        spec.nu += d;
    }
    spec.validate();
    return spec;
}

ConvCodeSpec ConvCodeSpec::rate_half(Poly h1, Poly h2) {
    if (!(h2 & 1)) throw DomainError("feedback polynomial needs a nonzero constant term");
    return from_rows({{h1, h2}});
}

ConvCodeSpec ConvCodeSpec::hamming74() {
    // Systematic cyclic encoding with g(x) = 1 + x + x^3: parity rows of the
    // four unit messages are x^{3+i} mod g.
    const uint8_t P[4][3] = {{1, 1, 0}, {0, 1, 1}, {1, 1, 1}, {1, 0, 1}};
    std::vector<std::vector<Poly>> rows(3, std::vector<Poly>(7, 0));
    for (int r = 0; r < 3; ++r) {
        for (int j = 0; j < 4; ++j) rows[r][j] = P[j][r];
        rows[r][4 + r] = 1;
    }
    return from_rows(std::move(rows));
}

ConvCodeSpec ConvCodeSpec::rate_one(int n) {
    if (n <= 0) throw DomainError("rate_one: n must be positive");
    ConvCodeSpec spec;
    spec.n = spec.k = n;
    spec.nu = 0;
    return spec;
}

std::vector<std::vector<uint8_t>> ConvCodeSpec::h_low() const {
    std::vector<std::vector<uint8_t>> m;
    for (auto& r : parity_check) {
        std::vector<uint8_t> row;
        for (Poly p : r) row.push_back(p & 1);
        m.push_back(row);
    }
    return m;
}

std::vector<std::vector<uint8_t>> ConvCodeSpec::h_high() const {
    std::vector<std::vector<uint8_t>> m;
    for (std::size_t i = 0; i < parity_check.size(); ++i) {
        std::vector<uint8_t> row;
        for (Poly p : parity_check[i]) row.push_back((p >> row_degrees[i]) & 1);
        m.push_back(row);
    }
    return m;
}

namespace {
int rank_u8(std::vector<std::vector<uint8_t>> m) {
    if (m.empty()) return 0;
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

void ConvCodeSpec::validate() const {
    if (n <= 0 || k < 0 || k >= n + 1) throw DomainError("bad code dimensions");
    int r = n - k;
    if (r > 0) {
        if (rank_u8(h_low()) != r) throw DomainError("H(0) is not full rank");
        if (rank_u8(h_high()) != r) throw DomainError("leading-coefficient matrix is not full rank");
        if (r == 1) {
            Poly g = 0;
            for (Poly p : parity_check[0]) g = poly_gcd(g, p);
            if (g != 1) throw DomainError("parity-check row is not coprime (catastrophic dual)");
        }
    }
    if (nu + r > 28) throw CapacityError("constraint length too large for this implementation");
}

}  // namespace turbobec
