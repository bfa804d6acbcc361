#include "turbobec/enumfn.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace turbobec {

Int gaussian_binomial(unsigned k, unsigned n) {
    if (k > n) throw DomainError("gaussian_binomial: k > n");
    // [n k]_2 = [n-1 k-1]_2 + 2^k [n-1 k]_2, iteratively row by row.
    std::vector<Int> cur(n + 1), prev(n + 1);
    prev[0] = 1;
    for (unsigned m = 1; m <= n; ++m) {
        cur[0] = 1;
        for (unsigned j = 1; j <= m; ++j) {
            Int two_j;
            mpz_ui_pow_ui(two_j.get_mpz_t(), 2, j);
            cur[j] = prev[j - 1] + two_j * (j <= m - 1 ? prev[j] : Int(0));
        }
        for (unsigned j = m + 1; j <= n; ++j) cur[j] = 0;
        std::swap(cur, prev);
    }
    return prev[k];
}

Int binomial(unsigned n, unsigned k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

int EnumFn::max_w_degree() const {
    int d = -1;
    for (auto& [k, c] : t_) d = std::max(d, k.first);
    return d;
}
int EnumFn::max_z_degree() const {
    int d = -1;
    for (auto& [k, c] : t_) d = std::max(d, k.second);
    return d;
}
int EnumFn::max_total_degree() const {
    int d = -1;
    for (auto& [k, c] : t_) d = std::max(d, k.first + k.second);
    return d;
}

Rat EnumFn::eval(const Int& W, const Int& Z) const {
    Rat acc(0);
    for (auto& [k, c] : t_) {
        Int wp, zp;
        mpz_pow_ui(wp.get_mpz_t(), W.get_mpz_t(), k.first);
        mpz_pow_ui(zp.get_mpz_t(), Z.get_mpz_t(), k.second);
        acc += c * Rat(wp * zp);
    }
    return acc;
}

bool EnumFn::nonnegative() const {
    for (auto& [k, c] : t_)
        if (c < 0) return false;
    return true;
}

EnumFn conditional_from_full(const EnumFn& f, int w) {
    EnumFn out;
    for (auto& [k, c] : f.terms())
        if (k.first == w) out.add_term(0, k.second, c);
    return out;
}

void write_enumfn(std::ostream& os, const EnumFn& f) {
    os << "enumfn v1\n";
    for (auto& [k, c] : f.terms())
        os << k.first << ' ' << k.second << ' ' << c.get_num() << ' ' << c.get_den() << '\n';
}

EnumFn read_enumfn(std::istream& is) {
    std::string header;
    if (!std::getline(is, header) || header != "enumfn v1")
        throw DataError("enumfn: bad header");
    EnumFn f;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        int w, z;
        std::string num, den;
        if (!(ls >> w >> z >> num >> den)) throw DataError("enumfn: bad record: " + line);
        Rat c{Int(num), Int(den)};
        c.canonicalize();
        f.add_term(w, z, c);
    }
    return f;
}

std::string rat_to_string(const Rat& r) {
    std::ostringstream os;
    os << r.get_num();
    if (r.get_den() != 1) os << '/' << r.get_den();
    return os.str();
}

namespace {

void append_power(std::string& s, const std::string& var, int e) {
    if (e == 0) return;
    s += var;
    if (e != 1) s += "^" + std::to_string(e);
}

std::string term_string(const Rat& c, const std::string& vars) {
    if (vars.empty()) return rat_to_string(c);
    if (c == 1) return vars;
    return rat_to_string(c) + "*" + vars;
}

}  // namespace

std::string to_string_univariate(const EnumFn& f, const std::string& var) {
    if (f.is_zero()) return "0";
    std::string out;
    for (auto& [k, c] : f.terms()) {
        if (k.second != 0) throw DomainError("to_string_univariate: nonzero Z exponent");
        std::string vars;
        append_power(vars, var, k.first);
        if (!out.empty()) out += " + ";
        out += term_string(c, vars);
    }
    return out;
}

std::string to_string_bivariate(const EnumFn& f) {
    if (f.is_zero()) return "0";
    // Group by W power, ascending; constant group first.
    std::map<int, EnumFn> byw;
    for (auto& [k, c] : f.terms()) byw[k.first].add_term(0, k.second, c);
    std::string out;
    for (auto& [w, g] : byw) {
        std::string wpart;
        append_power(wpart, "W", w);
        std::string term;
        if (g.terms().size() == 1 || wpart.empty()) {
            // flat form: c*W^w*Z^z per term
            for (auto& [k, c] : g.terms()) {
                std::string zvar;
                append_power(zvar, "Z", k.second);
                std::string vars = wpart;
                if (!zvar.empty()) vars += (vars.empty() ? "" : "*") + zvar;
                if (!term.empty()) term += " + ";
                term += term_string(c, vars);
            }
        } else {
            std::string zpart;
            for (auto& [k, c] : g.terms()) {
                std::string vars;
                append_power(vars, "Z", k.second);
                if (!zpart.empty()) zpart += " + ";
                zpart += term_string(c, vars);
            }
            term = wpart + "*(" + zpart + ")";
        }
        if (!out.empty()) out += " + ";
        out += term;
    }
    return out;
}

}  // namespace turbobec
