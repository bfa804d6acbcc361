#ifndef TURBOBEC_ENUMFN_HPP
#define TURBOBEC_ENUMFN_HPP

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>

#include "turbobec/errors.hpp"

namespace turbobec {

using Int = mpz_class;
using Rat = mpq_class;

/// Number of k-dimensional subspaces of an n-dimensional space over GF(2).
Int gaussian_binomial(unsigned k, unsigned n);

/// Ordinary binomial coefficient, exact.
Int binomial(unsigned n, unsigned k);

/// Bivariate polynomial in W (input-support size) and Z (parity-support size)
/// with exact rational coefficients. Sparse: zero coefficients are never stored.
/// Univariate polynomials reuse the W axis with z == 0 throughout.
class EnumFn {
public:
    using Key = std::pair<int, int>;  // (w, z)

    EnumFn() = default;

    const std::map<Key, Rat>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    Rat coeff(int w, int z) const {
        auto it = t_.find({w, z});
        return it == t_.end() ? Rat(0) : it->second;
    }
    void add_term(int w, int z, const Rat& c) {
        if (w < 0 || z < 0) throw DomainError("EnumFn: negative exponent");
        Rat cc = c;
        cc.canonicalize();
        if (cc == 0) return;
        Rat& slot = t_[{w, z}];
        slot += cc;
        if (slot == 0) t_.erase({w, z});
    }

    EnumFn& operator+=(const EnumFn& o) {
        for (auto& [k, c] : o.t_) add_term(k.first, k.second, c);
        return *this;
    }
    friend EnumFn operator+(EnumFn a, const EnumFn& b) { return a += b; }

    friend EnumFn operator*(const EnumFn& a, const EnumFn& b) {
        EnumFn r;
        for (auto& [ka, ca] : a.t_)
            for (auto& [kb, cb] : b.t_)
                r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
        return r;
    }
    EnumFn& operator*=(const Rat& s) {
        if (s == 0) { t_.clear(); return *this; }
        for (auto& [k, c] : t_) c *= s;
        return *this;
    }
    friend EnumFn operator*(EnumFn a, const Rat& s) { return a *= s; }

    bool operator==(const EnumFn& o) const { return t_ == o.t_; }

    int max_w_degree() const;
    int max_z_degree() const;
    int max_total_degree() const;

    /// Exact evaluation at integer points (property tests).
    Rat eval(const Int& W, const Int& Z) const;

    /// True when every stored coefficient is >= 0.
    bool nonnegative() const;

private:
    std::map<Key, Rat> t_;
};

/// Coefficient polynomial of W^w as a polynomial in Z (stored on the z axis).
EnumFn conditional_from_full(const EnumFn& f, int w);

/// Serialization: one `w z numerator denominator` record per line.
void write_enumfn(std::ostream& os, const EnumFn& f);
EnumFn read_enumfn(std::istream& is);

/// Pretty printers. Bivariate groups terms by W power; univariate uses the
/// given variable name and requires all z exponents to be zero.
std::string to_string_bivariate(const EnumFn& f);
std::string to_string_univariate(const EnumFn& f, const std::string& var = "X");
std::string rat_to_string(const Rat& r);

}  // namespace turbobec

#endif
