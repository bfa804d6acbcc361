#ifndef TURBOBEC_CONV_HPP
#define TURBOBEC_CONV_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "turbobec/errors.hpp"

namespace turbobec {

/// Binary polynomial in D, bit d = coefficient of D^d.
using Poly = uint32_t;

int poly_degree(Poly p);
Poly poly_gcd(Poly a, Poly b);
Poly poly_from_octal(const std::string& s);
std::string poly_to_octal(Poly p);

/// An (n, k, nu) binary convolutional code given by a canonical
/// (n-k) x n polynomial parity-check matrix. Constant matrices (nu = 0)
/// describe block constituents. Column convention: the k information
/// symbols of each period come first within the period.
struct ConvCodeSpec {
    int n = 0;
    int k = 0;
    int nu = 0;
    std::vector<std::vector<Poly>> parity_check;  // (n-k) rows, n cols
    std::vector<int> row_degrees;

    static ConvCodeSpec from_rows(std::vector<std::vector<Poly>> rows);
    /// Rate-1/2 recursive systematic code; h2 (the feedback polynomial)
    /// must have a nonzero constant term.
    static ConvCodeSpec rate_half(Poly h1, Poly h2);
    /// The (7,4) Hamming code in systematic cyclic form, g(x) = 1 + x + x^3.
    static ConvCodeSpec hamming74();
    /// Unconstrained rate-1 code (empty parity-check matrix).
    static ConvCodeSpec rate_one(int n);

    /// H(0).
    std::vector<std::vector<uint8_t>> h_low() const;
    /// Row-degree leading coefficients: diag(D^nu_i) H(D^-1) at D = 0.
    std::vector<std::vector<uint8_t>> h_high() const;

    /// Throws DomainError when the matrix fails the canonicality checks
    /// (full-rank H(0) and leading-coefficient matrix; coprime rows for
    /// single-row matrices).
    void validate() const;
};

}  // namespace turbobec

#endif
