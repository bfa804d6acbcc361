#ifndef TURBOBEC_BITS_HPP
#define TURBOBEC_BITS_HPP

#include <bit>
#include <cstdint>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace turbobec {

/// Dense bit vector over 64-bit words, GF(2) semantics for operator^=.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v) {
        uint64_t m = uint64_t{1} << (i & 63);
        if (v) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { w_[i >> 6] ^= uint64_t{1} << (i & 63); }

    BitVec& operator^=(const BitVec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }
    BitVec& operator|=(const BitVec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    /// True when the two vectors share no set bit.
    bool disjoint(const BitVec& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return false;
        return true;
    }
    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

    bool any() const {
        for (uint64_t w : w_) if (w) return true;
        return false;
    }
    std::size_t popcount() const {
        std::size_t c = 0;
        for (uint64_t w : w_) c += std::popcount(w);
        return c;
    }
    /// Index of the lowest set bit, or npos.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t first_set() const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return i * 64 + std::countr_zero(w_[i]);
        return npos;
    }
    /// Dot product over GF(2).
    bool dot(const BitVec& o) const {
        uint64_t acc = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
        return std::popcount(acc) & 1;
    }
    std::vector<std::size_t> set_bits() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < n_; ++i) if (get(i)) out.push_back(i);
        return out;
    }
    std::string to_string() const {
        std::string s(n_, '0');
        for (std::size_t i = 0; i < n_; ++i) if (get(i)) s[i] = '1';
        return s;
    }
    const std::vector<uint64_t>& words() const { return w_; }

private:
    std::size_t n_ = 0;
    std::vector<uint64_t> w_;
};

/// Row-major matrix over GF(2).
class BinaryMatrix {
public:
    BinaryMatrix() = default;
    BinaryMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), r_(rows, BitVec(cols)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool get(std::size_t i, std::size_t j) const { return r_[i].get(j); }
    void set(std::size_t i, std::size_t j, bool v) { r_[i].set(j, v); }
    BitVec& row(std::size_t i) { return r_[i]; }
    const BitVec& row(std::size_t i) const { return r_[i]; }
    void append_row(const BitVec& v) { r_.push_back(v); ++rows_; }

    /// In-place reduced row echelon form; returns pivot column per pivot row.
    std::vector<std::size_t> rref();

    /// y = x * M (x has rows() bits, result has cols() bits).
    BitVec mul_left(const BitVec& x) const;

    bool operator==(const BinaryMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && r_ == o.r_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<BitVec> r_;
};

/// Rank over GF(2).
std::size_t gf2_rank(BinaryMatrix m);

/// Basis of { x : x * M = 0 } (left kernel of M, x indexed by rows of M).
std::vector<BitVec> left_kernel(const BinaryMatrix& m);

/// One solution of x * M = b together with a basis of the homogeneous space,
/// or nullopt when inconsistent.
struct LinearSolution {
    BitVec particular;
    std::vector<BitVec> kernel;
};
std::optional<LinearSolution> solve_left(const BinaryMatrix& m, const BitVec& b);

}  // namespace turbobec

#endif
