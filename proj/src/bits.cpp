#include "turbobec/bits.hpp"

namespace turbobec {

std::vector<std::size_t> BinaryMatrix::rref() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t p = r;
        while (p < rows_ && !r_[p].get(c)) ++p;
        if (p == rows_) continue;
        std::swap(r_[p], r_[r]);
        for (std::size_t i = 0; i < rows_; ++i)
            if (i != r && r_[i].get(c)) r_[i] ^= r_[r];
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

BitVec BinaryMatrix::mul_left(const BitVec& x) const {
    BitVec y(cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        if (x.get(i)) y ^= r_[i];
    return y;
}

std::size_t gf2_rank(BinaryMatrix m) { return m.rref().size(); }

std::vector<BitVec> left_kernel(const BinaryMatrix& m) {
    // Eliminate on [M | I] rows; kernel = identity parts of zero rows of M.
    std::size_t n = m.rows(), c = m.cols();
    std::vector<BitVec> mm, id;
    mm.reserve(n); id.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        mm.push_back(m.row(i));
        BitVec e(n); e.set(i, true);
        id.push_back(e);
    }
    std::size_t r = 0;
    for (std::size_t col = 0; col < c && r < n; ++col) {
        std::size_t p = r;
        while (p < n && !mm[p].get(col)) ++p;
        if (p == n) continue;
        std::swap(mm[p], mm[r]);
        std::swap(id[p], id[r]);
        for (std::size_t i = 0; i < n; ++i)
            if (i != r && mm[i].get(col)) { mm[i] ^= mm[r]; id[i] ^= id[r]; }
        ++r;
    }
    std::vector<BitVec> out;
    for (std::size_t i = r; i < n; ++i) out.push_back(id[i]);
    return out;
}

std::optional<LinearSolution> solve_left(const BinaryMatrix& m, const BitVec& b) {
    // Transpose the problem: solve M^T y = b with y over rows of M.
    std::size_t n = m.rows(), c = m.cols();
    // Augmented columns-of-M elimination in terms of rows: work on M^T.
    BinaryMatrix t(c, n + 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (m.get(i, j)) t.set(j, i, true);
    for (std::size_t j = 0; j < c; ++j) t.set(j, n, b.get(j));
    auto pivots = t.rref();
    BitVec x(n);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == n) return std::nullopt;  // pivot in augmented column
        if (t.get(i, n)) x.set(pivots[i], true);
    }
    return LinearSolution{x, left_kernel(m)};
}

}  // namespace turbobec
