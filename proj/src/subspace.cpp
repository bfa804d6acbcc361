#include "turbobec/subspace.hpp"

#include <algorithm>
#include <bit>

namespace turbobec {

namespace {
int leading_bit(Word v) { return 31 - std::countl_zero(v); }
}

Basis span_rref(std::vector<Word> vecs) {
    Basis rows;
    for (Word v : vecs) {
        for (Word r : rows)
            if (v & (Word(1) << leading_bit(r))) v ^= r;
        if (v) {
            // insert keeping leading bits strictly decreasing
            rows.push_back(v);
            for (std::size_t i = rows.size(); i-- > 1;)
                if (leading_bit(rows[i]) > leading_bit(rows[i - 1]))
                    std::swap(rows[i], rows[i - 1]);
            // clear the new leading bit from the other rows
            int lb = leading_bit(v);
            for (Word& r : rows)
                if (r != v && (r & (Word(1) << lb))) r ^= v;
        }
    }
    return rows;
}

bool in_span(const Basis& b, Word v) {
    for (Word r : b)
        if (v & (Word(1) << leading_bit(r))) v ^= r;
    return v == 0;
}

std::optional<Word> coords_in_basis(const Basis& b, Word v) {
    Word coords = 0;
    for (std::size_t i = 0; i < b.size(); ++i)
        if (v & (Word(1) << leading_bit(b[i]))) {
            v ^= b[i];
            coords |= Word(1) << i;
        }
    if (v) return std::nullopt;
    return coords;
}

Basis intersect_spans(const Basis& a, const Basis& b) {
    // Spaces here are tiny; enumerate one span and filter.
    std::vector<Word> keep;
    for (Word m = 0; m < (Word(1) << a.size()); ++m) {
        Word v = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            if ((m >> i) & 1) v ^= a[i];
        if (in_span(b, v)) keep.push_back(v);
    }
    return span_rref(std::move(keep));
}

std::vector<Basis> all_subspaces(int dim) {
    std::vector<Basis> out;
    out.push_back({});  // zero subspace
    // Pivot positions chosen as decreasing bit indices; free entries are the
    // non-pivot bits below each pivot.
    std::vector<int> pivots;
    struct Rec {
        int dim;
        std::vector<Basis>* out;
        std::vector<int> pivots;
        void fill(std::size_t row, Basis cur) {
            if (row == pivots.size()) {
                out->push_back(cur);
                return;
            }
            int p = pivots[row];
            std::vector<int> free;
            for (int b = 0; b < p; ++b)
                if (std::find(pivots.begin(), pivots.end(), b) == pivots.end()) free.push_back(b);
            for (Word m = 0; m < (Word(1) << free.size()); ++m) {
                Word v = Word(1) << p;
                for (std::size_t i = 0; i < free.size(); ++i)
                    if ((m >> i) & 1) v |= Word(1) << free[i];
                cur.push_back(v);
                fill(row + 1, cur);
                cur.pop_back();
            }
        }
        void choose(int next, std::size_t want) {
            if (pivots.size() == want) {
                fill(0, {});
                return;
            }
            for (int p = next; p >= 0; --p) {
                pivots.push_back(p);
                choose(p - 1, want);
                pivots.pop_back();
            }
        }
    };
    for (int r = 1; r <= dim; ++r) {
        Rec rec{dim, &out, {}};
        rec.choose(dim - 1, static_cast<std::size_t>(r));
    }
    return out;
}

}  // namespace turbobec
