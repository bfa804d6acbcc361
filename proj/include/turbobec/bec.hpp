#ifndef TURBOBEC_BEC_HPP
#define TURBOBEC_BEC_HPP

#include <cstdint>
#include <vector>

#include "turbobec/bits.hpp"

namespace turbobec {

enum class Sym : uint8_t { Zero = 0, One = 1, Erased = 2 };

inline Sym sym_of_bit(bool b) { return b ? Sym::One : Sym::Zero; }

struct ReceivedWord {
    std::vector<Sym> symbols;

    std::size_t size() const { return symbols.size(); }
    Sym& operator[](std::size_t i) { return symbols[i]; }
    Sym operator[](std::size_t i) const { return symbols[i]; }
    std::size_t erasure_count() const {
        std::size_t c = 0;
        for (Sym s : symbols) c += (s == Sym::Erased);
        return c;
    }
    std::vector<int> erased_positions() const {
        std::vector<int> out;
        for (std::size_t i = 0; i < symbols.size(); ++i)
            if (symbols[i] == Sym::Erased) out.push_back(static_cast<int>(i));
        return out;
    }
};

/// Portable uniform doubles in [0,1) from a seeded mt19937_64; the same seed
/// gives the same erasure pattern on every platform.
class BecRng {
public:
    explicit BecRng(uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ull) {
        // splitmix-style warmup so nearby seeds decorrelate
        for (int i = 0; i < 4; ++i) next();
    }
    uint64_t next() {
        uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    uint64_t s_;
};

ReceivedWord bec_transmit(const BitVec& codeword, double epsilon, uint64_t seed);

}  // namespace turbobec

#endif
