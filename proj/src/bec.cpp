#include "turbobec/bec.hpp"

#include "turbobec/errors.hpp"

namespace turbobec {

ReceivedWord bec_transmit(const BitVec& codeword, double epsilon, uint64_t seed) {
    if (epsilon < 0.0 || epsilon > 1.0) throw DomainError("epsilon must be in [0,1]");
    BecRng rng(seed);
    ReceivedWord r;
    r.symbols.resize(codeword.size());
    for (std::size_t i = 0; i < codeword.size(); ++i)
        r.symbols[i] = rng.uniform01() < epsilon ? Sym::Erased : sym_of_bit(codeword.get(i));
    return r;
}

}  // namespace turbobec
