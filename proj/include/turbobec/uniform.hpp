#ifndef TURBOBEC_UNIFORM_HPP
#define TURBOBEC_UNIFORM_HPP

#include <vector>

#include "turbobec/enumfn.hpp"
#include "turbobec/turbo.hpp"

namespace turbobec {

enum class SubcodeMode { AllSubcodes, DimensionOne };
enum class TssefMode { Stopping, Codeword };

/// A constituent terminated to the zero vertex at depth I, unpunctured, as a
/// plain block code of length (I/k)*n with the systematic/parity coordinate
/// split. Uniform-interleaver analysis works on this object.
struct ConstituentCode {
    BinaryMatrix gen;  // (I - nu) x delta
    std::vector<int> sys_positions, parity_positions;
};

ConstituentCode terminated_constituent(const ConvCodeSpec& spec, int I);

/// Support-size enumerating function A(W,Z): one term per distinct subcode
/// support (DimensionOne restricts to single-codeword supports, giving the
/// weight-enumerator variant).
EnumFn sirsef_block(const ConstituentCode& code, SubcodeMode mode = SubcodeMode::AllSubcodes);

/// Trellis route to the same function for rate-k=1 convolutional
/// constituents: detours of the extended module composed over the I sections,
/// truncated to total support size <= max_total.
EnumFn sirsef_conv(const ConvCodeSpec& spec, int I, int max_total,
                   SubcodeMode mode = SubcodeMode::AllSubcodes);

/// Uniform-interleaver combination S_w(Z) = A_w^a(Z) A_w^b(Z) / C(I,w).
EnumFn irtssef_uniform(const EnumFn& Aa, const EnumFn& Ab, int I);

/// Size-graded projection s_i = sum_w s_{w,i-w}; Codeword mode adds the
/// conventional constant 1 for the zero codeword.
EnumFn tssef(const EnumFn& S, TssefMode mode = TssefMode::Stopping);

struct InterleaverClass {
    EnumFn irtssef;
    std::vector<EnumFn> wefs;  // distinct WEFs observed in the class
    std::vector<std::vector<int>> perms;
};
struct InterleaverAverage {
    std::vector<InterleaverClass> classes;
    EnumFn average;
};

/// Exhaustive small-I oracle: exact IRTSSEF of the PCCC for every one of the
/// I! interleavers, grouped by equal IRTSSEF, plus their exact average.
/// Requires a nu = 0 block constituent and I <= 6.
InterleaverAverage interleaver_average_oracle(const ConvCodeSpec& constituent, int I);

}  // namespace turbobec

#endif
