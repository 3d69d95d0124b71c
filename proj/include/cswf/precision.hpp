#pragma once

#include <complex>

namespace cswf {

using cplx = std::complex<double>;

/// Floating-point format used inside the theta recurrence.
///
/// The partial sums of the recurrence can exceed the converged value by many
/// orders of magnitude (roughly exp(2*sqrt(|t|)) for positive t), so zeros
/// located with binary64 arithmetic lose digits. Grid scans run in binary64;
/// root polishing and residual checks default to quad.
enum class Precision { binary64, extended, quad };

#if defined(__SIZEOF_FLOAT128__) && defined(__GNUC__) && !defined(__clang__)
#define CSWF_HAVE_FLOAT128 1
using quad_real = __float128;
#else
using quad_real = long double;
#endif

template <Precision P>
struct RealOf;
template <>
struct RealOf<Precision::binary64> {
    using type = double;
};
template <>
struct RealOf<Precision::extended> {
    using type = long double;
};
template <>
struct RealOf<Precision::quad> {
    using type = quad_real;
};

/// Machine epsilon of the format, as a double.
double epsilon_of(Precision p);

const char* to_string(Precision p);

}  // namespace cswf
