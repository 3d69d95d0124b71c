#pragma once

#include <string>

#include "cswf/precision.hpp"

namespace cswf {

/// 12 significant digits, shortest of fixed/exponent form; "nan", "inf", "-inf".
std::string format_real(double x);
/// Scientific notation with 12 significant digits.
std::string format_sci(double x);
/// "a+bi" / "a-bi" with format_real parts; plain "a" when the imaginary part is 0.
std::string format_complex(cplx z);

/// Parses "a", "bi", "a+bi", "a-bi" (also j and exponents). Throws DomainError.
cplx parse_complex(const std::string& text);

}  // namespace cswf
