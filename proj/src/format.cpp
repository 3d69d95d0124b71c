#include "cswf/format.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "cswf/errors.hpp"

namespace cswf {

namespace {

bool special(double x, std::string& out) {
    if (std::isnan(x)) {
        out = "nan";
        return true;
    }
    if (std::isinf(x)) {
        out = x > 0 ? "inf" : "-inf";
        return true;
    }
    return false;
}

std::string printf_double(const char* fmt, double x) {
    std::string out;
    if (special(x, out)) return out;
    if (x == 0.0) x = 0.0;  // drop the sign of -0
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, x);
    return buf;
}

double parse_number(const std::string& s, const std::string& whole) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) throw DomainError("invalid complex number '" + whole + "'");
    return v;
}

}  // namespace

std::string format_real(double x) { return printf_double("%.12g", x); }

std::string format_sci(double x) { return printf_double("%.11e", x); }

std::string format_complex(cplx z) {
    if (z.imag() == 0.0) return format_real(z.real());
    std::string im = format_real(std::abs(z.imag()));
    const char sign = (z.imag() < 0.0 || std::signbit(z.imag())) ? '-' : '+';
    return format_real(z.real()) + sign + im + "i";
}

cplx parse_complex(const std::string& text) {
    std::string s;
    for (const char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    if (s.empty()) throw DomainError("empty complex number");
    const char last = s.back();
    if (last != 'i' && last != 'j') return {parse_number(s, text), 0.0};
    s.pop_back();
    // split before the last sign that does not belong to an exponent
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return {0.0, parse_number(s, text)};
    return {parse_number(s.substr(0, split), text), parse_number(s.substr(split), text)};
}

}  // namespace cswf
