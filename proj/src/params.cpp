#include "cswf/params.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "cswf/errors.hpp"

namespace cswf {

namespace {

bool is_integer(cplx z) {
    return z.imag() == 0.0 && std::abs(z.real() - std::round(z.real())) <= 1e-12;
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::string describe(cplx z) {
    std::ostringstream os;
    os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return os.str();
}

}  // namespace

double epsilon_of(Precision p) {
    switch (p) {
        case Precision::binary64:
            return std::numeric_limits<double>::epsilon();
        case Precision::extended:
            return static_cast<double>(std::numeric_limits<long double>::epsilon());
        case Precision::quad:
#ifdef CSWF_HAVE_FLOAT128
            return 1.925929944387235853e-34;
#else
            return static_cast<double>(std::numeric_limits<long double>::epsilon());
#endif
    }
    return std::numeric_limits<double>::epsilon();
}

const char* to_string(Precision p) {
    switch (p) {
        case Precision::binary64:
            return "binary64";
        case Precision::extended:
            return "extended";
        case Precision::quad:
            return "quad";
    }
    return "?";
}

ProblemParams::ProblemParams(cplx mu, cplx alpha, cplx beta, cplx gamma2)
    : mu_(mu), alpha_(alpha), beta_(beta), gamma2_(gamma2) {
    if (!finite(mu) || !finite(alpha) || !finite(beta) || !finite(gamma2)) {
        throw DomainError("parameters must be finite");
    }
    if (alpha == cplx(0.0)) {
        if (!(mu.real() > 0.0 || mu == cplx(0.0))) {
            throw DomainError("mu=" + describe(mu) + " unsupported: need Re(mu) > 0 or mu = 0");
        }
        return;
    }
    const cplx lower = mu - alpha;
    const cplx upper = mu + alpha;
    if (!(lower.real() > 0.0) || !(upper.real() > 0.0)) {
        throw DomainError("generalized equation needs Re(mu-alpha) > 0 and Re(mu+alpha) > 0 (mu=" +
                          describe(mu) + ", alpha=" + describe(alpha) + ")");
    }
    if (is_integer(lower) || is_integer(upper)) {
        throw DomainError("generalized equation with integer mu+-alpha is not supported (mu=" +
                          describe(mu) + ", alpha=" + describe(alpha) + ")");
    }
}

bool ProblemParams::is_real() const {
    return mu_.imag() == 0.0 && alpha_.imag() == 0.0 && beta_.imag() == 0.0 && gamma2_.imag() == 0.0;
}

}  // namespace cswf
