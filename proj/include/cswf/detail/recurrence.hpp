#pragma once

#include <complex>

#include "cswf/params.hpp"

namespace cswf::detail {

template <class R>
using complex_of = std::complex<R>;

/// 1/z without std::complex division (which is not defined for every R).
template <class R>
inline complex_of<R> reciprocal(const complex_of<R>& z) {
    const R d = z.real() * z.real() + z.imag() * z.imag();
    return {z.real() / d, -z.imag() / d};
}

template <class R>
inline complex_of<R> widen(cplx z) {
    return {static_cast<R>(z.real()), static_cast<R>(z.imag())};
}

template <class R>
inline cplx narrow(const complex_of<R>& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

/// Per-(params, t) constants of the scalar recurrence.
///
///   a_k = [ ((beta-t) a_{k-1} + ((t-beta)(mu+alpha+1) - (t+beta) k) w_{k-1}) / k
///           - 4 gamma^2 b_{k-1} ] / (k + mu - alpha + 1)
///   b_k = (a_{k-1} - (mu+alpha+1) w_{k-1}) / k
///   w_k = w_{k-1} + b_k
///   Theta_k = Theta_{k-1} + a_k - (beta+t)/(mu+alpha+1) b_k
template <class R>
struct RecurrenceCoeffs {
    complex_of<R> beta_minus_t;
    complex_of<R> beta_plus_t;
    complex_of<R> upper_scale;  // (t-beta)(mu+alpha+1)
    complex_of<R> lower1;       // mu-alpha+1
    complex_of<R> upper1;       // mu+alpha+1
    complex_of<R> four_gamma2;
    complex_of<R> weight;  // (beta+t)/(mu+alpha+1)

    RecurrenceCoeffs(const ProblemParams& p, cplx t_in) {
        const auto mu = widen<R>(p.mu());
        const auto alpha = widen<R>(p.alpha());
        const auto beta = widen<R>(p.beta());
        const auto t = widen<R>(t_in);
        const R one(1);
        beta_minus_t = beta - t;
        beta_plus_t = beta + t;
        lower1 = mu - alpha + one;
        upper1 = mu + alpha + one;
        upper_scale = (t - beta) * upper1;
        four_gamma2 = R(4) * widen<R>(p.gamma2());
        weight = beta_plus_t * reciprocal(upper1);
    }
};

template <class R>
struct State {
    complex_of<R> a;
    complex_of<R> b;
    complex_of<R> w;
    complex_of<R> theta;
};

template <class R>
inline State<R> initial(const RecurrenceCoeffs<R>& c) {
    State<R> s;
    s.a = c.beta_minus_t * reciprocal(c.lower1);
    s.b = complex_of<R>(R(1));
    s.w = complex_of<R>(R(1));
    // theta^T d_0 with d_0 = (a_0, 1)
    s.theta = s.a - c.weight;
    return s;
}

/// One application of the recurrence, producing step k from step k-1.
template <class R>
inline State<R> advance(const State<R>& s, const RecurrenceCoeffs<R>& c, std::size_t k) {
    const R kr = static_cast<R>(k);
    const R inv_k = R(1) / kr;
    const complex_of<R> inv_den = reciprocal(complex_of<R>(kr) + c.lower1);
    State<R> n;
    n.a = inv_den * (inv_k * (c.beta_minus_t * s.a + (c.upper_scale - c.beta_plus_t * kr) * s.w) -
                     c.four_gamma2 * s.b);
    n.b = inv_k * (s.a - c.upper1 * s.w);
    n.w = s.w + n.b;
    n.theta = s.theta + (n.a - c.weight * n.b);
    return n;
}

}  // namespace cswf::detail
