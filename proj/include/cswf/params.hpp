#pragma once

#include "cswf/precision.hpp"

namespace cswf {

/// Parameters (mu, alpha, beta, gamma^2) of one spheroidal eigenproblem.
///
/// alpha == 0 selects the Coulomb spheroidal equation; alpha != 0 the
/// generalized equation. gamma^2 is stored directly. The constructor rejects
/// parameter sets outside the domain where the theta recurrence is valid:
///   - alpha == 0: Re(mu) > 0 or mu == 0;
///   - alpha != 0: Re(mu - alpha) > 0, Re(mu + alpha) > 0, mu +- alpha not an integer.
class ProblemParams {
public:
    ProblemParams(cplx mu, cplx alpha, cplx beta, cplx gamma2);

    static ProblemParams coulomb(cplx mu, cplx beta, cplx gamma2) { return {mu, 0.0, beta, gamma2}; }

    cplx mu() const { return mu_; }
    cplx alpha() const { return alpha_; }
    cplx beta() const { return beta_; }
    cplx gamma2() const { return gamma2_; }

    bool is_coulomb() const { return alpha_ == cplx(0.0); }
    /// True when mu, alpha, beta and gamma^2 are all real.
    bool is_real() const;

    /// Shift between eigenvalue and recurrence argument: t = lambda - mu(mu+1).
    cplx shift() const { return mu_ * (mu_ + 1.0); }
    cplx t_of(cplx lambda) const { return lambda - shift(); }
    cplx lambda_of(cplx t) const { return t + shift(); }

    ProblemParams with_beta(cplx beta) const { return {mu_, alpha_, beta, gamma2_}; }
    ProblemParams with_gamma2(cplx gamma2) const { return {mu_, alpha_, beta_, gamma2}; }
    /// Same problem after x -> -x: (alpha, beta) -> (-alpha, -beta).
    ProblemParams reflected() const { return {mu_, -alpha_, -beta_, gamma2_}; }

    friend bool operator==(const ProblemParams&, const ProblemParams&) = default;

private:
    cplx mu_;
    cplx alpha_;
    cplx beta_;
    cplx gamma2_;
};

}  // namespace cswf
