#include <doctest.h>

#include <cmath>

#include "cswf/errors.hpp"
#include "cswf/shoot_oracle.hpp"
#include "cswf/theta.hpp"

using namespace cswf;

namespace {

const ProblemParams legendre0 = ProblemParams::coulomb(0.0, 0.0, 0.0);
const ProblemParams ref_real = ProblemParams::coulomb(2.0, 0.0, -25.0);
const ProblemParams gswe(2.0, 0.5, -1.0, 4.0);

}  // namespace

TEST_CASE("Frobenius coefficients of the Legendre n = 1 solution terminate") {
    // psi = -x = 1 - (1+x)
    const auto c = frobenius_coefficients(legendre0, 2.0, 6);
    CHECK(c[0] == cplx(1.0));
    CHECK(c[1] == cplx(-1.0));
    for (std::size_t n = 2; n < c.size(); ++n) CHECK(c[n] == cplx(0.0));
}

TEST_CASE("Wronskian mismatch examples") {
    CHECK(std::abs(wronskian_mismatch(legendre0, 2.0)) <= 1e-8);
    CHECK(std::abs(wronskian_mismatch(ref_real, 25.4289571085)) <= 1e-6);
    CHECK(std::abs(wronskian_mismatch(legendre0, 4.0)) >= 0.01);
}

TEST_CASE("oracle eigenvalues") {
    CHECK(std::abs(oracle_eigenvalue(legendre0, 1.8).lambda - 2.0) < 1e-8);
    CHECK(std::abs(oracle_eigenvalue(ref_real, 25.4).lambda - 25.4289571) < 1e-6);
    CHECK(std::abs(oracle_eigenvalue(gswe, 2.5).lambda - 2.472312) < 1e-5);
}

TEST_CASE("oracle is insensitive to the start offset") {
    const cplx a = oracle_eigenvalue(ref_real, 25.4, {.delta = 1e-3}).lambda;
    const cplx b = oracle_eigenvalue(ref_real, 25.4, {.delta = 5e-4}).lambda;
    CHECK(std::abs(a - b) < 1e-9);
}

TEST_CASE("oracle and recurrence agree on a complex eigenvalue") {
    const ProblemParams p = ProblemParams::coulomb(cplx(2.0, 0.05), 0.0, -25.0);
    const cplx lambda(25.4290583061202, 0.3844748369889);
    CHECK(std::abs(oracle_eigenvalue(p, lambda + 0.01).lambda - lambda) < 1e-7);
}

TEST_CASE("bad configurations") {
    CHECK_THROWS_AS(shoot(legendre0, 2.0, {.delta = 0.0}), DomainError);
    CHECK_THROWS_AS(shoot(legendre0, 2.0, {.delta = 1e-3, .step_tol = 1e-10, .max_steps = 3}), IntegratorFailure);
}
