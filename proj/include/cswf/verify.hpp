#pragma once

#include <string>
#include <vector>

#include "cswf/precision.hpp"

namespace cswf {

struct VerifyRow {
    std::string suite;
    std::string label;
    cplx value;
    cplx reference;
    double error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// table1, table2, legendre, gswe-fig7, asymptotics.
const std::vector<std::string>& verify_suites();

/// Runs one suite, or every suite for "all". Throws DomainError for an unknown name.
std::vector<VerifyRow> run_verify(const std::string& suite);

}  // namespace cswf
