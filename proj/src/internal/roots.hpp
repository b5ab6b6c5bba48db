#pragma once

#include <complex>
#include <vector>

namespace crl::internal {

/// All complex roots of sum c_i z^i (c.back() != 0) from the companion
/// matrix, each polished by a few guarded Newton steps.
std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& c);

/// Newton refinement of a simple real root; keeps the input when a step
/// does not reduce |p|.
double polish_real_root(const std::vector<double>& c, double x, double tol);

}  // namespace crl::internal
