#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "intquant/phase_function.hpp"
#include "intquant/phase_grid.hpp"
#include "intquant/types.hpp"
#include "intquant/weights.hpp"

namespace intquant {

// Throws NotDensity unless rho is Hermitian, positive semidefinite and of unit
// trace, each to tol.
void check_density(const FockOperator& rho, double tol = 1e-9);

FockOperator coherent_density(int dim);  // |e_0><e_0|

// rho(z) = D(z) rho D(z)^dag on a block of size dim; entries are exact because
// D(z) matrix elements are evaluated in closed form.
FockOperator displaced_density(const FockOperator& rho, PhasePoint z, int dim);

// tr(rho(z) A)
cplx lower_symbol(const FockOperator& A, const FockOperator& rho, PhasePoint z);

// W_A(z) = tr(D(z) 2P D(z)^dag A) = tr(2 D(2z) P A)
cplx wigner_of_operator(const FockOperator& A, PhasePoint z);

// Wigner function of the operator whose dim-truncation is A, for banded operators
// such as quantized polynomials. The diagonal of D(z)^dag A D(z) is taken on the
// block below dim - margin and its alternating sum is evaluated by repeated
// averaging of partial sums, which is exact for polynomial growth in n. The
// default margin (-1) is 2|z| sqrt(dim) + 25, past the turning point of D(z) columns.
cplx wigner_of_truncation(const FockOperator& A, PhasePoint z, int margin = -1);

struct DualityPair {
    cplx lhs;  // int tr(M(z) A) f(z) d^2z/pi, by phase-space quadrature
    cplx rhs;  // tr(A A_f), with A_f from an independent route
};
DualityPair duality_pairing(const FockOperator& A, const PhaseFunction& f, const WeightFunction& w,
                            const PhaseGrid& grid);

// fhat(z) = int e^{z xibar - zbar xi} f(xi) d^2xi/pi on the grid, evaluated at each point.
std::vector<cplx> symplectic_fourier(const std::function<cplx(PhasePoint)>& f, const PhaseGrid& grid,
                                     const std::vector<PhasePoint>& at);

// tr(rho(z1) rho(z2))
double density_overlap(const FockOperator& rho, PhasePoint z1, PhasePoint z2);

}  // namespace intquant
