#pragma once

#include <utility>

#include "intquant/phase_grid.hpp"
#include "intquant/types.hpp"

namespace intquant {

std::pair<FockOperator, FockOperator> ladder(int dim);
FockOperator number_operator(int dim);
FockOperator parity(int dim);
FockOperator rotation(double theta, double nu, int dim);
FockOperator displacement(PhasePoint z, int dim);

// Real matrix R(t) with D_mn(sqrt(t) e^{i theta}) = R_mn(t) e^{i (m-n) theta}.
Eigen::MatrixXd displacement_radial(double t, int dim);

// 2/(1-s) ((s+1)/(s-1))^n on the diagonal, s <= -1.
FockOperator boltzmann_density(double s, int dim);

// Q = (a + a^dag)/sqrt 2, P = (a - a^dag)/(i sqrt 2); these are truncations of the
// infinite operators. The squares below are restrictions of the infinite Q^2, P^2,
// not products of truncated matrices.
FockOperator position_operator(int dim);
FockOperator momentum_operator_fock(int dim);
FockOperator position_squared(int dim);
FockOperator momentum_squared(int dim);

// sum over the grid of e^{s|z|^2/2} D(z) with weights for d^2z/pi. s = 0 gives 2P,
// s = -1 gives |e_0><e_0|. The grid rate should be (1 - s)/2 for exactness.
FockOperator fundamental_integral(int dim, const PhaseGrid& grid, double s = 0.0);

struct FundamentalCheck {
    FockOperator integral;
    double max_defect = 0.0;  // against 2P on the interior block
};
FundamentalCheck fundamental_integral_check(int dim, const PhaseGrid& grid, int interior);

}  // namespace intquant
