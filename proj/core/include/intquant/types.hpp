#pragma once

#include <complex>

#include <Eigen/Dense>

namespace intquant {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Square operator on span{|e_0>, ..., |e_{dim-1}>}; row = bra index, column = ket index.
using FockOperator = CMatrix;

// z = (q + i p) / sqrt(2)
using PhasePoint = cplx;

inline PhasePoint from_qp(double q, double p) {
    return {q / std::sqrt(2.0), p / std::sqrt(2.0)};
}
inline double q_of(PhasePoint z) { return std::sqrt(2.0) * z.real(); }
inline double p_of(PhasePoint z) { return std::sqrt(2.0) * z.imag(); }

// max |A_mn - B_mn| over m, n < block
double block_max_diff(const CMatrix& A, const CMatrix& B, int block);
double max_abs(const CMatrix& A);

}  // namespace intquant
