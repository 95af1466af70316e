#include "intquant/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "intquant/errors.hpp"
#include "intquant/fock.hpp"
#include "intquant/quantizer.hpp"

namespace intquant {

void check_density(const FockOperator& rho, double tol) {
    if (rho.rows() != rho.cols() || rho.rows() < 1) throw NotDensity("density: not a square operator");
    const double herm = max_abs(rho - rho.adjoint());
    if (herm > tol) throw NotDensity(fmt::format("density: not Hermitian (defect {:.3e})", herm));
    const cplx tr = rho.trace();
    if (std::abs(tr - 1.0) > tol) throw NotDensity(fmt::format("density: trace {:.17g} is not 1", tr.real()));
    const CMatrix h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol)
        throw NotDensity(fmt::format("density: negative eigenvalue {:.3e}", es.eigenvalues().minCoeff()));
}

FockOperator coherent_density(int dim) {
    if (dim < 1) throw std::invalid_argument("coherent_density: dim must be >= 1");
    FockOperator r = FockOperator::Zero(dim, dim);
    r(0, 0) = 1.0;
    return r;
}

FockOperator displaced_density(const FockOperator& rho, PhasePoint z, int dim) {
    const int k = static_cast<int>(rho.rows());
    const int big = std::max(dim, k);
    const FockOperator D = displacement(z, big);
    const CMatrix Dk = D.block(0, 0, dim, k);
    return Dk * rho * Dk.adjoint();
}

cplx lower_symbol(const FockOperator& A, const FockOperator& rho, PhasePoint z) {
    check_density(rho);
    const int dim = static_cast<int>(A.rows());
    const FockOperator rz = displaced_density(rho, z, dim);
    return (rz.transpose().cwiseProduct(A)).sum();
}

cplx wigner_of_operator(const FockOperator& A, PhasePoint z) {
    const int dim = static_cast<int>(A.rows());
    const FockOperator D2 = displacement(2.0 * z, dim);
    cplx s{};
    // tr(2 D(2z) P A) = 2 sum_{m,n} D_mn (-1)^n A_nm
    for (int n = 0; n < dim; ++n) {
        cplx col{};
        for (int m = 0; m < dim; ++m) col += D2(m, n) * A(n, m);
        s += (n % 2 == 0) ? col : -col;
    }
    return 2.0 * s;
}

cplx wigner_of_truncation(const FockOperator& A, PhasePoint z, int margin) {
    const int dim = static_cast<int>(A.rows());
    if (margin < 0) margin = static_cast<int>(std::ceil(2.0 * std::abs(z) * std::sqrt(double(dim)))) + 25;
    const int L = dim - margin;
    if (L < 16) throw std::invalid_argument("wigner_of_truncation: dim too small for the margin");
    const FockOperator D = displacement(z, dim);
    const FockOperator Dd = displacement(-z, dim);
    const FockOperator B = Dd.topRows(L) * A * D.leftCols(L);
    std::vector<cplx> partial(L);
    cplx s{};
    for (int n = 0; n < L; ++n) {
        s += (n % 2 == 0) ? B(n, n) : -B(n, n);
        partial[n] = s;
    }
    const int rounds = std::min(12, L - 1);
    for (int r = 0; r < rounds; ++r)
        for (int n = 0; n + 1 < L - r; ++n) partial[n] = 0.5 * (partial[n] + partial[n + 1]);
    return 2.0 * partial[L - 1 - rounds];
}

DualityPair duality_pairing(const FockOperator& A, const PhaseFunction& f, const WeightFunction& w,
                            const PhaseGrid& grid) {
    const int dim = static_cast<int>(A.rows());
    DualityPair out{};
    FockOperator Af;
    if (f.poly)
        Af = quantize_polynomial_exact(*f.poly, w, dim);
    else if (f.gaussians)
        Af = quantize_fourier(f, w, dim);
    else
        Af = quantize_direct(f, w, dim, grid);
    out.rhs = (A * Af).trace();

    const DirectKernel kernel = direct_kernel(w, grid);
    const PhaseGrid g = PhaseGrid::make(grid.radial_count, grid.angular_count, kernel.rate + f.decay_rate);
    cplx lhs{};
    for (int i = 0; i < g.radial_count; ++i) {
        cplx ring{};
        if (kernel.weyl) {
            for (int j = 0; j < g.angular_count; ++j) {
                const PhasePoint z = g.node(i, j);
                ring += wigner_of_operator(A, z) * f.eval(z);
            }
        } else {
            const CMatrix K = kernel.radial(g.t[i], dim);
            for (int j = 0; j < g.angular_count; ++j) {
                const PhasePoint z = g.node(i, j);
                const double th = g.theta(j);
                cplx tr{};
                for (int n = 0; n < dim; ++n)
                    for (int m = 0; m < dim; ++m) tr += K(m, n) * std::polar(1.0, (m - n) * th) * A(n, m);
                ring += tr * f.eval(z);
            }
        }
        lhs += g.node_weight(i) * ring;
    }
    out.lhs = lhs;
    return out;
}

std::vector<cplx> symplectic_fourier(const std::function<cplx(PhasePoint)>& f, const PhaseGrid& grid,
                                     const std::vector<PhasePoint>& at) {
    std::vector<cplx> samples(grid.size());
    std::size_t idx = 0;
    for (int i = 0; i < grid.radial_count; ++i)
        for (int j = 0; j < grid.angular_count; ++j) samples[idx++] = f(grid.node(i, j)) * grid.node_weight(i);
    std::vector<cplx> out;
    out.reserve(at.size());
    for (PhasePoint z : at) {
        cplx s{};
        idx = 0;
        for (int i = 0; i < grid.radial_count; ++i)
            for (int j = 0; j < grid.angular_count; ++j) {
                const PhasePoint xi = grid.node(i, j);
                // z xibar - zbar xi = 2 i Im(z xibar)
                s += std::polar(1.0, 2.0 * (z * std::conj(xi)).imag()) * samples[idx++];
            }
        out.push_back(s);
    }
    return out;
}

double density_overlap(const FockOperator& rho, PhasePoint z1, PhasePoint z2) {
    const int dim = static_cast<int>(rho.rows());
    const FockOperator r1 = displaced_density(rho, z1, dim);
    const FockOperator r2 = displaced_density(rho, z2, dim);
    return (r1.transpose().cwiseProduct(r2)).sum().real();
}

}  // namespace intquant
