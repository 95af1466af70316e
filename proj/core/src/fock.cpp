#include "intquant/fock.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "intquant/specfun.hpp"

namespace intquant {

double max_abs(const CMatrix& A) {
    double m = 0.0;
    for (Eigen::Index j = 0; j < A.cols(); ++j)
        for (Eigen::Index i = 0; i < A.rows(); ++i) m = std::max(m, std::abs(A(i, j)));
    return m;
}

double block_max_diff(const CMatrix& A, const CMatrix& B, int block) {
    if (A.rows() < block || B.rows() < block || A.cols() < block || B.cols() < block)
        throw std::invalid_argument("block_max_diff: block exceeds matrix size");
    return max_abs(A.topLeftCorner(block, block) - B.topLeftCorner(block, block));
}

namespace {

void require_dim(int dim, int min_dim, const char* who) {
    if (dim < min_dim) throw std::invalid_argument(std::string(who) + ": dim too small");
}

}  // namespace

std::pair<FockOperator, FockOperator> ladder(int dim) {
    require_dim(dim, 2, "ladder");
    FockOperator a = FockOperator::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    FockOperator ad = a.adjoint();
    return {a, ad};
}

FockOperator number_operator(int dim) {
    require_dim(dim, 1, "number_operator");
    FockOperator N = FockOperator::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) N(n, n) = n;
    return N;
}

FockOperator parity(int dim) {
    require_dim(dim, 1, "parity");
    FockOperator P = FockOperator::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) P(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
    return P;
}

FockOperator rotation(double theta, double nu, int dim) {
    require_dim(dim, 1, "rotation");
    FockOperator U = FockOperator::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) U(n, n) = std::polar(1.0, (n + nu) * theta);
    return U;
}

Eigen::MatrixXd displacement_radial(double t, int dim) {
    require_dim(dim, 1, "displacement_radial");
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("displacement_radial: t must be finite, >= 0");
    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(dim, dim);
    if (t == 0.0) {
        R.setIdentity();
        return R;
    }
    const double logt = std::log(t);
    for (int k = 0; k < dim; ++k) {
        // entries (n + k, n) use L_n^{(k)}(t)
        const std::vector<double> L = laguerre_all(dim - 1 - k, k, t);
        for (int n = 0; n + k < dim; ++n) {
            const int m = n + k;
            const double lp = 0.5 * (log_factorial(n) - log_factorial(m)) + 0.5 * k * logt - 0.5 * t;
            const double l = L[n];
            const double v = (l == 0.0) ? 0.0 : std::copysign(std::exp(lp + std::log(std::abs(l))), l);
            R(m, n) = v;
            if (k > 0) R(n, m) = (k % 2 == 0) ? v : -v;
        }
    }
    return R;
}

FockOperator displacement(PhasePoint z, int dim) {
    require_dim(dim, 1, "displacement");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::invalid_argument("displacement: non-finite phase point");
    const double r = std::abs(z);
    if (r == 0.0) return FockOperator::Identity(dim, dim);
    const Eigen::MatrixXd R = displacement_radial(r * r, dim);
    const cplx u = z / r;
    const cplx v = -std::conj(u);
    // phase powers by repeated multiplication keep D(-z) = D(z)^dag bit-exact
    std::vector<cplx> up(dim), vp(dim);
    up[0] = vp[0] = 1.0;
    for (int k = 1; k < dim; ++k) {
        up[k] = up[k - 1] * u;
        vp[k] = vp[k - 1] * v;
    }
    FockOperator D(dim, dim);
    for (int n = 0; n < dim; ++n)
        for (int m = 0; m < dim; ++m) {
            if (m >= n)
                D(m, n) = R(m, n) * up[m - n];
            else
                D(m, n) = R(n, m) * vp[n - m];
        }
    return D;
}

FockOperator boltzmann_density(double s, int dim) {
    require_dim(dim, 1, "boltzmann_density");
    if (!(s <= -1.0) || !std::isfinite(s)) throw std::invalid_argument("boltzmann_density: requires s <= -1");
    const double ratio = (s + 1.0) / (s - 1.0);
    FockOperator rho = FockOperator::Zero(dim, dim);
    double p = 2.0 / (1.0 - s);
    for (int n = 0; n < dim; ++n) {
        rho(n, n) = p;
        p *= ratio;
    }
    return rho;
}

FockOperator position_operator(int dim) {
    auto [a, ad] = ladder(dim);
    return (a + ad) / std::sqrt(2.0);
}

FockOperator momentum_operator_fock(int dim) {
    auto [a, ad] = ladder(dim);
    return (a - ad) / cplx(0.0, std::sqrt(2.0));
}

namespace {

FockOperator quadrature_squared(int dim, double sign) {
    require_dim(dim, 1, "quadrature_squared");
    // (a + sign a^dag)^2 / (2 sign) on the infinite space, restricted.
    FockOperator X = FockOperator::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) {
        X(n, n) = n + 0.5;
        if (n + 2 < dim) {
            const double v = sign * std::sqrt((n + 1.0) * (n + 2.0)) / 2.0;
            X(n, n + 2) = v;
            X(n + 2, n) = v;
        }
    }
    return X;
}

}  // namespace

FockOperator position_squared(int dim) { return quadrature_squared(dim, 1.0); }
FockOperator momentum_squared(int dim) { return quadrature_squared(dim, -1.0); }

FockOperator fundamental_integral(int dim, const PhaseGrid& grid, double s) {
    require_dim(dim, 1, "fundamental_integral");
    FockOperator acc = FockOperator::Zero(dim, dim);
    for (int i = 0; i < grid.radial_count; ++i) {
        const double w = grid.node_weight(i) * std::exp(0.5 * s * grid.t[i]);
        FockOperator ring = FockOperator::Zero(dim, dim);
        for (int j = 0; j < grid.angular_count; ++j) ring += displacement(grid.node(i, j), dim);
        acc += w * ring;
    }
    return acc;
}

FundamentalCheck fundamental_integral_check(int dim, const PhaseGrid& grid, int interior) {
    if (interior < 1 || interior > dim) throw std::invalid_argument("fundamental_integral_check: bad interior block");
    FundamentalCheck c;
    c.integral = fundamental_integral(dim, grid, 0.0);
    c.max_defect = block_max_diff(c.integral, FockOperator(2.0 * parity(dim)), interior);
    return c;
}

}  // namespace intquant
