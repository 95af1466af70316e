#include "intquant/affine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/bessel.hpp>
#include <fmt/format.h>

#include "intquant/errors.hpp"

namespace intquant {

namespace {

constexpr double kAuditTol = 1e-6;
constexpr double kTiny = 1e-300;

void check_grid(const HalfLineGrid& g) {
    if (g.x.size() < 4) throw std::invalid_argument("half-line grid needs at least 4 points");
}

// Trapezoid-type sums on the grid and on the 2h subgrid x = 2h, 4h, ...
struct AuditedSum {
    double fine = 0.0;
    double coarse = 0.0;
};

template <class F>
AuditedSum audited_sum(const HalfLineGrid& g, F&& integrand) {
    AuditedSum s;
    for (int i = 0; i < g.size(); ++i) {
        const double v = integrand(i);
        s.fine += g.h * v;
        if (i % 2 == 1) s.coarse += 2.0 * g.h * v;
    }
    return s;
}

double checked(const AuditedSum& s, const char* what) {
    const double rel = std::abs(s.fine - s.coarse) / std::max(std::abs(s.fine), 1e-300);
    if (rel > kAuditTol)
        throw QuadratureUnstable(fmt::format("{}: value changes by {:.3e} (relative) between h and 2h", what, rel));
    return s.fine;
}

// 4-point Lagrange stencil on the grid at y: first index and weights.
int lagrange4_stencil(const HalfLineGrid& g, double y, double l[4]) {
    const int n = g.size();
    const int i0 = std::clamp(static_cast<int>(std::floor(y / g.h)) - 2, 0, n - 4);
    const double s = y / g.h - (i0 + 1.0);
    l[0] = -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0;
    l[1] = s * (s - 2.0) * (s - 3.0) / 2.0;
    l[2] = -s * (s - 1.0) * (s - 3.0) / 2.0;
    l[3] = s * (s - 1.0) * (s - 2.0) / 6.0;
    return i0;
}

double peak_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// psi at an arbitrary y through cubic interpolation of log psi; zero where psi
// is below double range or y is outside the grid with a negligible tail there.
double interpolate_psi(const FiducialVector& psi, double y) {
    const HalfLineGrid& g = psi.grid;
    const double peak = peak_abs(psi.values);
    const double lo = g.x.front(), hi = g.x.back();
    if (y < lo) {
        if (std::abs(psi.values.front()) <= 1e-16 * peak) return 0.0;
        throw InterpolationOutOfRange(fmt::format("affine_cs: x/q = {} lies below the grid", y));
    }
    if (y > hi) {
        if (std::abs(psi.values.back()) <= 1e-16 * peak) return 0.0;
        throw InterpolationOutOfRange(fmt::format("affine_cs: x/q = {} lies beyond the grid", y));
    }
    double l[4];
    const int i0 = lagrange4_stencil(g, y, l);
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) {
        if (psi.values[i0 + k] <= kTiny) return 0.0;
        acc += l[k] * std::log(psi.values[i0 + k]);
    }
    return std::exp(acc);
}

}  // namespace

HalfLineGrid HalfLineGrid::make(double h, double x_max) {
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("HalfLineGrid: h must be > 0");
    if (!(x_max > h) || !std::isfinite(x_max)) throw std::invalid_argument("HalfLineGrid: x_max must exceed h");
    HalfLineGrid g;
    g.h = h;
    const long n = std::lround(x_max / h);
    if (n < 4) throw std::invalid_argument("HalfLineGrid: needs at least 4 points");
    if (n > 20'000'000) throw std::invalid_argument("HalfLineGrid: too many points");
    g.x.resize(n);
    for (long i = 0; i < n; ++i) g.x[i] = (i + 1) * h;
    g.x_max = g.x.back();
    return g;
}

double FiducialVector::operator()(double x) const {
    if (!analytic) throw std::logic_error("FiducialVector: no closed form for sampled fiducials");
    if (x <= 0.0) return 0.0;
    return norm_constant * std::exp(-(a / x + b * x));
}

AffinePoint compose(const AffinePoint& g1, const AffinePoint& g2) { return {g1.q * g2.q, g2.p / g1.q + g1.p}; }

FiducialVector build_fiducial(double a, double b, const HalfLineGrid& grid) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("build_fiducial: a and b must be > 0");
    check_grid(grid);
    const double peak = std::sqrt(a / b);
    if (grid.h > peak / 50.0)
        throw GridUnderresolved(fmt::format("build_fiducial: h = {} does not resolve the peak at {}", grid.h, peak));
    if (grid.x_max < peak)
        throw GridUnderresolved("build_fiducial: grid ends before the peak of psi");
    FiducialVector f;
    f.a = a;
    f.b = b;
    f.grid = grid;
    f.values.resize(grid.size());
    // exponent shifted by its maximum -2 sqrt(ab) to stay in range
    const double shift = 2.0 * std::sqrt(a * b);
    double norm2 = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
        const double x = grid.x[i];
        f.values[i] = std::exp(-(a / x + b * x) + shift);
        norm2 += grid.h * f.values[i] * f.values[i];
    }
    const double tail = f.values.back() / peak_abs(f.values);
    if (tail > 1e-12)
        throw GridUnderresolved(fmt::format("build_fiducial: psi has not decayed at x_max (ratio {:.3e})", tail));
    const double scale = 1.0 / std::sqrt(norm2);
    for (double& v : f.values) v *= scale;
    f.norm_constant = scale * std::exp(shift);
    return f;
}

FiducialVector fiducial_from_samples(std::vector<double> values, const HalfLineGrid& grid) {
    check_grid(grid);
    if (static_cast<int>(values.size()) != grid.size())
        throw std::invalid_argument("fiducial_from_samples: sample count does not match the grid");
    double norm2 = 0.0;
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("fiducial_from_samples: non-finite sample");
        norm2 += grid.h * v * v;
    }
    if (!(norm2 > 0.0)) throw std::invalid_argument("fiducial_from_samples: zero vector");
    FiducialVector f;
    f.analytic = false;
    f.grid = grid;
    const double scale = 1.0 / std::sqrt(norm2);
    for (double& v : values) v *= scale;
    f.values = std::move(values);
    return f;
}

double c_gamma(const FiducialVector& psi, double gamma) {
    if (!std::isfinite(gamma)) throw std::invalid_argument("c_gamma: non-finite gamma");
    const HalfLineGrid& g = psi.grid;
    return checked(audited_sum(g, [&](int i) {
                       const double v = psi.values[i];
                       return v == 0.0 ? 0.0 : v * v * std::pow(g.x[i], -2.0 - gamma);
                   }),
                   "c_gamma");
}

double kinetic_constant(const FiducialVector& psi) {
    const HalfLineGrid& g = psi.grid;
    const int n = g.size();
    std::vector<double> d(n);
    if (psi.analytic) {
        for (int i = 0; i < n; ++i) d[i] = (psi.a / (g.x[i] * g.x[i]) - psi.b) * psi.values[i];
    } else {
        d[0] = (psi.values[1] - psi.values[0]) / g.h;
        d[n - 1] = (psi.values[n - 1] - psi.values[n - 2]) / g.h;
        for (int i = 1; i < n - 1; ++i) d[i] = (psi.values[i + 1] - psi.values[i - 1]) / (2.0 * g.h);
    }
    const double num = checked(audited_sum(g, [&](int i) { return g.x[i] * d[i] * d[i]; }), "kinetic_constant");
    return num / c_gamma(psi, -1.0);
}

double kinetic_constant_closed_form(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("kinetic_constant_closed_form: a, b must be > 0");
    const double s = std::sqrt(a * b);
    return s * boost::math::cyl_bessel_k(1, 4.0 * s) / boost::math::cyl_bessel_k(0, 4.0 * s);
}

std::vector<double> affine_quantize_position(const std::function<double(double)>& f, const FiducialVector& psi) {
    const HalfLineGrid& g = psi.grid;
    const double cm1 = c_gamma(psi, -1.0);
    std::vector<double> out(g.size());
    std::vector<double> w(g.size());
    for (int i = 0; i < g.size(); ++i) w[i] = psi.values[i] * psi.values[i] / g.x[i];
    for (int k = 0; k < g.size(); ++k) {
        const double x = g.x[k];
        const AuditedSum s = audited_sum(g, [&](int i) { return w[i] == 0.0 ? 0.0 : f(x / g.x[i]) * w[i]; });
        if (std::abs(s.fine - s.coarse) > kAuditTol * std::max(std::abs(s.fine), cm1 * 1e-12))
            throw QuadratureUnstable(fmt::format("affine_quantize_position: unstable at x = {}", x));
        out[k] = s.fine / cm1;
    }
    return out;
}

CVector TridiagonalOperator::apply(const CVector& v) const {
    const int n = size();
    if (v.size() != n) throw std::invalid_argument("TridiagonalOperator::apply: size mismatch");
    CVector out(n);
    for (int i = 0; i < n; ++i) {
        cplx s = diag(i) * v(i);
        if (i + 1 < n) s += upper(i) * v(i + 1);
        if (i > 0) s += lower(i - 1) * v(i - 1);
        out(i) = s;
    }
    return out;
}

CMatrix TridiagonalOperator::to_dense() const {
    const int n = size();
    CMatrix M = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        M(i, i) = diag(i);
        if (i + 1 < n) {
            M(i, i + 1) = upper(i);
            M(i + 1, i) = lower(i);
        }
    }
    return M;
}

bool TridiagonalOperator::is_hermitian() const {
    for (int i = 0; i < size(); ++i)
        if (diag(i).imag() != 0.0) return false;
    for (int i = 0; i + 1 < size(); ++i)
        if (upper(i) != std::conj(lower(i))) return false;
    return true;
}

Eigen::VectorXd TridiagonalOperator::eigenvalues() const {
    const int n = size();
    Eigen::VectorXd d(n), e(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i) {
        if (diag(i).imag() != 0.0) throw std::invalid_argument("eigenvalues: operator is not real symmetric");
        d(i) = diag(i).real();
    }
    for (int i = 0; i + 1 < n; ++i) {
        if (upper(i) != lower(i) || upper(i).imag() != 0.0)
            throw std::invalid_argument("eigenvalues: operator is not real symmetric");
        e(i) = upper(i).real();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

TridiagonalOperator momentum_operator(const HalfLineGrid& grid) {
    check_grid(grid);
    const int n = grid.size();
    TridiagonalOperator P;
    P.diag = CVector::Zero(n);
    P.upper = CVector::Constant(n - 1, cplx(0.0, -1.0 / (2.0 * grid.h)));
    P.lower = CVector::Constant(n - 1, cplx(0.0, 1.0 / (2.0 * grid.h)));
    return P;
}

TridiagonalOperator position_operator(const HalfLineGrid& grid) {
    check_grid(grid);
    const int n = grid.size();
    TridiagonalOperator X;
    X.diag = CVector(n);
    for (int i = 0; i < n; ++i) X.diag(i) = grid.x[i];
    X.upper = CVector::Zero(n - 1);
    X.lower = CVector::Zero(n - 1);
    return X;
}

TridiagonalOperator kinetic_operator(const HalfLineGrid& grid, double K) {
    check_grid(grid);
    if (!std::isfinite(K)) throw std::invalid_argument("kinetic_operator: non-finite K");
    const int n = grid.size();
    const double h2 = grid.h * grid.h;
    TridiagonalOperator T;
    T.diag = CVector(n);
    for (int i = 0; i < n; ++i) T.diag(i) = 2.0 / h2 + K / (grid.x[i] * grid.x[i]);
    T.upper = CVector::Constant(n - 1, -1.0 / h2);
    T.lower = T.upper;
    return T;
}

TridiagonalOperator affine_kinetic(const FiducialVector& psi) { return kinetic_operator(psi.grid, kinetic_constant(psi)); }

CVector affine_cs(const AffinePoint& g, const FiducialVector& psi) {
    if (!(g.q > 0.0) || !std::isfinite(g.q) || !std::isfinite(g.p))
        throw std::invalid_argument("affine_cs: requires q > 0");
    const HalfLineGrid& grid = psi.grid;
    CVector out(grid.size());
    const double rq = 1.0 / std::sqrt(g.q);
    for (int i = 0; i < grid.size(); ++i) {
        const double x = grid.x[i];
        const double v = (g.q == 1.0) ? psi.values[i] : interpolate_psi(psi, x / g.q);
        out(i) = std::polar(rq * v, g.p * x);
    }
    return out;
}

CVector apply_affine(const AffinePoint& g, const CVector& phi, const HalfLineGrid& grid) {
    if (!(g.q > 0.0)) throw std::invalid_argument("apply_affine: requires q > 0");
    check_grid(grid);
    if (phi.size() != grid.size()) throw std::invalid_argument("apply_affine: size mismatch");
    double peak = 0.0;
    for (int i = 0; i < grid.size(); ++i) peak = std::max(peak, std::abs(phi(i)));
    const double lo = grid.x.front(), hi = grid.x.back();
    CVector out(grid.size());
    const double rq = 1.0 / std::sqrt(g.q);
    for (int i = 0; i < grid.size(); ++i) {
        const double x = grid.x[i];
        const double y = x / g.q;
        cplx v{};
        if (y < lo) {
            if (std::abs(phi(0)) > 1e-16 * peak)
                throw InterpolationOutOfRange(fmt::format("apply_affine: x/q = {} lies below the grid", y));
        } else if (y > hi) {
            if (std::abs(phi(grid.size() - 1)) > 1e-16 * peak)
                throw InterpolationOutOfRange(fmt::format("apply_affine: x/q = {} lies beyond the grid", y));
        } else {
            double l[4];
            const int i0 = lagrange4_stencil(grid, y, l);
            for (int k = 0; k < 4; ++k) v += l[k] * phi(i0 + k);
        }
        out(i) = std::polar(rq, g.p * x) * v;
    }
    return out;
}

double resolution_check(const CVector& phi, const FiducialVector& psi, const ResolutionBounds& bd) {
    const HalfLineGrid& grid = psi.grid;
    if (phi.size() != grid.size()) throw std::invalid_argument("resolution_check: size mismatch");
    if (!(bd.q_min > 0.0) || !(bd.q_max > bd.q_min) || !(bd.p_max > 0.0) || bd.q_nodes < 2 || bd.p_nodes < 2)
        throw std::invalid_argument("resolution_check: bad bounds");
    double peak = 0.0;
    for (int i = 0; i < phi.size(); ++i) peak = std::max(peak, std::abs(phi(i)));
    std::vector<int> support;
    for (int i = 0; i < phi.size(); ++i)
        if (std::abs(phi(i)) > 1e-17 * peak) support.push_back(i);
    const double cm1 = c_gamma(psi, -1.0);
    const double s0 = std::log(bd.q_min), s1 = std::log(bd.q_max);
    const double ds = (s1 - s0) / (bd.q_nodes - 1);
    const double dp = 2.0 * bd.p_max / (bd.p_nodes - 1);
    const std::size_t m = support.size();
    std::vector<cplx> g(m), cur(m), stepv(m);
    double total = 0.0;
    for (int a = 0; a < bd.q_nodes; ++a) {
        const double q = std::exp(s0 + a * ds);
        const double wq = ((a == 0 || a == bd.q_nodes - 1) ? 0.5 : 1.0) * ds * q;  // dq = q ds
        const double rq = 1.0 / std::sqrt(q);
        for (std::size_t k = 0; k < m; ++k) {
            const int i = support[k];
            const double x = grid.x[i];
            const double pv = psi.analytic ? psi(x / q) : interpolate_psi(psi, x / q);
            g[k] = grid.h * std::conj(phi(i)) * pv * rq;
            cur[k] = std::polar(1.0, -bd.p_max * x);
            stepv[k] = std::polar(1.0, dp * x);
        }
        double pint = 0.0;
        for (int b = 0; b < bd.p_nodes; ++b) {
            cplx s{};
            for (std::size_t k = 0; k < m; ++k) {
                s += g[k] * cur[k];
                cur[k] *= stepv[k];
            }
            pint += ((b == 0 || b == bd.p_nodes - 1) ? 0.5 : 1.0) * dp * std::norm(s);
        }
        total += wq * pint;
    }
    return total / (2.0 * std::numbers::pi * cm1);
}

}  // namespace intquant
