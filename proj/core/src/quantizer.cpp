#include "intquant/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "detail/panels.hpp"
#include "intquant/errors.hpp"
#include "intquant/fock.hpp"
#include "intquant/quadrature.hpp"
#include "intquant/specfun.hpp"

namespace intquant {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTailCut = 1e-17;

bool is_step(const WeightFunction& w) {
    return (w.family == WeightFamily::elliptic_step || w.family == WeightFamily::hyperbolic_step) && w.param > 0.0;
}

// e^{2 pi i idx / A} for idx = 0..A-1
std::vector<cplx> unit_roots(int A) {
    std::vector<cplx> e(A);
    for (int j = 0; j < A; ++j) e[j] = std::polar(1.0, 2.0 * std::numbers::pi * j / A);
    return e;
}

// (a^dag)^x a^y on the dim block; normal ordered, hence an exact restriction.
FockOperator normal_ordered(int x, int y, int dim) {
    FockOperator N = FockOperator::Zero(dim, dim);
    for (int n = y; n < dim; ++n) {
        const int m = n - y + x;
        if (m >= dim) continue;
        N(m, n) = std::exp(0.5 * (log_factorial(n) + log_factorial(m)) - log_factorial(n - y));
    }
    return N;
}

// d_eta^x d_etabar^y D(eta) at 0, D = e^{-|eta|^2/2} e^{eta a^dag} e^{-etabar a}
FockOperator displacement_derivative(int x, int y, int dim) {
    FockOperator T = FockOperator::Zero(dim, dim);
    for (int p = 0; p <= std::min(x, y); ++p) {
        const double c = std::exp(log_factorial(x) + log_factorial(y) - log_factorial(p) - log_factorial(x - p) -
                                  log_factorial(y - p)) *
                         std::pow(-0.5, p) * (((y - p) % 2 == 0) ? 1.0 : -1.0);
        T += c * normal_ordered(x - p, y - p, dim);
    }
    return T;
}

double binom(int n, int k) { return std::round(std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k))); }

double weight_rate(const WeightFunction& w) {
    if (w.family == WeightFamily::cahill_glauber) {
        if (w.param > 0.0)
            throw NonAbsolutelyConvergent(fmt::format("cahill_glauber:{}: weight grows, not supported", w.param));
        return -0.5 * w.param;
    }
    return 0.0;
}

double t_break_for(const WeightFunction& w, double phi) {
    if (w.family == WeightFamily::elliptic_step && w.param > 0.0) return 1.0 / w.param;
    if (w.family == WeightFamily::hyperbolic_step && w.param > 0.0) {
        const double s2 = std::sin(2.0 * phi);
        return s2 > 0.0 ? 1.0 / (w.param * s2) : kInf;
    }
    return kInf;
}

struct LineNode {
    double v;
    double weight;
};

// int_R g(v) dv for g ~ e^{-c v^2} with possible jumps at +-v_break.
std::vector<LineNode> line_rule(double v_break, double c, int n) {
    std::vector<LineNode> out;
    if (!std::isfinite(v_break) || c * v_break * v_break > 80.0) {
        const QuadratureRule gh = gauss_hermite(n);
        const double sc = std::sqrt(c);
        for (int i = 0; i < n; ++i) {
            const double x = gh.nodes[i];
            out.push_back({x / sc, gh.weights[i] * std::exp(x * x) / sc});
        }
        return out;
    }
    const QuadratureRule gl = gauss_legendre(n, -v_break, v_break);
    for (int i = 0; i < n; ++i) out.push_back({gl.nodes[i], gl.weights[i]});
    const LaguerreRule lr = gauss_laguerre(n, 0.0);
    const double lam = std::max(2.0 * c * v_break, std::sqrt(c));
    for (int i = 0; i < n; ++i) {
        const double wt = std::exp(lr.log_weights[i] + lr.nodes[i]) / lam;
        out.push_back({v_break + lr.nodes[i] / lam, wt});
        out.push_back({-(v_break + lr.nodes[i] / lam), wt});
    }
    return out;
}

}  // namespace

CMatrix DirectKernel::radial(double t, int dim) const {
    if (weyl) {
        const Eigen::MatrixXd R = displacement_radial(4.0 * t, dim);
        CMatrix K(dim, dim);
        for (int n = 0; n < dim; ++n)
            for (int m = 0; m < dim; ++m) K(m, n) = 2.0 * R(m, n) * ((n % 2 == 0) ? 1.0 : -1.0);
        return K;
    }
    const int K = static_cast<int>(mu.size());
    const int big = std::max(dim, K);
    const Eigen::MatrixXd R = displacement_radial(t, big);
    const CVector m = Eigen::Map<const CVector>(mu.data(), K);
    const Eigen::MatrixXd Rs = R.block(0, 0, dim, K);
    return Rs.cast<cplx>() * m.asDiagonal() * Rs.transpose().cast<cplx>();
}

DirectKernel direct_kernel(const WeightFunction& w, const PhaseGrid& grid) {
    DirectKernel k;
    if (weyl_germ(w) && !is_step(w)) {
        k.weyl = true;
        k.rate = 2.0;
        return k;
    }
    if (is_step(w))
        throw NonAbsolutelyConvergent(w.name + ": M is not trace class; no direct phase-space kernel");
    const int R = grid.radial_count;
    if (w.family == WeightFamily::cahill_glauber) {
        const double s = w.param;
        if (s > 0.0)
            throw NonAbsolutelyConvergent(
                fmt::format("cahill_glauber:{}: M is unbounded for 0 < s < 1; the integral only converges weakly", s));
        const double r = std::abs((s + 1.0) / (s - 1.0));
        int K = 1;
        if (r > 0.0) K = static_cast<int>(std::ceil(std::log(kTailCut * (1.0 - s) / 2.0) / std::log(r))) + 1;
        if (K > 2 * R - 1)
            throw GridTooCoarse(fmt::format(
                "cahill_glauber:{}: kernel needs {} number states but the radial rule is exact to degree {}", s, K,
                2 * R - 1));
        k.mu = isotropic_weight_diagonal(w, K, R);
        k.rate = 1.0;
        return k;
    }
    if (w.kind == WeightKind::isotropic && w.radial) {
        std::vector<cplx> mu = isotropic_weight_diagonal(w, 2 * R, R);
        double peak = 0.0;
        for (cplx m : mu) peak = std::max(peak, std::abs(m));
        int K = static_cast<int>(mu.size());
        while (K > 1 && std::abs(mu[K - 1]) <= kTailCut * peak) --K;
        if (K >= 2 * R - 1)
            throw NonAbsolutelyConvergent(w.name + ": diagonal of M does not decay; no trace-class kernel");
        mu.resize(K);
        k.mu = std::move(mu);
        k.rate = 1.0;
        return k;
    }
    throw NonAbsolutelyConvergent(w.name + ": generic weights have no supported direct kernel");
}

FockOperator quantize_direct(const PhaseFunction& f, const WeightFunction& w, int dim, const PhaseGrid& grid) {
    if (dim < 1) throw std::invalid_argument("quantize: dim must be >= 1");
    if (f.growth.kind == Growth::gaussian_subcritical)
        throw NonAbsolutelyConvergent("quantize: gaussian_subcritical growth is outside the supported class");
    const DirectKernel kernel = direct_kernel(w, grid);
    const int A = grid.angular_count;
    if (f.poly) {
        const int deg = polynomial_degree(*f.poly);
        if (dim - 1 + deg >= A || (kernel.weyl && dim - 1 + deg > grid.degree))
            throw GridTooCoarse(fmt::format("quantize: grid (R={}, A={}) cannot resolve dim {} with degree {}",
                                            grid.radial_count, A, dim, deg));
    }
    const PhaseGrid g = PhaseGrid::make(grid.radial_count, A, kernel.rate + f.decay_rate);
    const std::vector<cplx> roots = unit_roots(A);

    FockOperator acc = FockOperator::Zero(dim, dim);
    std::vector<cplx> vals(A);
    std::vector<cplx> F(2 * dim - 1);
    for (int i = 0; i < g.radial_count; ++i) {
        for (int j = 0; j < A; ++j) vals[j] = f.eval(g.node(i, j));
        for (int k = -(dim - 1); k <= dim - 1; ++k) {
            cplx s{};
            const int kk = ((k % A) + A) % A;
            for (int j = 0; j < A; ++j) s += vals[j] * roots[(static_cast<long>(kk) * j) % A];
            F[k + dim - 1] = s / static_cast<double>(A);
        }
        const CMatrix K = kernel.radial(g.t[i], dim);
        const double wi = g.radial_weight[i];
        for (int n = 0; n < dim; ++n)
            for (int m = 0; m < dim; ++m) acc(m, n) += wi * K(m, n) * F[m - n + dim - 1];
    }
    return acc;
}

FockOperator quantize_polynomial_exact(const std::vector<PolyTerm>& terms, const WeightFunction& w, int dim) {
    if (dim < 1) throw std::invalid_argument("quantize_polynomial_exact: dim must be >= 1");
    FockOperator A = FockOperator::Zero(dim, dim);
    for (const PolyTerm& term : terms) {
        // z^j zbar^k = (-1)^j zbar^k (-z)^j
        const int x = term.k, y = term.j;
        FockOperator acc = FockOperator::Zero(dim, dim);
        for (int x1 = 0; x1 <= x; ++x1)
            for (int y1 = 0; y1 <= y; ++y1) {
                const auto d = weight_derivative(w, x1, y1);
                if (!d)
                    throw MissingDerivatives(
                        fmt::format("{}: derivative of order ({}, {}) at 0 is not available", w.name, x1, y1));
                if (*d == cplx{}) continue;
                acc += binom(x, x1) * binom(y, y1) * (*d) * displacement_derivative(x - x1, y - y1, dim);
            }
        A += term.coeff * ((term.j % 2 == 0) ? 1.0 : -1.0) * acc;
    }
    return A;
}

FockOperator quantize_fourier(const PhaseFunction& f, const WeightFunction& w, int dim, const FourierOptions& opt) {
    if (dim < 1) throw std::invalid_argument("quantize_fourier: dim must be >= 1");
    if (!f.gaussians) throw NonAbsolutelyConvergent("quantize_fourier: only Gaussian sums have a closed-form transform");
    const double wr = weight_rate(w);
    const double sqrt2pi = std::sqrt(2.0 * std::numbers::pi);
    FockOperator A = FockOperator::Zero(dim, dim);

    for (const GaussianTerm& g : *f.gaussians) {
        if (std::isinf(g.b) || std::isinf(g.a)) {
            // function of q only (b = inf) or of p only (a = inf): the transform is
            // supported on a line through the origin.
            const bool q_only = std::isinf(g.b);
            const double width = q_only ? g.a : g.b;
            const double c = 0.25 + 0.5 * width * width + 0.5 * wr;
            double v_break = kInf;
            if (w.family == WeightFamily::elliptic_step && w.param > 0.0) v_break = std::sqrt(2.0 / w.param);
            FockOperator acc = FockOperator::Zero(dim, dim);
            for (const LineNode& nd : line_rule(v_break, c, opt.line_nodes)) {
                const double v = nd.v;
                const PhasePoint xi = q_only ? PhasePoint(0.0, v / std::sqrt(2.0)) : PhasePoint(v / std::sqrt(2.0), 0.0);
                const cplx phase = q_only ? std::polar(1.0, -g.q0 * v) : std::polar(1.0, g.p0 * v);
                const cplx fh = g.amp * width * sqrt2pi * phase * std::exp(-0.5 * width * width * v * v);
                const cplx wt = nd.weight / (2.0 * std::numbers::pi) * w.eval(xi) * fh;
                if (wt == cplx{}) continue;
                acc += wt * displacement(xi, dim);
            }
            A += acc;
            continue;
        }
        const double a2 = g.a * g.a, b2 = g.b * g.b;
        const auto nodes = detail::polar_panels(
            opt.angles, opt.inner, opt.outer, [&](double phi) { return t_break_for(w, phi); },
            [&](double phi) {
                const double s = std::sin(phi), c = std::cos(phi);
                return 0.5 + wr + a2 * s * s + b2 * c * c;
            });
        FockOperator acc = FockOperator::Zero(dim, dim);
        std::vector<cplx> ph(2 * dim - 1);
        double last_phi = std::numeric_limits<double>::quiet_NaN();
        for (const auto& nd : nodes) {
            if (nd.theta != last_phi) {
                for (int k = -(dim - 1); k <= dim - 1; ++k) ph[k + dim - 1] = std::polar(1.0, k * nd.theta);
                last_phi = nd.theta;
            }
            const double r = std::sqrt(nd.t);
            const PhasePoint xi = std::polar(r, nd.theta);
            const double u = q_of(xi), v = p_of(xi);
            // fhat(-xi) for xi = (u + i v)/sqrt 2
            const cplx fh = g.amp * g.a * g.b * std::polar(1.0, g.p0 * u - g.q0 * v) *
                            std::exp(-0.5 * (a2 * v * v + b2 * u * u));
            const cplx wt = nd.weight * w.eval(xi) * fh;
            if (wt == cplx{}) continue;
            const Eigen::MatrixXd R = displacement_radial(nd.t, dim);
            for (int n = 0; n < dim; ++n)
                for (int m = 0; m < dim; ++m) acc(m, n) += wt * R(m, n) * ph[m - n + dim - 1];
        }
        A += acc;
    }
    return A;
}

OscillatorQuantization quantize_oscillator(const WeightFunction& w, int dim) {
    if (!w.deriv0) throw MissingDerivatives(w.name + ": quantize_oscillator needs derivatives of w at 0");
    const WeightDerivatives& d = *w.deriv0;
    auto [a, ad] = ladder(dim);
    const FockOperator Id = FockOperator::Identity(dim, dim);
    OscillatorQuantization r;
    r.A_zzbar = d.value * number_operator(dim) + d.dz * a - d.dzb * ad + (d.value / 2.0 - d.dzdzb) * Id;
    const cplx shift_q = -d.dzdzb + 0.5 * (d.dz2 + d.dzb2);
    const cplx shift_p = -d.dzdzb - 0.5 * (d.dz2 + d.dzb2);
    r.A_q2 = d.value * position_squared(dim) + (d.dz - d.dzb) * (a + ad) + shift_q * Id;
    r.A_p2 = d.value * momentum_squared(dim) + (d.dz + d.dzb) * (a - ad) + shift_p * Id;

    Eigen::ComplexEigenSolver<CMatrix> es(r.A_zzbar, false);
    double e0 = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) e0 = std::min(e0, es.eigenvalues()(i).real());
    r.E0 = e0;
    // min over the spectrum of w0 x^2 + beta x (infinite Q^2, P^2 have inf spectrum 0)
    const cplx beta_q = std::sqrt(2.0) * (d.dz - d.dzb);
    const cplx beta_p = cplx(0.0, std::sqrt(2.0)) * (d.dz + d.dzb);
    const cplx min_q = shift_q - beta_q * beta_q / (4.0 * d.value);
    const cplx min_p = shift_p - beta_p * beta_p / (4.0 * d.value);
    r.Em = 0.5 * (min_q + min_p).real();
    return r;
}

FockOperator quantize(const PhaseFunction& f, const WeightFunction& w, int dim, const PhaseGrid& grid,
                      const QuantizeOptions& opt) {
    if (is_step(w)) {
        if (f.poly) {
            // polynomials only see the germ of w at 0, where step weights equal 1
            FockOperator A = quantize_direct(f, constant_weight(), dim, grid);
            if (opt.audit) {
                const FockOperator Az = quantize_direct(named_function("zzbar"), constant_weight(), dim, grid);
                const double dev = max_abs(Az - quantize_oscillator(w, dim).A_zzbar);
                if (dev > opt.audit_tol * (dim + 1))
                    throw GridTooCoarse(fmt::format("quantize: grid audit on z zbar failed (deviation {:.3e})", dev));
            }
            return A;
        }
        if (f.gaussians) return quantize_fourier(f, w, dim, opt.fourier);
        throw NonAbsolutelyConvergent(w.name + ": only polynomial and Gaussian phase functions are supported");
    }
    if (w.family == WeightFamily::cahill_glauber && w.param > 0.0) {
        // M is unbounded here; polynomials are still determined by the derivatives at 0
        if (f.poly) return quantize_polynomial_exact(*f.poly, w, dim);
        throw NonAbsolutelyConvergent(w.name + ": only polynomial phase functions are supported for s > 0");
    }
    FockOperator A = quantize_direct(f, w, dim, grid);
    if (opt.audit) {
        const bool fd = !w.deriv0.has_value();
        const WeightFunction wd = with_derivatives(w);
        const FockOperator Az = quantize_direct(named_function("zzbar"), w, dim, grid);
        const double dev = max_abs(Az - quantize_oscillator(wd, dim).A_zzbar);
        const double tol = (fd ? 1e-6 : opt.audit_tol) * (dim + 1);
        if (dev > tol)
            throw GridTooCoarse(fmt::format("quantize: grid audit on z zbar failed (deviation {:.3e} > {:.3e})", dev, tol));
    }
    return A;
}

}  // namespace intquant
