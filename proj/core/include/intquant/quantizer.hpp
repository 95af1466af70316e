#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "intquant/phase_function.hpp"
#include "intquant/phase_grid.hpp"
#include "intquant/types.hpp"
#include "intquant/weights.hpp"

namespace intquant {

struct FourierOptions {
    int angles = 256;
    int inner = 64;
    int outer = 64;
    int line_nodes = 96;  // one-dimensional rules for q-only / p-only terms
};

struct QuantizeOptions {
    bool audit = true;
    // audit tolerance on the max entry difference, multiplied by (dim + 1)
    double audit_tol = 1e-9;
    FourierOptions fourier;
};

// A_f = int M(z) f(z) d^2z/pi with M(z) = D(z) M D(z)^dag.
//
// The grid supplies the node counts (R, A); the radial rate is rescaled to the
// decay of the kernel (2 for the Weyl kernel 2 D(2z) P, 1 for trace-class M)
// plus any known decay of f. Step weights quantize polynomials through their
// Weyl germ at the origin and Gaussian sums through the Fourier route.
FockOperator quantize(const PhaseFunction& f, const WeightFunction& w, int dim, const PhaseGrid& grid,
                      const QuantizeOptions& opt = {});

// Direct phase-space sum only (no dispatch, no audit). Requires a trace-class or Weyl kernel.
FockOperator quantize_direct(const PhaseFunction& f, const WeightFunction& w, int dim, const PhaseGrid& grid);

// Exact polynomial quantization from the derivatives of w at the origin:
// A_{zbar^j (-z)^k} = d_eta^j d_etabar^k [w(eta) D(eta)] at eta = 0.
FockOperator quantize_polynomial_exact(const std::vector<PolyTerm>& terms, const WeightFunction& w, int dim);

// A_f = int w(xi) D(xi) fhat(-xi) d^2xi/pi for Gaussian sums, fhat in closed form.
FockOperator quantize_fourier(const PhaseFunction& f, const WeightFunction& w, int dim, const FourierOptions& opt = {});

struct OscillatorQuantization {
    FockOperator A_zzbar;
    FockOperator A_q2;
    FockOperator A_p2;
    double E0 = 0.0;  // lowest eigenvalue of A_zzbar
    double Em = 0.0;  // (min A_q2 + min A_p2)/2 with min Q^2 = min P^2 = 0
};

OscillatorQuantization quantize_oscillator(const WeightFunction& w, int dim);

// Real radial kernel for the direct route: tr-kernel M(z)_mn = K_mn(t) e^{i(m-n) theta}.
struct DirectKernel {
    bool weyl = false;
    std::vector<cplx> mu;  // diagonal of M, trace-class case
    double rate = 1.0;
    CMatrix radial(double t, int dim) const;
};
DirectKernel direct_kernel(const WeightFunction& w, const PhaseGrid& grid);

}  // namespace intquant
