// Acceptance suite: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>
#include <fmt/format.h>

#include "intquant/affine.hpp"
#include "intquant/angle.hpp"
#include "intquant/delta.hpp"
#include "intquant/fock.hpp"
#include "intquant/io.hpp"
#include "intquant/quantizer.hpp"
#include "intquant/symbols.hpp"
#include "intquant/weights.hpp"

using namespace intquant;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

FockOperator expm_oracle(PhasePoint z, int dim) {
    auto [a, ad] = ladder(dim);
    const CMatrix G = z * ad - std::conj(z) * a;
    return G.exp();
}

Outcome ac1() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double r = 1.5 * std::sqrt(U(rng));
        const PhasePoint z = std::polar(r, 2.0 * kPi * U(rng));
        // oracle exponentiates a much larger truncation so its own edge error stays away from the block
        const FockOperator ref = expm_oracle(z, 96);
        worst = std::max(worst, block_max_diff(displacement(z, 32), ref, 21));
    }
    return {worst <= 1e-8, fmt::format("max |D - expm| = {:.3e}", worst)};
}

Outcome ac2() {
    const int dim = 32;
    const auto chk = fundamental_integral_check(dim, PhaseGrid::make(64, 128, 0.5), 24);
    const FockOperator damped = fundamental_integral(dim, PhaseGrid::make(64, 128, 1.0), -1.0);
    FockOperator e0 = FockOperator::Zero(dim, dim);
    e0(0, 0) = 1.0;
    const double dd = max_abs(damped - e0);
    return {chk.max_defect <= 1e-8 && dd <= 1e-9, fmt::format("2P defect {:.3e}, |e0><e0| defect {:.3e}", chk.max_defect, dd)};
}

Outcome ac3() {
    const int dim = 32;
    double worst = 0.0, trace_dev = 0.0;
    for (double s : {-0.25, -1.0, -2.0, -4.0}) {
        const FockOperator M = weight_to_operator(cahill_glauber(s), dim, PhaseGrid::make(64, 128, (1.0 - s) / 2.0));
        for (int n = 0; n < dim; ++n) {
            const double ref = 2.0 / (1.0 - s) * std::pow((s + 1.0) / (s - 1.0), n);
            for (int m = 0; m < dim; ++m) worst = std::max(worst, std::abs(M(m, n) - (m == n ? ref : 0.0)));
        }
        if (s <= -1.0) trace_dev = std::max(trace_dev, std::abs(boltzmann_density(s, 64).trace() - 1.0));
    }
    return {worst <= 1e-8 && trace_dev <= 1e-9, fmt::format("max entry error {:.3e}, trace deviation {:.3e}", worst, trace_dev)};
}

Outcome ac4() {
    const int dim = 32, inner = 24;
    const PhaseGrid grid = PhaseGrid::make(kDefaultRadial, kDefaultAngular);
    double worst = 0.0;
    for (double s : {0.0, -1.0, -2.0}) {
        const FockOperator A = quantize(named_function("zzbar"), cahill_glauber(s), dim, grid);
        FockOperator ref = number_operator(dim);
        ref.diagonal().array() += (1.0 - s) / 2.0;
        worst = std::max(worst, block_max_diff(A, ref, inner));
    }
    double gap_dev = 0.0;
    std::string gaps;
    for (const auto& w : {cahill_glauber(-1.0), cahill_glauber(-2.0), isometric_elliptic(0.5)}) {
        const auto osc = quantize_oscillator(w, dim);
        gap_dev = std::max(gap_dev, std::abs(osc.E0 - osc.Em - 0.5));
        gaps += fmt::format(" {}:{:.12f}", w.name, osc.E0 - osc.Em);
    }
    return {worst <= 1e-7 && gap_dev <= 1e-9, fmt::format("max defect {:.3e}; E0-Em{}", worst, gaps)};
}

std::vector<WeightFunction> builtin_weights() {
    return {constant_weight(),        cahill_glauber(-0.5),    cahill_glauber(-1.0),    cahill_glauber(-2.0),
            cahill_glauber(0.5),      isometric_elliptic(0.5), isometric_elliptic(2.0), isometric_hyperbolic(0.3)};
}

Outcome ac5() {
    const int dim = 32, inner = 24;
    const PhaseGrid grid = PhaseGrid::make(kDefaultRadial, kDefaultAngular);
    const auto sampler = default_sampler();
    const FockOperator Q = position_operator(dim), P = momentum_operator_fock(dim);
    const FockOperator iI = cplx(0.0, 1.0) * FockOperator::Identity(dim, dim);
    double worst = 0.0;
    int tested = 0;
    std::string names;
    for (const auto& w : builtin_weights()) {
        if (!classify(w, sampler).regular) continue;
        const FockOperator Aq = quantize(named_function("q"), w, dim, grid);
        const FockOperator Ap = quantize(named_function("p"), w, dim, grid);
        const FockOperator C = Aq * Ap - Ap * Aq;
        worst = std::max({worst, block_max_diff(Aq, Q, inner), block_max_diff(Ap, P, inner), block_max_diff(C, iI, inner)});
        ++tested;
        names += " " + w.name;
    }
    return {tested >= 4 && worst <= 1e-7, fmt::format("{} regular weights:{}; max defect {:.3e}", tested, names, worst)};
}

FockOperator random_rank2(std::mt19937_64& rng, int dim, int support) {
    std::normal_distribution<double> N(0.0, 1.0);
    FockOperator A = FockOperator::Zero(dim, dim);
    for (int r = 0; r < 2; ++r) {
        CVector u = CVector::Zero(dim), v = CVector::Zero(dim);
        for (int n = 0; n < support; ++n) {
            u(n) = cplx(N(rng), N(rng));
            v(n) = cplx(N(rng), N(rng));
        }
        A += u * v.adjoint();
    }
    return A;
}

Outcome ac6() {
    const int dim = 128;
    const WeightFunction w = constant_weight();
    const PhaseGrid grid = PhaseGrid::make(80, 256);
    const std::vector<PolyTerm> deg4 = {{cplx(1.0, 0.0), 2, 2}, {cplx(0.3, -0.2), 3, 1}, {cplx(0.3, 0.2), 1, 3},
                                        {cplx(-0.7, 0.1), 1, 2}, {cplx(0.5, 0.0), 4, 0}, {cplx(0.25, 0.5), 0, 1},
                                        {cplx(1.5, 0.0), 0, 0}};
    const std::vector<PhaseFunction> fs = {named_function("q2"), named_function("zzbar"), polynomial(deg4, "deg4")};
    const PhaseGrid nodes = PhaseGrid::make(10, 20, 8.0);  // 200 nodes with |z| < 2
    double worst = 0.0;
    for (const auto& f : fs) {
        const FockOperator A = quantize(f, w, dim, grid);
        for (int i = 0; i < nodes.radial_count; ++i)
            for (int j = 0; j < nodes.angular_count; ++j) {
                const PhasePoint z = nodes.node(i, j);
                worst = std::max(worst, std::abs(wigner_of_truncation(A, z) - f(z)));
            }
    }
    std::mt19937_64 rng(99);
    double pair_dev = 0.0;
    const std::vector<PhaseFunction> gs = {polynomial(deg4, "deg4"), gaussian(1.3)};
    for (int k = 0; k < 3; ++k) {
        const FockOperator A = random_rank2(rng, 12, 6);
        for (const auto& f : gs)
            for (const auto& wt : {constant_weight(), cahill_glauber(-1.0)}) {
                const DualityPair d = duality_pairing(A, f, wt, grid);
                pair_dev = std::max(pair_dev, std::abs(d.lhs - d.rhs) / std::max(1.0, std::abs(d.rhs)));
            }
    }
    return {worst <= 1e-6 && pair_dev <= 1e-7,
            fmt::format("max |W - f| = {:.3e} over 200 nodes; duality defect {:.3e}", worst, pair_dev)};
}

Outcome ac7() {
    int checked = 0, bad = 0;
    for (int n = 0; n <= 6; ++n)
        for (int np = 0; np <= 6; ++np) {
            ++checked;
            if (!(quantize_delta_exact(dequantize_rank_one(n, np)) == projector(n, np))) ++bad;
        }
    return {bad == 0, fmt::format("{} of {} rank-one operators reproduced exactly", checked - bad, checked)};
}

Outcome ac8() {
    std::string detail;
    bool ok = true;
    {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(angle_operator(64), Eigen::EigenvaluesOnly);
        const double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
        const bool pa = lo >= -0.1 && hi <= 2.0 * kPi + 0.1;
        ok &= pa;
        detail += fmt::format("(a) spectrum [{:.4f}, {:.4f}] {}", lo, hi, pa ? "ok" : "bad");
    }
    {
        const double J = 1e-3;
        double dev = 0.0;
        for (int k = 0; k < 64; ++k) {
            const double g = 2.0 * kPi * k / 64.0;
            const double v = angle_lower_symbol(ActionAnglePoint::make(J, g), default_series_control(J));
            dev = std::max(dev, std::abs(v - (kPi - std::sqrt(kPi * J) * std::sin(g))));
        }
        ok &= dev <= 5e-3;
        detail += fmt::format("; (b) small-J dev {:.2e}", dev);
    }
    {
        const double J = 400.0;
        double dev = 0.0;
        for (double g : {0.5, kPi / 2.0, kPi, 5.0})
            dev = std::max(dev, std::abs(angle_lower_symbol(ActionAnglePoint::make(J, g), default_series_control(J)) - g));
        ok &= dev <= 2e-2;
        const double C = commutator_symbol(ActionAnglePoint::make(J, kPi), default_series_control(J));
        ok &= std::abs(C + 1.0) <= 5e-2;
        detail += fmt::format("; (c) large-J dev {:.2e}; (d) C(400, pi) = {:.5f}", dev, C);
    }
    {
        double lo = 1.0, hi = 0.0;
        for (double J : {1e-3, 0.1, 1.0, 9.0, 100.0, 400.0})
            for (int q = 1; q <= default_q_max(J); ++q) {
                const double d = dq(q, std::sqrt(J));
                lo = std::min(lo, d);
                hi = std::max(hi, d);
            }
        const bool pe = lo > 0.0 && hi <= 1.0;
        ok &= pe;
        detail += fmt::format("; (e) d_q in [{:.3e}, {:.6f}]", lo, hi);
    }
    return {ok, detail};
}

Outcome ac9() {
    const int dim = 96;
    const FockOperator A = angle_operator(dim);
    const FockOperator rho = coherent_density(dim);
    double worst = 0.0;
    for (int a = 1; a <= 10; ++a) {
        const double J = 0.9 * a;
        for (int b = 0; b < 16; ++b) {
            const auto pt = ActionAnglePoint::make(J, 2.0 * kPi * (b + 0.5) / 16.0);
            const double tr = lower_symbol(A, rho, pt.z()).real();
            worst = std::max(worst, std::abs(tr - angle_lower_symbol(pt, default_series_control(J))));
        }
    }
    return {worst <= 1e-6, fmt::format("max |trace - series| = {:.3e} on 10x16 lattice", worst)};
}

Outcome ac10() {
    bool ok = true;
    std::string detail;
    const FiducialVector psi = build_fiducial(1.0, 1.0, HalfLineGrid::make(0.005, 60.0));
    {
        const double cm1 = c_gamma(psi, -1.0);
        double worst = 0.0;
        for (double beta : {0.5, 1.0, 2.0, 3.0}) {
            const auto ft = affine_quantize_position([beta](double x) { return std::pow(x, beta); }, psi);
            const double ref = c_gamma(psi, beta - 1.0) / cm1;
            for (int i = 0; i < psi.grid.size(); i += 7) {
                const double x = psi.grid.x[i];
                if (x < 0.5 || x > 20.0) continue;
                worst = std::max(worst, std::abs(ft[i] / std::pow(x, beta) / ref - 1.0));
            }
        }
        ok &= worst <= 1e-6;
        detail += fmt::format("(a) ratio dev {:.2e}", worst);
    }
    {
        const double K_oracle = 1.1186255578774011272;  // mpmath quadrature, tests/oracles
        const double K11 = kinetic_constant(psi);
        const double K2 = kinetic_constant(build_fiducial(2.0, 0.5, HalfLineGrid::make(0.01, 120.0)));
        const double e1 = std::abs(K11 / K_oracle - 1.0), e2 = std::abs(K2 / K11 - 1.0);
        ok &= e1 <= 1e-6 && e2 <= 1e-5;
        detail += fmt::format("; (b) K = {:.12f} (rel {:.1e}), dilation {:.1e}", K11, e1, e2);
    }
    {
        const FiducialVector ps = build_fiducial(1.0, 1.0, HalfLineGrid::make(0.02, 40.0));
        CVector phi(ps.grid.size());
        double norm2 = 0.0;
        for (int i = 0; i < ps.grid.size(); ++i) {
            phi(i) = std::exp(-0.5 * std::pow(ps.grid.x[i] - 5.0, 2));
            norm2 += ps.grid.h * std::norm(phi(i));
        }
        const double r1 = resolution_check(phi, ps);
        ResolutionBounds wide;
        wide.q_min /= 2.0;
        wide.q_max *= 2.0;
        wide.p_max *= 2.0;
        wide.q_nodes *= 2;
        wide.p_nodes = 2 * wide.p_nodes - 1;
        const double r2 = resolution_check(phi, ps, wide);
        const double d1 = std::abs(r1 / norm2 - 1.0), d2 = std::abs(r2 / norm2 - 1.0);
        ok &= d1 <= 0.01 && d2 <= 0.01 && d2 <= d1 + 1e-6;
        detail += fmt::format("; (c) resolution rel dev {:.2e} -> {:.2e}", d1, d2);
    }
    {
        double worst = 0.0;
        for (double K : {0.75, 1.0, 2.0}) {
            const double e1 = kinetic_operator(HalfLineGrid::make(0.01, 10.0), K).eigenvalues()(0);
            const double e2 = kinetic_operator(HalfLineGrid::make(0.005, 10.0), K).eigenvalues()(0);
            worst = std::max(worst, std::abs(e1 / e2 - 1.0));
        }
        ok &= worst <= 5e-3;
        detail += fmt::format("; (d) h-halving change {:.2e}", worst);
    }
    return {ok, detail};
}

Outcome ac11() {
    const int dim = 48, inner = 24;
    const PhaseGrid grid = PhaseGrid::make(kDefaultRadial, kDefaultAngular);
    const std::vector<PhaseFunction> fs = {
        gaussian_sum({{cplx(1.0, 0.0), 0.4, -0.3, 1.1, 0.8}, {cplx(0.5, 0.5), -0.6, 0.2, 0.7, 0.9}}, "gaussians"),
        polynomial({{cplx(1.0, 0.0), 1, 1}, {cplx(0.4, 0.3), 2, 0}, {cplx(0.2, 0.0), 0, 1}}, "poly")};
    const std::vector<WeightFunction> ws = {constant_weight(), cahill_glauber(-1.0), cahill_glauber(-0.5)};
    const PhasePoint z0(0.35, -0.25);
    const double theta = 0.7;
    const FockOperator D0 = displacement(z0, dim), P = parity(dim), U = rotation(theta, 0.3, dim);
    double tr = 0.0, par = 0.0, rot = 0.0;
    for (const auto& w : ws)
        for (const auto& f : fs) {
            const FockOperator A = quantize(f, w, dim, grid);
            tr = std::max(tr, block_max_diff(quantize(translated(f, z0), w, dim, grid), D0 * A * D0.adjoint(), inner));
            par = std::max(par, block_max_diff(quantize(reflected(f), w, dim, grid), P * A * P, inner));
            rot = std::max(rot, block_max_diff(quantize(rotated(f, theta), w, dim, grid), U * A * U.adjoint(), inner));
        }
    return {std::max({tr, par, rot}) <= 1e-7,
            fmt::format("translation {:.2e}, parity {:.2e}, rotation {:.2e}", tr, par, rot)};
}

Outcome ac12(const std::string& cli_arg) {
    if (cli_arg.empty() || !fs::exists(cli_arg)) return {false, "CLI binary not found"};
    const std::string cli = fs::absolute(cli_arg).string();
    const fs::path root = fs::temp_directory_path() / "intquant_acceptance";
    const std::vector<std::pair<std::string, std::string>> cmds = {
        {"quantize --f zzbar --weight cahill_glauber:-1 --dim 16", "out.json"},
        {"angle symbol --J 0.5 --gamma-steps 32", "out.csv"},
        {"affine kinetic --a 1 --b 1 --h 0.02 --xmax 40 --eigs 4", "out.json"}};
    int k = 0;
    for (const auto& [c, name] : cmds) {
        std::string outs[2];
        for (int r = 0; r < 2; ++r) {
            // same relative output path in two directories, so the embedded config is identical
            const fs::path dir = root / fmt::format("cmd{}_run{}", k, r);
            fs::create_directories(dir);
            const std::string line =
                fmt::format("cd \"{}\" && \"{}\" {} --seed 11 --output {} > /dev/null", dir.string(), cli, c, name);
            if (std::system(line.c_str()) != 0) return {false, "command failed: " + c};
            outs[r] = read_file((dir / name).string());
        }
        if (outs[0] != outs[1] || outs[0].empty()) return {false, "outputs differ for: " + c};
        ++k;
    }
    return {true, fmt::format("{} commands byte-identical across runs", cmds.size())};
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    const std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
        {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4},  {"AC5", ac5},   {"AC6", ac6},
        {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10}, {"AC11", ac11}, {"AC12", [&] { return ac12(cli); }}};
    int failed = 0;
    for (const auto& [name, fn] : checks) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %s  %s  [%.1fs]\n", name.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
