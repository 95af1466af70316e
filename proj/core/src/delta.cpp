#include "intquant/delta.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

#include "intquant/errors.hpp"
#include "intquant/fock.hpp"
#include "intquant/specfun.hpp"
#include "intquant/symbols.hpp"

namespace intquant {

namespace {

bool is_coherent(const FockOperator& rho) {
    if (std::abs(rho(0, 0) - 1.0) > 1e-12) return false;
    for (Eigen::Index j = 0; j < rho.cols(); ++j)
        for (Eigen::Index i = 0; i < rho.rows(); ++i)
            if ((i || j) && std::abs(rho(i, j)) > 1e-12) return false;
    return true;
}

template <class Combo, class Key>
void merge_into(std::map<std::pair<int, int>, Key>& acc, const Combo& c, const Key& scale);

}  // namespace

void validate(const DeltaCombo& combo) {
    std::set<std::pair<int, int>> seen;
    for (const DeltaTerm& t : combo.terms) {
        if (t.r < 0 || t.s < 0) throw std::invalid_argument("DeltaCombo: negative derivative order");
        if (!seen.insert({t.r, t.s}).second)
            throw std::invalid_argument(fmt::format("DeltaCombo: repeated term ({}, {})", t.r, t.s));
    }
    if (!std::isfinite(combo.center.real()) || !std::isfinite(combo.center.imag()))
        throw std::invalid_argument("DeltaCombo: non-finite centre");
}

DeltaCombo to_float(const ExactDeltaCombo& combo) {
    DeltaCombo out;
    for (const ExactDeltaTerm& t : combo) out.terms.push_back({cplx(t.coeff.to_double(), 0.0), t.r, t.s});
    return out;
}

FockOperator to_fock(const ExactOperator& A, int dim) {
    FockOperator M = FockOperator::Zero(dim, dim);
    for (const auto& [ij, v] : A) {
        if (ij.first >= dim || ij.second >= dim)
            throw std::invalid_argument("to_fock: entry outside the requested block");
        M(ij.first, ij.second) = v.to_double();
    }
    return M;
}

ExactOperator projector(int n, int np) {
    if (n < 0 || np < 0) throw std::invalid_argument("projector: negative index");
    return ExactOperator{{{n, np}, Surd(1)}};
}

FockOperator quantize_delta(const DeltaCombo& combo, const FockOperator& rho, int dim) {
    validate(combo);
    if (dim < 1) throw std::invalid_argument("quantize_delta: dim must be >= 1");
    FockOperator A = FockOperator::Zero(dim, dim);
    const bool cs = is_coherent(rho);
    for (const DeltaTerm& t : combo.terms) {
        if (t.r == 0 && t.s == 0) {
            check_density(rho);
            A += t.coeff * displaced_density(rho, combo.center, dim);
            continue;
        }
        if (!cs) throw UnsupportedProbe("quantize_delta: derivative terms need the coherent-state density");
        if (combo.center != PhasePoint{}) throw UnsupportedProbe("quantize_delta: derivative terms need centre 0");
        const int n = t.r, np = t.s;
        const double sign = ((n + np) % 2 == 0) ? 1.0 : -1.0;
        for (int p = 0; p <= std::min(n, np); ++p) {
            const int i = n - p, j = np - p;
            if (i >= dim || j >= dim) continue;
            const double mag = std::exp(log_factorial(n) + log_factorial(np) - log_factorial(p) -
                                        0.5 * (log_factorial(i) + log_factorial(j)));
            A(i, j) += t.coeff * sign * ((p % 2 == 0) ? 1.0 : -1.0) * mag;
        }
    }
    return A;
}

ExactOperator quantize_delta_exact(const ExactDeltaCombo& combo) {
    ExactOperator A;
    for (const ExactDeltaTerm& t : combo) {
        if (t.r < 0 || t.s < 0) throw std::invalid_argument("quantize_delta_exact: negative order");
        const int n = t.r, np = t.s;
        const Rational nf(factorial(n) * factorial(np));
        for (int p = 0; p <= std::min(n, np); ++p) {
            const int i = n - p, j = np - p;
            Rational c = nf / Rational(factorial(p));
            if ((n + np + p) % 2 == 1) c = -c;
            const Surd entry = t.coeff * Surd(c) * Surd::sqrt_of(Rational(1) / Rational(factorial(i) * factorial(j)));
            A[{i, j}] += entry;
        }
    }
    for (auto it = A.begin(); it != A.end();) {
        if (it->second.is_zero())
            it = A.erase(it);
        else
            ++it;
    }
    return A;
}

ExactDeltaCombo dequantize_rank_one(int n, int np) {
    if (n < 0 || np < 0) throw std::invalid_argument("dequantize_rank_one: negative index");
    ExactDeltaCombo out;
    const Surd root = Surd::sqrt_of(Rational(factorial(n) * factorial(np)));
    for (int p = 0; p <= std::min(n, np); ++p) {
        Rational c(1, 1);
        c /= Rational(factorial(p) * factorial(n - p) * factorial(np - p));
        if ((n + np) % 2 == 1) c = -c;
        out.push_back({root * Surd(c), n - p, np - p});
    }
    return out;
}

namespace {

template <class Combo, class Key>
void merge_into(std::map<std::pair<int, int>, Key>& acc, const Combo& c, const Key& scale) {
    for (const auto& t : c) acc[{t.r, t.s}] += scale * Key(t.coeff);
}

}  // namespace

DeltaCombo star_product(const FockOperator& A, const FockOperator& B, int rank_cap, double tol) {
    if (A.cols() != B.rows()) throw std::invalid_argument("star_product: shape mismatch");
    if (rank_cap < 0) throw std::invalid_argument("star_product: rank_cap must be >= 0");
    const CMatrix C = A * B;
    std::map<std::pair<int, int>, cplx> acc;
    for (Eigen::Index j = 0; j < C.cols(); ++j)
        for (Eigen::Index i = 0; i < C.rows(); ++i) {
            if (std::abs(C(i, j)) <= tol) continue;
            if (i > rank_cap || j > rank_cap)
                throw RankCapExceeded(fmt::format(
                    "star_product: AB has support at ({}, {}) beyond rank cap {}; the dequantization series "
                    "does not terminate there",
                    i, j, rank_cap));
            for (const ExactDeltaTerm& t : dequantize_rank_one(static_cast<int>(i), static_cast<int>(j)))
                acc[{t.r, t.s}] += C(i, j) * t.coeff.to_double();
        }
    DeltaCombo out;
    for (const auto& [rs, c] : acc)
        if (c != cplx{}) out.terms.push_back({c, rs.first, rs.second});
    return out;
}

ExactDeltaCombo star_product_exact(const ExactOperator& A, const ExactOperator& B, int rank_cap) {
    ExactOperator C;
    for (const auto& [ik, a] : A)
        for (const auto& [kj, b] : B)
            if (ik.second == kj.first) C[{ik.first, kj.second}] += a * b;
    std::map<std::pair<int, int>, Surd> acc;
    for (const auto& [ij, c] : C) {
        if (c.is_zero()) continue;
        if (ij.first > rank_cap || ij.second > rank_cap)
            throw RankCapExceeded(fmt::format("star_product: AB has support at ({}, {}) beyond rank cap {}",
                                              ij.first, ij.second, rank_cap));
        merge_into(acc, dequantize_rank_one(ij.first, ij.second), c);
    }
    ExactDeltaCombo out;
    for (const auto& [rs, c] : acc)
        if (!c.is_zero()) out.push_back({c, rs.first, rs.second});
    return out;
}

}  // namespace intquant
