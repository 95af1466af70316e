#include "intquant/phase_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "intquant/specfun.hpp"

namespace intquant {

namespace {

cplx ipow(cplx z, int n) {
    cplx r(1.0, 0.0);
    for (int i = 0; i < n; ++i) r *= z;
    return r;
}

cplx eval_poly(const std::vector<PolyTerm>& terms, PhasePoint z) {
    cplx s{};
    const cplx zb = std::conj(z);
    for (const PolyTerm& t : terms) s += t.coeff * ipow(z, t.j) * ipow(zb, t.k);
    return s;
}

double gauss_factor(double x, double x0, double width) {
    if (std::isinf(width)) return 1.0;
    const double d = x - x0;
    return std::exp(-d * d / (2.0 * width * width));
}

cplx eval_gauss(const std::vector<GaussianTerm>& terms, PhasePoint z) {
    const double q = q_of(z), p = p_of(z);
    cplx s{};
    for (const GaussianTerm& g : terms) s += g.amp * gauss_factor(q, g.q0, g.a) * gauss_factor(p, g.p0, g.b);
    return s;
}

double binom(int n, int k) { return std::round(std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k))); }

std::vector<PolyTerm> merge(const std::map<std::pair<int, int>, cplx>& acc) {
    std::vector<PolyTerm> out;
    for (const auto& [jk, c] : acc)
        if (c != cplx{}) out.push_back({c, jk.first, jk.second});
    return out;
}

double gauss_decay(const std::vector<GaussianTerm>& terms) {
    double d = std::numeric_limits<double>::infinity();
    for (const GaussianTerm& g : terms) {
        // exp(-q^2/(2a^2)) = exp(-t cos^2/a^2) with t = |z|^2
        const double ra = std::isinf(g.a) ? 0.0 : 1.0 / (g.a * g.a);
        const double rb = std::isinf(g.b) ? 0.0 : 1.0 / (g.b * g.b);
        d = std::min(d, std::min(ra, rb));
    }
    return std::isinf(d) ? 0.0 : d;
}

}  // namespace

int polynomial_degree(const std::vector<PolyTerm>& terms) {
    int d = 0;
    for (const PolyTerm& t : terms) d = std::max(d, t.j + t.k);
    return d;
}

PhaseFunction polynomial(std::vector<PolyTerm> terms, std::string name) {
    std::map<std::pair<int, int>, cplx> acc;
    for (const PolyTerm& t : terms) {
        if (t.j < 0 || t.k < 0) throw std::invalid_argument("polynomial: negative power");
        if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag()))
            throw std::invalid_argument("polynomial: non-finite coefficient");
        acc[{t.j, t.k}] += t.coeff;
    }
    PhaseFunction f;
    auto merged = merge(acc);
    f.eval = [merged](PhasePoint z) { return eval_poly(merged, z); };
    f.growth = {Growth::polynomial, polynomial_degree(merged), 0.0};
    f.poly = std::move(merged);
    f.name = std::move(name);
    return f;
}

PhaseFunction gaussian_sum(std::vector<GaussianTerm> terms, std::string name) {
    for (const GaussianTerm& g : terms) {
        if (!(g.a > 0.0) || !(g.b > 0.0)) throw std::invalid_argument("gaussian_sum: widths must be > 0");
        if (std::isinf(g.a) && std::isinf(g.b)) throw std::invalid_argument("gaussian_sum: at least one finite width");
        if (!std::isfinite(g.q0) || !std::isfinite(g.p0)) throw std::invalid_argument("gaussian_sum: non-finite centre");
    }
    PhaseFunction f;
    f.eval = [terms](PhasePoint z) { return eval_gauss(terms, z); };
    f.growth = {Growth::bounded, 0, 0.0};
    f.decay_rate = gauss_decay(terms);
    f.gaussians = std::move(terms);
    f.name = std::move(name);
    return f;
}

PhaseFunction gaussian(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("gaussian: sigma must be > 0");
    return gaussian_sum({GaussianTerm{1.0, 0.0, 0.0, sigma, sigma}}, "gaussian(" + std::to_string(sigma) + ")");
}

PhaseFunction from_callable(std::function<cplx(PhasePoint)> eval, GrowthTag growth, std::string name) {
    if (!eval) throw std::invalid_argument("from_callable: empty evaluator");
    PhaseFunction f;
    f.eval = std::move(eval);
    f.growth = growth;
    f.name = std::move(name);
    return f;
}

PhaseFunction named_function(const std::string& name) {
    const double r = 1.0 / std::sqrt(2.0);
    const cplx I(0.0, 1.0);
    if (name == "one") return polynomial({{1.0, 0, 0}}, name);
    if (name == "z") return polynomial({{1.0, 1, 0}}, name);
    if (name == "zbar") return polynomial({{1.0, 0, 1}}, name);
    if (name == "q") return polynomial({{r, 1, 0}, {r, 0, 1}}, name);
    if (name == "p") return polynomial({{-I * r, 1, 0}, {I * r, 0, 1}}, name);
    // q^2 = (z^2 + 2 z zbar + zbar^2)/2, p^2 = -(z - zbar)^2/2
    if (name == "q2") return polynomial({{0.5, 2, 0}, {1.0, 1, 1}, {0.5, 0, 2}}, name);
    if (name == "p2") return polynomial({{-0.5, 2, 0}, {1.0, 1, 1}, {-0.5, 0, 2}}, name);
    if (name == "zzbar" || name == "zz̄" || name == "zz̄") return polynomial({{1.0, 1, 1}}, "zzbar");
    if (name.rfind("gaussian(", 0) == 0 && name.back() == ')') {
        const std::string arg = name.substr(9, name.size() - 10);
        std::size_t used = 0;
        double sigma = 0.0;
        try {
            sigma = std::stod(arg, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad gaussian width in '" + name + "'");
        }
        if (used != arg.size()) throw std::invalid_argument("bad gaussian width in '" + name + "'");
        return gaussian(sigma);
    }
    throw std::invalid_argument("unknown phase function '" + name + "'");
}

PhaseFunction polynomial_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("polynomial: expected a non-empty list of [re, im, j, k]");
    std::vector<PolyTerm> terms;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 4 || !e[0].is_number() || !e[1].is_number() || !e[2].is_number_integer() ||
            !e[3].is_number_integer())
            throw std::invalid_argument("polynomial: each term must be [re, im, j, k]");
        terms.push_back({cplx(e[0].get<double>(), e[1].get<double>()), e[2].get<int>(), e[3].get<int>()});
    }
    return polynomial(std::move(terms), "polynomial");
}

PhaseFunction translated(const PhaseFunction& f, PhasePoint z0) {
    if (f.poly) {
        // (z - z0)^j (zbar - zbar0)^k expanded binomially
        std::map<std::pair<int, int>, cplx> acc;
        for (const PolyTerm& t : *f.poly)
            for (int a = 0; a <= t.j; ++a)
                for (int b = 0; b <= t.k; ++b)
                    acc[{a, b}] += t.coeff * binom(t.j, a) * binom(t.k, b) * ipow(-z0, t.j - a) *
                                   ipow(-std::conj(z0), t.k - b);
        return polynomial(merge(acc), f.name + "(shifted)");
    }
    if (f.gaussians) {
        auto g = *f.gaussians;
        for (GaussianTerm& t : g) {
            t.q0 += q_of(z0);
            t.p0 += p_of(z0);
        }
        return gaussian_sum(std::move(g), f.name + "(shifted)");
    }
    auto e = f.eval;
    PhaseFunction out = from_callable([e, z0](PhasePoint z) { return e(z - z0); }, f.growth, f.name + "(shifted)");
    return out;
}

PhaseFunction reflected(const PhaseFunction& f) {
    if (f.poly) {
        auto terms = *f.poly;
        for (PolyTerm& t : terms)
            if ((t.j + t.k) % 2 == 1) t.coeff = -t.coeff;
        return polynomial(std::move(terms), f.name + "(reflected)");
    }
    if (f.gaussians) {
        auto g = *f.gaussians;
        for (GaussianTerm& t : g) {
            t.q0 = -t.q0;
            t.p0 = -t.p0;
        }
        return gaussian_sum(std::move(g), f.name + "(reflected)");
    }
    auto e = f.eval;
    PhaseFunction out = from_callable([e](PhasePoint z) { return e(-z); }, f.growth, f.name + "(reflected)");
    out.decay_rate = f.decay_rate;
    return out;
}

PhaseFunction conjugated(const PhaseFunction& f) {
    if (f.poly) {
        auto terms = *f.poly;
        for (PolyTerm& t : terms) {
            t.coeff = std::conj(t.coeff);
            std::swap(t.j, t.k);
        }
        return polynomial(std::move(terms), f.name + "(conj)");
    }
    if (f.gaussians) {
        auto g = *f.gaussians;
        for (GaussianTerm& t : g) t.amp = std::conj(t.amp);
        return gaussian_sum(std::move(g), f.name + "(conj)");
    }
    auto e = f.eval;
    PhaseFunction out = from_callable([e](PhasePoint z) { return std::conj(e(z)); }, f.growth, f.name + "(conj)");
    out.decay_rate = f.decay_rate;
    return out;
}

PhaseFunction rotated(const PhaseFunction& f, double theta) {
    if (f.poly) {
        auto terms = *f.poly;
        for (PolyTerm& t : terms) t.coeff *= std::polar(1.0, -(t.j - t.k) * theta);
        return polynomial(std::move(terms), f.name + "(rotated)");
    }
    if (f.gaussians) {
        bool isotropic = true;
        for (const GaussianTerm& t : *f.gaussians) isotropic = isotropic && (t.a == t.b);
        if (isotropic) {
            auto g = *f.gaussians;
            for (GaussianTerm& t : g) {
                const PhasePoint c = std::polar(1.0, theta) * from_qp(t.q0, t.p0);
                t.q0 = q_of(c);
                t.p0 = p_of(c);
            }
            return gaussian_sum(std::move(g), f.name + "(rotated)");
        }
    }
    auto e = f.eval;
    const cplx u = std::polar(1.0, -theta);
    PhaseFunction out = from_callable([e, u](PhasePoint z) { return e(u * z); }, f.growth, f.name + "(rotated)");
    out.decay_rate = f.decay_rate;
    return out;
}

}  // namespace intquant
