#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "intquant/affine.hpp"
#include "intquant/angle.hpp"
#include "intquant/delta.hpp"
#include "intquant/errors.hpp"
#include "intquant/fock.hpp"
#include "intquant/io.hpp"
#include "intquant/quantizer.hpp"
#include "intquant/symbols.hpp"
#include "intquant/version.hpp"
#include "intquant/weights.hpp"

namespace intquant::cli {

using ojson = nlohmann::ordered_json;

namespace {

// thrown for anything the user can fix in the configuration or flags
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// thrown for failed --require-hermitian and similar input checks
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Overrides {
    std::string config_path;
    std::optional<int> dim, grid_radial, grid_angular;
    std::optional<std::string> weight, output, format;
    std::optional<long long> seed;
};

void add_common(CLI::App* sub, Overrides& o) {
    sub->add_option("--config", o.config_path, "flat JSON run configuration");
    sub->add_option("--dim", o.dim, "number-basis truncation");
    sub->add_option("--grid-radial", o.grid_radial, "radial quadrature nodes");
    sub->add_option("--grid-angular", o.grid_angular, "angular quadrature nodes");
    sub->add_option("--weight", o.weight, "weight spec, e.g. cahill_glauber:-1");
    sub->add_option("--output,-o", o.output, "output file ('-' for stdout)");
    sub->add_option("--format", o.format, "json or csv");
    sub->add_option("--seed", o.seed, "seed for randomized data");
}

RunConfig resolve(const Overrides& o) {
    RunConfig cfg;
    if (!o.config_path.empty()) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(read_file(o.config_path));
        } catch (const std::exception& e) {
            throw ConfigError(std::string("config file: ") + e.what());
        }
        apply_config_json(cfg, j);
    }
    if (o.dim) cfg.dim = *o.dim;
    if (o.grid_radial) cfg.grid_radial = *o.grid_radial;
    if (o.grid_angular) cfg.grid_angular = *o.grid_angular;
    if (o.weight) {
        const WeightFunction w = parse_weight(*o.weight);
        const auto colon = o.weight->find(':');
        cfg.weight_family = colon == std::string::npos ? *o.weight : o.weight->substr(0, colon);
        cfg.weight_param = w.param;
    }
    if (o.output) cfg.output = *o.output;
    if (o.format) cfg.format = *o.format;
    if (o.seed) cfg.seed = *o.seed;
    cfg.validate();
    return cfg;
}

WeightFunction config_weight(const RunConfig& cfg) {
    if (cfg.weight_family == "constant") return constant_weight();
    return make_weight(cfg.weight_family, cfg.weight_param);
}

PhaseGrid config_grid(const RunConfig& cfg, double rate = 1.0) {
    return PhaseGrid::make(cfg.grid_radial, cfg.grid_angular, rate);
}

std::string format_or(const RunConfig& cfg, const char* natural) { return cfg.format.empty() ? natural : cfg.format; }

ojson document_config(const RunConfig& cfg, const std::string& command, ojson args) {
    ojson c;
    c["command"] = command;
    const ojson base = cfg.to_json();
    for (auto it = base.begin(); it != base.end(); ++it) c[it.key()] = it.value();
    c["args"] = std::move(args);
    return c;
}

void emit(const RunConfig& cfg, const std::string& content, std::ostream& out) {
    if (cfg.output == "-")
        out << content;
    else {
        try {
            write_file(cfg.output, content);
        } catch (const std::runtime_error& e) {
            throw ConfigError(e.what());
        }
    }
}

void emit_table(const RunConfig& cfg, const CsvTable& t, const ojson& config, const char* natural, std::ostream& out) {
    if (format_or(cfg, natural) == "csv") {
        emit(cfg, csv_document(t, config), out);
        return;
    }
    ojson body;
    body["columns"] = t.header;
    ojson rows = ojson::array();
    for (const auto& r : t.rows) rows.push_back(r);
    body["rows"] = std::move(rows);
    emit(cfg, json_document(body, config), out);
}

void emit_operator(const RunConfig& cfg, const FockOperator& A, const ojson& config, ojson extra, std::ostream& out) {
    if (format_or(cfg, "json") == "csv") {
        CsvTable t{{"m", "n", "re", "im"}, {}};
        for (Eigen::Index m = 0; m < A.rows(); ++m)
            for (Eigen::Index n = 0; n < A.cols(); ++n)
                t.rows.push_back({double(m), double(n), A(m, n).real(), A(m, n).imag()});
        emit(cfg, csv_document(t, config), out);
        return;
    }
    extra["operator"] = operator_to_json(A);
    emit(cfg, json_document(extra, config), out);
}

FockOperator load_operator(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const std::exception& e) {
        throw ConfigError("operator file: " + std::string(e.what()));
    }
    try {
        return operator_from_json(j.contains("operator") ? j.at("operator") : j);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

PhaseFunction phase_function_arg(const std::string& name, const std::string& poly) {
    if (!poly.empty() && !name.empty()) throw ConfigError("give either --f or --poly, not both");
    if (!poly.empty()) {
        try {
            return polynomial_from_json(nlohmann::json::parse(poly));
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("--poly: ") + e.what());
        }
    }
    if (name.empty()) throw ConfigError("missing --f or --poly");
    return named_function(name);
}

int interior_of(int dim) { return std::max(1, (3 * dim) / 4); }

std::vector<double> parse_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError(fmt::format("{}: '{}' is not a number", what, item));
        }
    }
    if (out.empty()) throw ConfigError(fmt::format("{}: empty list", what));
    return out;
}

// rectangular scan of z = x + i y
struct PlaneScan {
    double re_min = -2.0, re_max = 2.0, im_min = -2.0, im_max = 2.0;
    int re_steps = 9, im_steps = 9;

    void add(CLI::App* sub) {
        sub->add_option("--re-min", re_min);
        sub->add_option("--re-max", re_max);
        sub->add_option("--re-steps", re_steps);
        sub->add_option("--im-min", im_min);
        sub->add_option("--im-max", im_max);
        sub->add_option("--im-steps", im_steps);
    }
    void validate() const {
        if (!(std::isfinite(re_min) && std::isfinite(re_max) && std::isfinite(im_min) && std::isfinite(im_max)))
            throw ConfigError("scan bounds must be finite");
        if (re_steps < 1 || im_steps < 1) throw ConfigError("scan steps must be >= 1");
        if (re_max < re_min || im_max < im_min) throw ConfigError("scan range is empty");
    }
    std::vector<PhasePoint> points() const {
        std::vector<PhasePoint> pts;
        for (int a = 0; a < re_steps; ++a)
            for (int b = 0; b < im_steps; ++b) {
                const double x = re_steps == 1 ? re_min : re_min + (re_max - re_min) * a / (re_steps - 1);
                const double y = im_steps == 1 ? im_min : im_min + (im_max - im_min) * b / (im_steps - 1);
                pts.emplace_back(x, y);
            }
        return pts;
    }
    ojson to_json() const {
        return {{"re_min", re_min}, {"re_max", re_max}, {"re_steps", re_steps},
                {"im_min", im_min}, {"im_max", im_max}, {"im_steps", im_steps}};
    }
};

double kernel_rate(const WeightFunction& w) {
    if (w.family == WeightFamily::cahill_glauber) return (1.0 - w.param) / 2.0;
    return 0.5;
}

struct Commands {
    Overrides common;
    std::string f, poly, input, terms_json, density = "cs", kind = "lower", J_list = "1";
    bool require_hermitian = false, truncated = false;
    double herm_tol = 1e-10, center_re = 0.0, center_im = 0.0;
    int n = 0, np = 0, gamma_steps = 64, q_max = 0, eigs = 8;
    double a = 1.0, b = 1.0, h = 0.01, xmax = 40.0, beta = 1.0;
    double bump_center = 5.0, bump_width = 1.0;
    ResolutionBounds bounds;
    PlaneScan scan;
};

int cmd_quantize(Commands& c, std::ostream& out) {
    const RunConfig cfg = resolve(c.common);
    const PhaseFunction f = phase_function_arg(c.f, c.poly);
    const WeightFunction w = config_weight(cfg);
    const PhaseGrid grid = config_grid(cfg);
    const FockOperator A = quantize(f, w, cfg.dim, grid);
    const int inner = interior_of(cfg.dim);
    const double herm = max_abs(A - A.adjoint());
    const FockOperator one = quantize(named_function("one"), w, cfg.dim, grid);
    const double res = block_max_diff(one, FockOperator::Identity(cfg.dim, cfg.dim), inner);
    const WeightClass wc = classify(w, default_sampler(static_cast<std::uint64_t>(cfg.seed)));

    ojson args{{"f", f.name}};
    if (!c.poly.empty()) args["poly"] = c.poly;
    const ojson config = document_config(cfg, "quantize", args);
    ojson extra;
    extra["hermiticity_defect"] = herm;
    extra["identity_defect_interior"] = res;
    extra["interior"] = inner;
    extra["weight_class"] = {{"regular", wc.regular}, {"isometric", wc.isometric}, {"elliptic", wc.elliptic},
                             {"hyperbolic", wc.hyperbolic}};
    emit_operator(cfg, A, config, extra, out);
    if (cfg.output != "-") {
        out << "hermiticity_defect " << format_double(herm) << "\n";
        out << "identity_defect_interior " << format_double(res) << "\n";
    }
    return kOk;
}

int cmd_spectrum(Commands& c, std::ostream& out) {
    const RunConfig cfg = resolve(c.common);
    if (c.input.empty()) throw ConfigError("spectrum: missing --input");
    if (!(c.herm_tol >= 0.0)) throw ConfigError("spectrum: --herm-tol must be >= 0");
    const FockOperator A = load_operator(c.input);
    const double herm = max_abs(A - A.adjoint());
    if (c.require_hermitian && herm > c.herm_tol)
        throw ValidationError(fmt::format("spectrum: operator is not Hermitian (defect {:.3e})", herm));
    std::vector<cplx> ev;
    const Eigen::Index dim = A.rows();
    FockOperator off = A;
    off.diagonal().setZero();
    if (max_abs(off) == 0.0) {
        for (Eigen::Index i = 0; i < dim; ++i) ev.push_back(A(i, i));
    } else if (herm <= c.herm_tol) {
        const FockOperator H = 0.5 * (A + A.adjoint());
        Eigen::SelfAdjointEigenSolver<CMatrix> es(H, Eigen::EigenvaluesOnly);
        for (Eigen::Index i = 0; i < dim; ++i) ev.emplace_back(es.eigenvalues()(i), 0.0);
    } else {
        Eigen::ComplexEigenSolver<CMatrix> es(A, false);
        for (Eigen::Index i = 0; i < dim; ++i) ev.push_back(es.eigenvalues()(i));
    }
    std::stable_sort(ev.begin(), ev.end(), [](cplx x, cplx y) {
        return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
    });
    CsvTable t{{"index", "re", "im"}, {}};
    for (std::size_t i = 0; i < ev.size(); ++i) t.rows.push_back({double(i), ev[i].real(), ev[i].imag()});
    const ojson config = document_config(cfg, "spectrum", {{"input", c.input}, {"require_hermitian", c.require_hermitian},
                                                           {"herm_tol", c.herm_tol}});
    emit_table(cfg, t, config, "csv", out);
    return kOk;
}

SineSeriesControl series_control(double J, int q_max) {
    SineSeriesControl ctl = default_series_control(J);
    if (q_max > 0) ctl.q_max = q_max;
    return ctl;
}

int cmd_symbol_scan(Commands& c, std::ostream& out) {
    const RunConfig cfg = resolve(c.common);
    CsvTable t;
    ojson args{{"kind", c.kind}};
    if (c.kind == "lower") {
        c.scan.validate();
        FockOperator A;
        if (!c.input.empty()) {
            A = load_operator(c.input);
            args["input"] = c.input;
        } else {
            const PhaseFunction f = phase_function_arg(c.f, c.poly);
            A = quantize(f, config_weight(cfg), cfg.dim, config_grid(cfg));
            args["f"] = f.name;
        }
        args["scan"] = c.scan.to_json();
        const FockOperator rho = coherent_density(static_cast<int>(A.rows()));
        t.header = {"re", "im", "symbol_re", "symbol_im"};
        for (PhasePoint z : c.scan.points()) {
            const cplx s = lower_symbol(A, rho, z);
            t.rows.push_back({z.real(), z.imag(), s.real(), s.imag()});
        }
    } else if (c.kind == "angle" || c.kind == "commutator") {
        if (c.gamma_steps < 1) throw ConfigError("--gamma-steps must be >= 1");
        const auto Js = parse_list(c.J_list, "--J");
        for (double J : Js)
            if (!(J >= 0.0) || !std::isfinite(J)) throw ConfigError("--J values must be finite and >= 0");
        args["J"] = Js;
        args["gamma_steps"] = c.gamma_steps;
        args["q_max"] = c.q_max;
        t.header = {"J", "gamma", c.kind == "angle" ? "symbol" : "commutator"};
        for (double J : Js)
            for (int k = 0; k < c.gamma_steps; ++k) {
                const double g = 2.0 * std::numbers::pi * k / c.gamma_steps;
                const auto pt = ActionAnglePoint::make(J, g);
                const auto ctl = series_control(J, c.q_max);
                t.rows.push_back({J, g, c.kind == "angle" ? angle_lower_symbol(pt, ctl) : commutator_symbol(pt, ctl)});
            }
    } else {
        throw ConfigError("--kind must be lower, angle or commutator");
    }
    emit_table(cfg, t, document_config(cfg, "symbol-scan", args), "csv", out);
    return kOk;
}

int cmd_weight_op(Commands& c, std::ostream& out) {
    (void)c;
    const RunConfig cfg = resolve(c.common);
    const WeightFunction w = config_weight(cfg);
    const FockOperator M = weight_to_operator(w, cfg.dim, config_grid(cfg, kernel_rate(w)));
    emit_operator(cfg, M, document_config(cfg, "weight-op", ojson::object()), ojson::object(), out);
    return kOk;
}

FockOperator density_arg(const std::string& spec, int dim) {
    if (spec == "cs") return coherent_density(dim);
    if (spec.rfind("boltzmann:", 0) == 0) {
        double s = 0.0;
        try {
            s = std::stod(spec.substr(10));
        } catch (const std::exception&) {
            throw ConfigError("--density: bad boltzmann parameter");
        }
        return boltzmann_density(s, dim);
    }
    throw ConfigError("--density must be cs or boltzmann:<s>");
}

int cmd_delta(Commands& c, std::ostream& out) {
    const RunConfig cfg = resolve(c.common);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(c.terms_json);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("--terms: ") + e.what());
    }
    if (!j.is_array() || j.empty()) throw ConfigError("--terms must be a non-empty array of [re, im, r, s]");
    DeltaCombo combo;
    combo.center = {c.center_re, c.center_im};
    for (const auto& x : j) {
        if (!x.is_array() || x.size() != 4 || !x[2].is_number_integer() || !x[3].is_number_integer() ||
            !x[0].is_number() || !x[1].is_number())
            throw ConfigError("--terms entries must be [re, im, r, s] with integer r, s");
        combo.terms.push_back({cplx(x[0].get<double>(), x[1].get<double>()), x[2].get<int>(), x[3].get<int>()});
    }
    validate(combo);
    const FockOperator rho = density_arg(c.density, cfg.dim);
    const FockOperator A = quantize_delta(combo, rho, cfg.dim);
    const ojson config = document_config(
        cfg, "delta", {{"terms", j}, {"center_re", c.center_re}, {"center_im", c.center_im}, {"density", c.density}});
    emit_operator(cfg, A, config, ojson::object(), out);
    return kOk;
}

int cmd_dequantize(Commands& c, std::ostream& out) {
    const RunConfig cfg = resolve(c.common);
    if (c.n < 0 || c.np < 0) throw ConfigError("--n and --np must be >= 0");
    const ExactDeltaCombo combo = dequantize_rank_one(c.n, c.np);
    const ojson config = document_config(cfg, "dequantize", {{"n", c.n}, {"np", c.np}});
    if (format_or(cfg, "json") == "csv") {
        CsvTable t{{"r", "s", "coeff"}, {}};
        for (const auto& term : combo) t.rows.push_back({double(term.r), double(term.s), term.coeff.to_double()});
        emit(cfg, csv_document(t, config), out);
        return kOk;
    }
    ojson terms = ojson::array();
    for (const auto& term : combo)
        terms.push_back({{"r", term.r}, {"s", term.s}, {"coeff", term.coeff.str()}, {"value", term.coeff.to_double()}});
    // exact check that the combination quantizes back to the projector
    const bool round_trip = quantize_delta_exact(combo) == projector(c.n, c.np);
    emit(cfg, json_document({{"terms", terms}, {"round_trip_exact", round_trip}}, config), out);
    return kOk;
}

int cmd_wigner(Commands& c, std::ostream& out) {
    const RunConfig cfg = resolve(c.common);
    c.scan.validate();
    FockOperator A;
    ojson args;
    if (!c.input.empty()) {
        A = load_operator(c.input);
        args["input"] = c.input;
    } else {
        const PhaseFunction f = phase_function_arg(c.f, c.poly);
        A = quantize(f, config_weight(cfg), cfg.dim, config_grid(cfg));
        args["f"] = f.name;
    }
    args["truncated"] = c.truncated;
    args["scan"] = c.scan.to_json();
    CsvTable t{{"re", "im", "wigner_re", "wigner_im"}, {}};
    for (PhasePoint z : c.scan.points()) {
        const cplx v = c.truncated ? wigner_of_truncation(A, z) : wigner_of_operator(A, z);
        t.rows.push_back({z.real(), z.imag(), v.real(), v.imag()});
    }
    emit_table(cfg, t, document_config(cfg, "wigner", args), "csv", out);
    return kOk;
}

int cmd_angle_matrix(Commands& c, std::ostream& out) {
    const RunConfig cfg = resolve(c.common);
    emit_operator(cfg, angle_operator(cfg.dim), document_config(cfg, "angle matrix", ojson::object()), ojson::object(), out);
    return kOk;
}

int cmd_angle_scan(Commands& c, std::ostream& out, bool commutator) {
    c.kind = commutator ? "commutator" : "angle";
    const RunConfig cfg = resolve(c.common);
    if (c.gamma_steps < 1) throw ConfigError("--gamma-steps must be >= 1");
    if (c.q_max < 0) throw ConfigError("--q-max must be >= 0");
    const auto Js = parse_list(c.J_list, "--J");
    for (double J : Js)
        if (!(J >= 0.0) || !std::isfinite(J)) throw ConfigError("--J values must be finite and >= 0");
    CsvTable t{{"J", "gamma", commutator ? "commutator" : "symbol"}, {}};
    for (double J : Js)
        for (int k = 0; k < c.gamma_steps; ++k) {
            const double g = 2.0 * std::numbers::pi * k / c.gamma_steps;
            const auto pt = ActionAnglePoint::make(J, g);
            const auto ctl = series_control(J, c.q_max);
            t.rows.push_back({J, g, commutator ? commutator_symbol(pt, ctl) : angle_lower_symbol(pt, ctl)});
        }
    const ojson config = document_config(cfg, commutator ? "angle commutator-scan" : "angle symbol",
                                         {{"J", Js}, {"gamma_steps", c.gamma_steps}, {"q_max", c.q_max}});
    emit_table(cfg, t, config, "csv", out);
    return kOk;
}

ojson affine_args(const Commands& c) { return {{"a", c.a}, {"b", c.b}, {"h", c.h}, {"xmax", c.xmax}}; }

int cmd_affine_kinetic(Commands& c, std::ostream& out) {
    const RunConfig cfg = resolve(c.common);
    if (c.eigs < 0) throw ConfigError("--eigs must be >= 0");
    const FiducialVector psi = build_fiducial(c.a, c.b, HalfLineGrid::make(c.h, c.xmax));
    const double K = kinetic_constant(psi);
    ojson cg = ojson::object();
    for (double g : {-2.0, -1.0, -0.5, 0.0, 1.0, 2.0}) cg[format_double(g)] = c_gamma(psi, g);
    const auto ev = kinetic_operator(psi.grid, K).eigenvalues();
    std::vector<double> low;
    for (int i = 0; i < std::min<int>(c.eigs, static_cast<int>(ev.size())); ++i) low.push_back(ev(i));
    ojson args = affine_args(c);
    args["eigs"] = c.eigs;
    const ojson config = document_config(cfg, "affine kinetic", args);
    if (format_or(cfg, "json") == "csv") {
        CsvTable t{{"index", "eigenvalue"}, {}};
        for (std::size_t i = 0; i < low.size(); ++i) t.rows.push_back({double(i), low[i]});
        emit(cfg, csv_document(t, config), out);
        return kOk;
    }
    ojson body;
    body["K"] = K;
    body["K_closed_form"] = kinetic_constant_closed_form(c.a, c.b);
    body["c_gamma"] = cg;
    body["eigenvalues"] = low;
    emit(cfg, json_document(body, config), out);
    return kOk;
}

int cmd_affine_symbol(Commands& c, std::ostream& out) {
    const RunConfig cfg = resolve(c.common);
    if (c.f != "q^beta") throw ConfigError("affine symbol: --f must be q^beta");
    if (!std::isfinite(c.beta)) throw ConfigError("--beta must be finite");
    const FiducialVector psi = build_fiducial(c.a, c.b, HalfLineGrid::make(c.h, c.xmax));
    const double beta = c.beta;
    const auto ft = affine_quantize_position([beta](double x) { return std::pow(x, beta); }, psi);
    CsvTable t{{"x", "ftilde", "ratio"}, {}};
    for (int i = 0; i < psi.grid.size(); ++i) {
        const double x = psi.grid.x[i];
        t.rows.push_back({x, ft[i], ft[i] / std::pow(x, beta)});
    }
    ojson args = affine_args(c);
    args["f"] = c.f;
    args["beta"] = c.beta;
    emit_table(cfg, t, document_config(cfg, "affine symbol", args), "csv", out);
    return kOk;
}

int cmd_affine_resolution(Commands& c, std::ostream& out) {
    const RunConfig cfg = resolve(c.common);
    if (!(c.bump_width > 0.0)) throw ConfigError("--width must be > 0");
    const FiducialVector psi = build_fiducial(c.a, c.b, HalfLineGrid::make(c.h, c.xmax));
    CVector phi(psi.grid.size());
    double norm2 = 0.0;
    for (int i = 0; i < psi.grid.size(); ++i) {
        const double u = (psi.grid.x[i] - c.bump_center) / c.bump_width;
        phi(i) = std::exp(-0.5 * u * u);
        norm2 += psi.grid.h * std::norm(phi(i));
    }
    const double v = resolution_check(phi, psi, c.bounds);
    ojson args = affine_args(c);
    args["center"] = c.bump_center;
    args["width"] = c.bump_width;
    args["bounds"] = {{"q_min", c.bounds.q_min}, {"q_max", c.bounds.q_max}, {"p_max", c.bounds.p_max},
                      {"q_nodes", c.bounds.q_nodes}, {"p_nodes", c.bounds.p_nodes}};
    const ojson config = document_config(cfg, "affine resolution", args);
    if (format_or(cfg, "json") == "csv") {
        emit(cfg, csv_document({{"norm2", "resolution", "relative_deviation"}, {{norm2, v, v / norm2 - 1.0}}}, config), out);
        return kOk;
    }
    emit(cfg, json_document({{"norm2", norm2}, {"resolution", v}, {"relative_deviation", v / norm2 - 1.0}}, config), out);
    return kOk;
}

int exit_for(const Error& e) {
    if (dynamic_cast<const NotDensity*>(&e) || dynamic_cast<const MissingDerivatives*>(&e) ||
        dynamic_cast<const UnsupportedProbe*>(&e) || dynamic_cast<const RankCapExceeded*>(&e))
        return kValidationError;
    return kNumericalError;
}

}  // namespace

void RunConfig::validate() const {
    if (dim < 1) throw ConfigError("dim must be >= 1");
    if (grid_radial < 1 || grid_radial > 200) throw ConfigError("grid_radial must be in [1, 200]");
    if (grid_angular < 1) throw ConfigError("grid_angular must be >= 1");
    if (seed < 0) throw ConfigError("seed must be >= 0");
    if (!format.empty() && format != "json" && format != "csv") throw ConfigError("format must be json or csv");
    if (output.empty()) throw ConfigError("output must not be empty");
    try {
        if (weight_family == "constant")
            constant_weight();
        else
            make_weight(weight_family, weight_param);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

nlohmann::ordered_json RunConfig::to_json() const {
    ojson j;
    j["dim"] = dim;
    j["grid_radial"] = grid_radial;
    j["grid_angular"] = grid_angular;
    j["weight_family"] = weight_family;
    j["weight_param"] = weight_param;
    j["output"] = output;
    j["format"] = format;
    j["seed"] = seed;
    return j;
}

void apply_config_json(RunConfig& cfg, const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    auto need_int = [](const nlohmann::json& v, const std::string& k) {
        if (!v.is_number_integer()) throw ConfigError("config key '" + k + "' must be an integer");
        return v.get<long long>();
    };
    auto need_string = [](const nlohmann::json& v, const std::string& k) {
        if (!v.is_string()) throw ConfigError("config key '" + k + "' must be a string");
        return v.get<std::string>();
    };
    for (const auto& [k, v] : j.items()) {
        if (k == "dim")
            cfg.dim = static_cast<int>(need_int(v, k));
        else if (k == "grid_radial")
            cfg.grid_radial = static_cast<int>(need_int(v, k));
        else if (k == "grid_angular")
            cfg.grid_angular = static_cast<int>(need_int(v, k));
        else if (k == "weight_family")
            cfg.weight_family = need_string(v, k);
        else if (k == "weight_param") {
            if (!v.is_number()) throw ConfigError("config key 'weight_param' must be a number");
            cfg.weight_param = v.get<double>();
        } else if (k == "output")
            cfg.output = need_string(v, k);
        else if (k == "format")
            cfg.format = need_string(v, k);
        else if (k == "seed")
            cfg.seed = need_int(v, k);
        else
            throw ConfigError("unknown config key '" + k + "'");
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Covariant integral quantization toolkit", "intquant"};
    app.set_version_flag("--version", std::string(kVersionString));
    app.require_subcommand(1);
    Commands c;
    std::function<int()> action;

    auto* q = app.add_subcommand("quantize", "quantize a phase-space function");
    add_common(q, c.common);
    q->add_option("--f", c.f, "named function: one, z, zbar, q, p, q2, p2, zzbar, gaussian(sigma)");
    q->add_option("--poly", c.poly, "polynomial as JSON [[re, im, j, k], ...] for z^j zbar^k");
    q->callback([&] { action = [&] { return cmd_quantize(c, out); }; });

    auto* sp = app.add_subcommand("spectrum", "eigenvalues of an operator file");
    add_common(sp, c.common);
    sp->add_option("--input,-i", c.input, "operator JSON")->required();
    sp->add_flag("--require-hermitian", c.require_hermitian);
    sp->add_option("--herm-tol", c.herm_tol);
    sp->callback([&] { action = [&] { return cmd_spectrum(c, out); }; });

    auto* ss = app.add_subcommand("symbol-scan", "lower, angle or commutator symbol tables");
    add_common(ss, c.common);
    ss->add_option("--kind", c.kind, "lower | angle | commutator");
    ss->add_option("--input,-i", c.input, "operator JSON (lower)");
    ss->add_option("--f", c.f);
    ss->add_option("--poly", c.poly);
    ss->add_option("--J", c.J_list, "comma-separated action values");
    ss->add_option("--gamma-steps", c.gamma_steps);
    ss->add_option("--q-max", c.q_max, "series cut-off (0: automatic)");
    c.scan.add(ss);
    ss->callback([&] { action = [&] { return cmd_symbol_scan(c, out); }; });

    auto* wo = app.add_subcommand("weight-op", "operator M of the configured weight");
    add_common(wo, c.common);
    wo->callback([&] { action = [&] { return cmd_weight_op(c, out); }; });

    auto* de = app.add_subcommand("delta", "quantize a combination of delta derivatives");
    add_common(de, c.common);
    de->add_option("--terms", c.terms_json, "JSON [[re, im, r, s], ...]")->required();
    de->add_option("--center-re", c.center_re);
    de->add_option("--center-im", c.center_im);
    de->add_option("--density", c.density, "cs | boltzmann:<s>");
    de->callback([&] { action = [&] { return cmd_delta(c, out); }; });

    auto* dq_ = app.add_subcommand("dequantize", "delta combination whose quantization is |e_n><e_np|");
    add_common(dq_, c.common);
    dq_->add_option("--n", c.n)->required();
    dq_->add_option("--np", c.np)->required();
    dq_->callback([&] { action = [&] { return cmd_dequantize(c, out); }; });

    auto* wg = app.add_subcommand("wigner", "Wigner function table");
    add_common(wg, c.common);
    wg->add_option("--input,-i", c.input);
    wg->add_option("--f", c.f);
    wg->add_option("--poly", c.poly);
    wg->add_flag("--truncated", c.truncated, "treat the operator as a truncation of a banded operator");
    c.scan.add(wg);
    wg->callback([&] { action = [&] { return cmd_wigner(c, out); }; });

    auto* an = app.add_subcommand("angle", "angle operator sector");
    an->require_subcommand(1);
    auto* am = an->add_subcommand("matrix", "angle operator matrix");
    add_common(am, c.common);
    am->callback([&] { action = [&] { return cmd_angle_matrix(c, out); }; });
    auto* as = an->add_subcommand("symbol", "lower symbol of the angle operator");
    add_common(as, c.common);
    as->add_option("--J", c.J_list);
    as->add_option("--gamma-steps", c.gamma_steps);
    as->add_option("--q-max", c.q_max);
    as->callback([&] { action = [&] { return cmd_angle_scan(c, out, false); }; });
    auto* ac = an->add_subcommand("commutator-scan", "lower symbol of the action-angle commutator");
    add_common(ac, c.common);
    ac->add_option("--J", c.J_list);
    ac->add_option("--gamma-steps", c.gamma_steps);
    ac->add_option("--q-max", c.q_max);
    ac->callback([&] { action = [&] { return cmd_angle_scan(c, out, true); }; });

    auto* af = app.add_subcommand("affine", "affine sector on the half-line");
    af->require_subcommand(1);
    auto add_fiducial = [&](CLI::App* s) {
        s->set_help_flag("--help", "print this help");  // frees -h for the grid spacing
        add_common(s, c.common);
        s->add_option("--a", c.a);
        s->add_option("--b", c.b);
        s->add_option("--h", c.h);
        s->add_option("--xmax", c.xmax);
    };
    auto* ak = af->add_subcommand("kinetic", "K, c_gamma table and low eigenvalues of P^2 + K/Q^2");
    add_fiducial(ak);
    ak->add_option("--eigs", c.eigs);
    ak->callback([&] { action = [&] { return cmd_affine_kinetic(c, out); }; });
    auto* asym = af->add_subcommand("symbol", "multiplication symbol of q^beta");
    add_fiducial(asym);
    asym->add_option("--f", c.f)->default_val("q^beta");
    asym->add_option("--beta", c.beta);
    asym->callback([&] { action = [&] { return cmd_affine_symbol(c, out); }; });
    auto* ar = af->add_subcommand("resolution", "resolution of the identity on a Gaussian bump");
    add_fiducial(ar);
    ar->add_option("--center", c.bump_center);
    ar->add_option("--width", c.bump_width);
    ar->add_option("--q-min", c.bounds.q_min);
    ar->add_option("--q-max", c.bounds.q_max);
    ar->add_option("--p-max", c.bounds.p_max);
    ar->add_option("--q-nodes", c.bounds.q_nodes);
    ar->add_option("--p-nodes", c.bounds.p_nodes);
    ar->callback([&] { action = [&] { return cmd_affine_resolution(c, out); }; });

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersionString << "\n";
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }
    if (!action) {
        err << "error: no command given\n";
        return kConfigError;
    }
    try {
        return action();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << "\n";
        return kValidationError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_for(e);
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kNumericalError;
    }
}

}  // namespace intquant::cli
