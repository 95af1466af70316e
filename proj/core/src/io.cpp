#include "intquant/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "intquant/version.hpp"

namespace intquant {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return std::signbit(v) ? "-0" : "0";
    return fmt::format("{:.17g}", v);
}

nlohmann::ordered_json operator_to_json(const CMatrix& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("operator_to_json: matrix is not square");
    nlohmann::ordered_json j;
    j["dim"] = A.rows();
    auto entries = nlohmann::ordered_json::array();
    for (Eigen::Index m = 0; m < A.rows(); ++m)
        for (Eigen::Index n = 0; n < A.cols(); ++n) entries.push_back({A(m, n).real(), A(m, n).imag()});
    j["entries"] = std::move(entries);
    return j;
}

CMatrix operator_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
        throw std::invalid_argument("operator JSON needs \"dim\" and \"entries\"");
    const auto& jd = j.at("dim");
    if (!jd.is_number_integer() || jd.get<long long>() < 1)
        throw std::invalid_argument("operator JSON: dim must be a positive integer");
    const auto dim = jd.get<long long>();
    const auto& e = j.at("entries");
    if (!e.is_array() || static_cast<long long>(e.size()) != dim * dim)
        throw std::invalid_argument("operator JSON: entries must hold dim*dim [re, im] pairs");
    CMatrix A(dim, dim);
    for (long long k = 0; k < dim * dim; ++k) {
        const auto& x = e[k];
        if (!x.is_array() || x.size() != 2 || !x[0].is_number() || !x[1].is_number())
            throw std::invalid_argument(fmt::format("operator JSON: entry {} is not [re, im]", k));
        A(k / dim, k % dim) = cplx(x[0].get<double>(), x[1].get<double>());
    }
    return A;
}

std::string csv_document(const CsvTable& table, const nlohmann::ordered_json& config) {
    std::string out;
    out += fmt::format("# version: {}\n", kVersionString);
    out += fmt::format("# config: {}\n", config.dump());
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (c) out += ',';
        out += table.header[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) throw std::logic_error("csv_document: ragged row");
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_double(row[c]);
        }
        out += '\n';
    }
    return out;
}

namespace {

// nlohmann prints doubles with max_digits10 already; re-emit through format_double
// so files never depend on the library's float formatting.
void dump_value(const nlohmann::ordered_json& j, std::string& out, int indent, int level) {
    const std::string pad(static_cast<std::size_t>(indent * (level + 1)), ' ');
    const std::string pad_close(static_cast<std::size_t>(indent * level), ' ');
    switch (j.type()) {
    case nlohmann::json::value_t::number_float: {
        const double v = j.get<double>();
        if (!std::isfinite(v)) {
            out += "null";
        } else {
            std::string s = format_double(v);
            if (s.find_first_of(".en") == std::string::npos) s += ".0";
            out += s;
        }
        break;
    }
    case nlohmann::json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            break;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += pad + nlohmann::ordered_json(it.key()).dump() + ": ";
            dump_value(it.value(), out, indent, level + 1);
        }
        out += "\n" + pad_close + "}";
        break;
    }
    case nlohmann::json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            break;
        }
        // arrays of scalars stay on one line
        bool flat = true;
        for (const auto& x : j)
            if (x.is_structured() && !(x.is_array() && x.size() <= 2)) flat = false;
        out += "[";
        bool first = true;
        for (const auto& x : j) {
            if (!first) out += flat ? ", " : ",";
            first = false;
            if (!flat) out += "\n" + pad;
            if (flat && x.is_array()) {
                out += "[";
                bool f2 = true;
                for (const auto& y : x) {
                    if (!f2) out += ", ";
                    f2 = false;
                    dump_value(y, out, indent, level + 1);
                }
                out += "]";
            } else {
                dump_value(x, out, indent, level + 1);
            }
        }
        if (!flat) out += "\n" + pad_close;
        out += "]";
        break;
    }
    default:
        out += j.dump();
    }
}

}  // namespace

std::string json_document(const nlohmann::ordered_json& body, const nlohmann::ordered_json& config) {
    nlohmann::ordered_json doc;
    doc["version"] = kVersionString;
    doc["config"] = config;
    for (auto it = body.begin(); it != body.end(); ++it) doc[it.key()] = it.value();
    std::string out;
    dump_value(doc, out, 2, 0);
    out += '\n';
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << content;
    if (!f) throw std::runtime_error("write failed for " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace intquant
