#include "ultraslow/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ultraslow {

namespace {

template <class T>
T field(const json& j, const std::string& key, const std::string& where) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(where + "." + key + ": " + e.what());
    }
}

template <class T>
void optional(const json& j, const std::string& key, const std::string& where, T& out) {
    if (j.contains(key)) out = field<T>(j, key, where);
}

void reject_unknown(const json& j, const std::string& where,
                    std::initializer_list<const char*> known) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw ConfigError(where + ": unknown key '" + it.key() + "'");
    }
}

GridSpec grid_from_json(const json& j, const std::string& where, GridSpec g) {
    reject_unknown(j, where, {"lo", "hi", "count", "log"});
    optional(j, "lo", where, g.lo);
    optional(j, "hi", where, g.hi);
    optional(j, "count", where, g.count);
    optional(j, "log", where, g.log);
    if (g.count < 1) throw ConfigError(where + ".count: must be >= 1");
    if (!(g.hi >= g.lo)) throw ConfigError(where + ": hi must be >= lo");
    if (g.log && !(g.lo > 0.0)) throw ConfigError(where + ".lo: log grids need lo > 0");
    return g;
}

json grid_to_json(const GridSpec& g) {
    return {{"lo", g.lo}, {"hi", g.hi}, {"count", g.count}, {"log", g.log}};
}

std::string format_row(const std::vector<double>& row) {
    std::string line;
    char buf[32];
    for (std::size_t i = 0; i < row.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", row[i]);
        if (i) line += ',';
        line += buf;
    }
    return line;
}

}  // namespace

json weight_to_json(const Weight& w) {
    json j;
    j["kind"] = to_string(w.kind());
    j["nu"] = w.nu();
    switch (w.kind()) {
        case WeightKind::Constant: j["coeffs"] = {w.at_one()}; break;
        case WeightKind::PowerLaw: j["coeffs"] = {w.leading_coefficient()}; break;
        case WeightKind::Product: j["coeffs"] = w.coefficients(); break;
        case WeightKind::Tabulated: j["samples"] = w.samples(); break;
    }
    return j;
}

Weight weight_from_json(const json& j) {
    const std::string where = "weight";
    reject_unknown(j, where, {"kind", "nu", "coeffs", "samples"});
    const auto kind = field<std::string>(j, "kind", where);
    double nu = 0.0;
    optional(j, "nu", where, nu);
    std::vector<double> coeffs, samples;
    optional(j, "coeffs", where, coeffs);
    optional(j, "samples", where, samples);
    try {
        if (kind == "constant") {
            if (coeffs.size() != 1) throw ConfigError(where + ".coeffs: constant takes [c]");
            if (nu != 0.0) throw ConfigError(where + ".nu: constant weight has nu = 0");
            return Weight::constant(coeffs[0]);
        }
        if (kind == "power_law") {
            if (coeffs.size() != 1) throw ConfigError(where + ".coeffs: power_law takes [a]");
            return Weight::power_law(coeffs[0], nu);
        }
        if (kind == "product") return Weight::product(nu, coeffs);
        if (kind == "tabulated") return Weight::tabulated(samples, nu);
    } catch (const DomainError& e) {
        throw ConfigError(where + ": " + e.what());
    }
    throw ConfigError(where + ".kind: unknown kind '" + kind + "'");
}

std::vector<double> GridSpec::points() const {
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    for (int i = 0; i < count; ++i) {
        const double a = double(i) / (count - 1);
        out[i] = log ? std::exp(std::log(lo) + a * (std::log(hi) - std::log(lo)))
                     : lo + a * (hi - lo);
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

RunConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    const std::string where = "config";
    reject_unknown(j, where,
                   {"weight", "dim", "s_grid", "t_grid", "x_grid", "lambdas", "initial", "fd",
                    "rtol", "tol_scale", "hard_asymptotics", "seed", "out"});
    RunConfig c;
    if (j.contains("weight")) c.weight = weight_from_json(j["weight"]);
    optional(j, "dim", where, c.dim);
    if (c.dim < 1 || c.dim > 3) throw ConfigError("config.dim: must be 1, 2 or 3");
    if (j.contains("s_grid")) c.s_grid = grid_from_json(j["s_grid"], "config.s_grid", c.s_grid);
    if (j.contains("t_grid")) c.t_grid = grid_from_json(j["t_grid"], "config.t_grid", c.t_grid);
    if (j.contains("x_grid")) c.x_grid = grid_from_json(j["x_grid"], "config.x_grid", c.x_grid);
    if (!(c.s_grid.lo > 0.0)) throw ConfigError("config.s_grid.lo: must be > 0");
    if (!(c.t_grid.lo > 0.0)) throw ConfigError("config.t_grid.lo: must be > 0");
    optional(j, "lambdas", where, c.lambdas);
    if (c.lambdas.empty()) throw ConfigError("config.lambdas: must not be empty");
    optional(j, "initial", where, c.initial);
    if (c.initial != "gaussian" && c.initial != "one" && c.initial != "zero")
        throw ConfigError("config.initial: expected gaussian, one or zero");
    if (j.contains("fd")) {
        const auto& f = j["fd"];
        reject_unknown(f, "config.fd", {"L", "nx", "T", "nt"});
        optional(f, "L", "config.fd", c.fd.L);
        optional(f, "nx", "config.fd", c.fd.nx);
        optional(f, "T", "config.fd", c.fd.T);
        optional(f, "nt", "config.fd", c.fd.nt);
        if (c.fd.nx < 3 || c.fd.nt < 1 || !(c.fd.L > 0.0) || !(c.fd.T > 0.0))
            throw ConfigError("config.fd: needs nx >= 3, nt >= 1, L > 0, T > 0");
    }
    optional(j, "rtol", where, c.rtol);
    if (!(c.rtol > 0.0 && c.rtol < 1e-3)) throw ConfigError("config.rtol: must lie in (0, 1e-3)");
    optional(j, "tol_scale", where, c.tol_scale);
    if (!(c.tol_scale > 0.0)) throw ConfigError("config.tol_scale: must be positive");
    optional(j, "hard_asymptotics", where, c.hard_asymptotics);
    optional(j, "seed", where, c.seed);
    optional(j, "out", where, c.out);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return config_from_json(buf.str());
}

json config_to_json(const RunConfig& c) {
    return {{"weight", weight_to_json(c.weight)},
            {"dim", c.dim},
            {"s_grid", grid_to_json(c.s_grid)},
            {"t_grid", grid_to_json(c.t_grid)},
            {"x_grid", grid_to_json(c.x_grid)},
            {"lambdas", c.lambdas},
            {"initial", c.initial},
            {"fd", {{"L", c.fd.L}, {"nx", c.fd.nx}, {"T", c.fd.T}, {"nt", c.fd.nt}}},
            {"rtol", c.rtol},
            {"tol_scale", c.tol_scale},
            {"hard_asymptotics", c.hard_asymptotics},
            {"seed", c.seed},
            {"out", c.out}};
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& row : rows) out << format_row(row) << '\n';
}

std::string field_to_csv(const Field& f) {
    std::string out = "t,x,value\n";
    for (Eigen::Index i = 0; i < f.u.rows(); ++i)
        for (Eigen::Index j = 0; j < f.u.cols(); ++j)
            out += format_row({f.t[i], f.x[j], f.u(i, j)}) + '\n';
    return out;
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

}  // namespace ultraslow
