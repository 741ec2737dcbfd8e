#include "anticross/models.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace anticross {

using nlohmann::json;

// ----------------------------- monotone cubic -------------------------------

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 3 || y_.size() != n)
        throw ConfigError("custom-table: arrays must have equal length >= 3");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1]))
            throw ConfigError("custom-table: lambda must be strictly increasing");

    std::vector<double> h(n - 1), d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        d[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    slope_.assign(n, 0.0);
    slope_[0] = d[0];
    slope_[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            slope_[i] = 0.0;  // local extremum of the data
        } else {
            // Fritsch-Carlson weighted harmonic mean
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            slope_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
}

std::size_t MonotoneCubic::segment(double x) const {
    if (x < x_.front() || x > x_.back())
        throw DomainError("MonotoneCubic: evaluation outside the table range");
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t hi = std::min<std::size_t>(
        std::max<std::ptrdiff_t>(it - x_.begin(), 1), x_.size() - 1);
    return hi - 1;
}

double MonotoneCubic::eval(double x) const {
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[i] + h10 * h * slope_[i] + h01 * y_[i + 1] +
           h11 * h * slope_[i + 1];
}

double MonotoneCubic::derivative(double x) const {
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t;
    const double dh00 = (6.0 * t2 - 6.0 * t) / h;
    const double dh10 = 3.0 * t2 - 4.0 * t + 1.0;
    const double dh01 = (-6.0 * t2 + 6.0 * t) / h;
    const double dh11 = 3.0 * t2 - 2.0 * t;
    return dh00 * y_[i] + dh10 * slope_[i] + dh01 * y_[i + 1] +
           dh11 * slope_[i + 1];
}

// -------------------------------- table model --------------------------------

TableModel::TableModel(std::vector<double> lambda, std::vector<double> omega0,
                       std::vector<double> delta, std::vector<double> gamma,
                       std::pair<double, double> domain)
    : omega0_(lambda, std::move(omega0)),
      delta_(lambda, std::move(delta)),
      gamma_(lambda, std::move(gamma)),
      domain_(domain) {
    if (!(domain_.first < domain_.second))
        throw ConfigError("custom-table: empty domain");
    if (domain_.first < omega0_.x_front() || domain_.second > omega0_.x_back())
        throw ConfigError("custom-table: domain exceeds the table range");
}

CoefficientBundle TableModel::coefficients(double lambda) const {
    require_inside(lambda);
    return CoefficientBundle{omega0_.eval(lambda), delta_.eval(lambda),
                             gamma_.eval(lambda)};
}

DerivativeBundle TableModel::derivatives(double lambda) const {
    require_inside(lambda);
    DerivativeBundle d;
    d.d_omega0 = omega0_.derivative(lambda);
    d.d_delta = delta_.derivative(lambda);
    d.d_gamma = gamma_.derivative(lambda);
    return d;
}

// ------------------------------- config parsing ------------------------------

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError("model config: " + where + ": " + what);
}

const json& require_field(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) fail(where, std::string("missing field \"") + key + "\"");
    return obj.at(key);
}

double number_field(const json& obj, const char* key, const std::string& where) {
    const json& v = require_field(obj, key, where);
    if (!v.is_number()) fail(where, std::string("field \"") + key + "\" must be a number");
    return v.get<double>();
}

std::vector<double> array_field(const json& obj, const char* key,
                                const std::string& where) {
    const json& v = require_field(obj, key, where);
    if (!v.is_array()) fail(where, std::string("field \"") + key + "\" must be an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number())
            fail(where, std::string("array \"") + key + "\" must hold numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

std::pair<double, double> domain_field(const json& config) {
    const json& v = require_field(config, "domain", "top level");
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        fail("top level", "\"domain\" must be [lo, hi]");
    const double lo = v[0].get<double>();
    const double hi = v[1].get<double>();
    if (!(lo < hi)) fail("top level", "\"domain\" must satisfy lo < hi");
    return {lo, hi};
}

}  // namespace

ModelPtr model_from_json(const json& config) {
    if (!config.is_object()) fail("top level", "config must be a JSON object");
    const json& type_field = require_field(config, "type", "top level");
    if (!type_field.is_string()) fail("top level", "\"type\" must be a string");
    const std::string type = type_field.get<std::string>();
    const json params = config.value("params", json::object());
    const auto domain = domain_field(config);

    if (type == "custom-table") {
        auto lambda = array_field(params, "lambda", "custom-table params");
        auto omega0 = array_field(params, "omega0", "custom-table params");
        auto delta = array_field(params, "delta", "custom-table params");
        auto gamma = array_field(params, "gamma", "custom-table params");
        if (omega0.size() != lambda.size() || delta.size() != lambda.size() ||
            gamma.size() != lambda.size())
            fail("custom-table params", "arrays must have equal length");
        return std::make_shared<TableModel>(std::move(lambda), std::move(omega0),
                                            std::move(delta), std::move(gamma),
                                            domain);
    }
    if (type == "perturbation") {
        PerturbationParams p;
        p.omega = number_field(params, "omega", "perturbation params");
        p.delta_gap = number_field(params, "delta", "perturbation params");
        p.epsilon = number_field(params, "epsilon", "perturbation params");
        p.phi = number_field(params, "phi", "perturbation params");
        return std::make_shared<PerturbationModel>(p, domain);
    }
    if (type == "rabi") {
        RabiParams p;
        p.omega0 = number_field(params, "omega0", "rabi params");
        p.omega = number_field(params, "omega", "rabi params");
        const std::string conv = params.value("delta_convention", "paper");
        if (conv == "paper")
            p.convention = RabiDeltaConvention::kPaper;
        else if (conv == "matrix")
            p.convention = RabiDeltaConvention::kMatrix;
        else
            fail("rabi params", "\"delta_convention\" must be \"paper\" or \"matrix\"");
        return std::make_shared<RabiModel>(p, domain);
    }
    if (type == "three-level") {
        ThreeLevelParams p;
        p.base = model_from_json(require_field(params, "base", "three-level params"));
        p.g = number_field(params, "g", "three-level params");
        p.eps_gap = number_field(params, "eps_gap", "three-level params");
        auto model = std::make_shared<ThreeLevelModel>(std::move(p));
        const auto [blo, bhi] = model->domain();
        if (domain.first < blo || domain.second > bhi)
            fail("three-level", "domain exceeds the base model domain");
        return model;
    }
    fail("top level", "unknown type \"" + type + "\"");
}

ModelPtr model_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("model config: cannot open " + path);
    json config;
    try {
        in >> config;
    } catch (const json::parse_error& e) {
        throw ConfigError("model config: " + path + ": " + e.what());
    }
    return model_from_json(config);
}

json resolved_config(const json& config) {
    json out = config;
    if (out.is_object() && out.value("type", "") == "rabi" && out.contains("params") &&
        !out["params"].contains("delta_convention"))
        out["params"]["delta_convention"] = "paper";
    return out;
}

std::string delta_convention_of(const json& config) {
    if (!config.is_object()) return "n/a";
    const std::string type = config.value("type", "");
    if (type == "rabi")
        return config.value("params", json::object()).value("delta_convention", "paper");
    if (type == "three-level")
        return delta_convention_of(config.value("params", json::object())
                                       .value("base", json::object()));
    return "n/a";
}

}  // namespace anticross
