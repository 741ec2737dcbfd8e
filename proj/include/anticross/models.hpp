// models.hpp — Model configuration records (JSON) and the interpolated
// custom-table model.
//
// Config schema:
//   { "type": "custom-table" | "perturbation" | "rabi" | "three-level",
//     "params": { ...type-specific... },
//     "domain": [lo, hi] }
//
// params:
//   custom-table : arrays "lambda", "omega0", "delta", "gamma" of equal
//                  length >= 3; evaluation by monotone (Fritsch-Carlson)
//                  cubic interpolation, derivatives from the interpolant.
//   perturbation : { "omega", "delta", "epsilon", "phi" }
//   rabi         : { "omega0", "omega", "delta_convention": "paper"|"matrix" }
//   three-level  : { "base": <nested model config>, "g", "eps_gap" }

#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "anticross/hamiltonian.hpp"
#include "anticross/model_zoo.hpp"

namespace anticross {

// Shape-preserving piecewise-cubic Hermite interpolant with Fritsch-Carlson
// slopes; reproduces linear data exactly and never overshoots monotone data.
class MonotoneCubic {
public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    double eval(double x) const;
    double derivative(double x) const;
    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }

private:
    std::size_t segment(double x) const;

    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> slope_;
};

class TableModel final : public TwoLevelModel {
public:
    TableModel(std::vector<double> lambda, std::vector<double> omega0,
               std::vector<double> delta, std::vector<double> gamma,
               std::pair<double, double> domain);

    std::string name() const override { return "custom-table"; }
    std::pair<double, double> domain() const override { return domain_; }
    CoefficientBundle coefficients(double lambda) const override;
    bool has_analytic_derivatives() const override { return true; }
    DerivativeBundle derivatives(double lambda) const override;

private:
    MonotoneCubic omega0_;
    MonotoneCubic delta_;
    MonotoneCubic gamma_;
    std::pair<double, double> domain_;
};

// Parse/load a model configuration; ConfigError carries field diagnostics.
ModelPtr model_from_json(const nlohmann::json& config);
ModelPtr model_from_file(const std::string& path);

// Resolved config (defaults filled in), suitable for artifact metadata.
nlohmann::json resolved_config(const nlohmann::json& config);

// "paper" | "matrix" for rabi models, "n/a" otherwise — recorded in every
// emitted artifact.
std::string delta_convention_of(const nlohmann::json& config);

}  // namespace anticross
