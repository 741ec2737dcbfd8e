#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "anticross/metrology.hpp"
#include "anticross/models.hpp"
#include "oracles.hpp"

using namespace anticross;
using nlohmann::json;

namespace {

json linear_table_config(double lo = 0.0, double hi = 5.0, int points = 11) {
    json p;
    for (int i = 0; i < points; ++i) {
        const double lambda = lo + (hi - lo) * i / (points - 1);
        p["lambda"].push_back(lambda);
        p["omega0"].push_back(0.0);
        p["delta"].push_back(1.0);
        p["gamma"].push_back(lambda);
    }
    return json{{"type", "custom-table"}, {"params", p}, {"domain", {lo, hi}}};
}

}  // namespace

TEST_CASE("monotone cubic interpolation") {
    SUBCASE("reproduces linear data exactly") {
        MonotoneCubic f({0.0, 1.0, 2.0, 3.5}, {1.0, 3.0, 5.0, 8.0});
        for (double x : {0.0, 0.3, 1.7, 3.2, 3.5}) {
            CHECK(f.eval(x) == doctest::Approx(1.0 + 2.0 * x).epsilon(1e-14));
            CHECK(f.derivative(x) == doctest::Approx(2.0).epsilon(1e-13));
        }
    }
    SUBCASE("interpolates the knots") {
        MonotoneCubic f({0.0, 0.5, 1.2, 2.0}, {0.0, 2.0, 2.5, 9.0});
        CHECK(f.eval(0.5) == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(f.eval(1.2) == doctest::Approx(2.5).epsilon(1e-15));
    }
    SUBCASE("no overshoot on monotone data") {
        MonotoneCubic f({0.0, 1.0, 1.1, 2.0}, {0.0, 0.1, 0.9, 1.0});
        for (int i = 0; i <= 1000; ++i) {
            const double x = 2.0 * i / 1000.0;
            const double y = f.eval(x);
            CHECK(y >= -1e-12);
            CHECK(y <= 1.0 + 1e-12);
        }
        // monotone data gives a monotone interpolant
        double prev = f.eval(0.0);
        for (int i = 1; i <= 1000; ++i) {
            const double y = f.eval(2.0 * i / 1000.0);
            CHECK(y >= prev - 1e-12);
            prev = y;
        }
    }
    SUBCASE("derivative of the interpolant matches finite differences") {
        MonotoneCubic f({0.0, 0.7, 1.5, 2.2, 3.0}, {0.0, 0.3, 1.9, 2.0, 2.8});
        for (double x : {0.2, 0.9, 1.6, 2.5}) {
            const double h = 1e-6;
            const double fd = (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
            CHECK(f.derivative(x) == doctest::Approx(fd).epsilon(1e-7));
        }
    }
    SUBCASE("rejects bad knots") {
        CHECK_THROWS_AS(MonotoneCubic({0.0, 1.0}, {0.0, 1.0}), ConfigError);
        CHECK_THROWS_AS(MonotoneCubic({0.0, 1.0, 0.5}, {0.0, 1.0, 2.0}), ConfigError);
        CHECK_THROWS_AS(MonotoneCubic({0.0, 1.0, 1.0}, {0.0, 1.0, 2.0}), ConfigError);
    }
    SUBCASE("evaluation outside the table range") {
        MonotoneCubic f({0.0, 1.0, 2.0}, {0.0, 1.0, 2.0});
        CHECK_THROWS_AS(f.eval(2.5), DomainError);
    }
}

TEST_CASE("custom-table model") {
    SUBCASE("linear table reproduces the analytic model exactly") {
        const auto model = model_from_json(linear_table_config());
        CHECK(model->name() == "custom-table");
        CHECK(model->has_analytic_derivatives());
        for (double lambda : {0.0, 0.37, 1.0, 2.71, 5.0}) {
            const CoefficientBundle c = model->coefficients(lambda);
            CHECK(c.delta == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(c.gamma == doctest::Approx(lambda).epsilon(1e-13));
            const DerivativeBundle d = model->derivatives(lambda);
            CHECK(d.d_gamma == doctest::Approx(1.0).epsilon(1e-13));
            CHECK(d.d_delta == doctest::Approx(0.0).epsilon(1e-13));
        }
        // and so does its QFI against the fidelity oracle
        const double pipe =
            qfi_ground(model->coefficients(1.0), model->derivatives(1.0));
        CHECK(pipe == doctest::Approx(0.25).epsilon(1e-10));
        CHECK(qfi_fidelity_oracle(*model, 1.0) == doctest::Approx(pipe).epsilon(1e-6));
    }
    SUBCASE("domain must stay within the table") {
        json config = linear_table_config();
        config["domain"] = {0.0, 6.0};
        CHECK_THROWS_AS(model_from_json(config), ConfigError);
    }
    SUBCASE("length mismatch diagnostics") {
        json config = linear_table_config();
        config["params"]["gamma"].push_back(1.0);
        CHECK_THROWS_WITH_AS(model_from_json(config),
                             doctest::Contains("equal length"), ConfigError);
    }
}

TEST_CASE("model config parsing") {
    SUBCASE("perturbation") {
        const json config{{"type", "perturbation"},
                          {"params",
                           {{"omega", 0.0}, {"delta", 1.0}, {"epsilon", 1.0},
                            {"phi", M_PI / 4.0}}},
                          {"domain", {-3.0, 3.0}}};
        const auto model = model_from_json(config);
        CHECK(model->name() == "perturbation");
        CHECK(model->coefficients(2.0).delta == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(delta_convention_of(config) == "n/a");
    }
    SUBCASE("rabi with default and explicit conventions") {
        json config{{"type", "rabi"},
                    {"params", {{"omega0", 1.0}, {"omega", 1.0}}},
                    {"domain", {0.0, 4.0}}};
        const auto model = model_from_json(config);
        CHECK(model->coefficients(1.0).delta == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(delta_convention_of(config) == "paper");
        CHECK(resolved_config(config)["params"]["delta_convention"] == "paper");

        config["params"]["delta_convention"] = "matrix";
        const auto matrix_model = model_from_json(config);
        CHECK(matrix_model->coefficients(1.0).delta ==
              doctest::Approx(0.5).epsilon(1e-14));
        CHECK(delta_convention_of(config) == "matrix");

        config["params"]["delta_convention"] = "bogus";
        CHECK_THROWS_AS(model_from_json(config), ConfigError);
    }
    SUBCASE("three-level with a nested base") {
        const json config{
            {"type", "three-level"},
            {"params",
             {{"base", linear_table_config(0.0, 5.0)}, {"g", 0.1}, {"eps_gap", 10.0}}},
            {"domain", {0.0, 5.0}}};
        const auto model = model_from_json(config);
        CHECK(model->name() == "three-level");
        CHECK(model->coefficients(0.5).gamma ==
              doctest::Approx(0.5 + 1e-3).epsilon(1e-12));
        CHECK(delta_convention_of(config) == "n/a");
    }
    SUBCASE("error diagnostics carry the offending field") {
        CHECK_THROWS_WITH_AS(model_from_json(json{{"type", "nonsense"},
                                                  {"domain", {0, 1}}}),
                             doctest::Contains("unknown type"), ConfigError);
        CHECK_THROWS_WITH_AS(
            model_from_json(json{{"type", "perturbation"},
                                 {"params", {{"omega", 0.0}}},
                                 {"domain", {0, 1}}}),
            doctest::Contains("delta"), ConfigError);
        CHECK_THROWS_WITH_AS(model_from_json(json{{"type", "rabi"},
                                                  {"params",
                                                   {{"omega0", 1.0}, {"omega", 1.0}}},
                                                  {"domain", {4.0, 0.0}}}),
                             doctest::Contains("domain"), ConfigError);
        CHECK_THROWS_AS(model_from_file("/nonexistent/model.json"), ConfigError);
    }
}
