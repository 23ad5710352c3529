#include "lcav/model.hpp"

#include <cmath>
#include <stdexcept>

namespace lcav {

CouplingScheme coupling_scheme(Config c) {
    switch (c) {
        case Config::Xi:
            return {{1, 2}, {2, 3}, 2};
        case Config::Lambda:
            return {{1, 3}, {2, 3}, 3};
        case Config::V:
            return {{1, 2}, {1, 3}, 1};
    }
    throw std::logic_error("bad Config");
}

std::string config_name(Config c) {
    switch (c) {
        case Config::Xi: return "Xi";
        case Config::Lambda: return "Lambda";
        case Config::V: return "V";
    }
    throw std::logic_error("bad Config");
}

Config config_from_name(const std::string& name) {
    if (name == "Xi" || name == "xi") return Config::Xi;
    if (name == "Lambda" || name == "lambda") return Config::Lambda;
    if (name == "V" || name == "v") return Config::V;
    throw std::invalid_argument("unknown configuration '" + name + "'");
}

double ModelParams::omega(int level) const {
    switch (level) {
        case 1: return omega1;
        case 2: return omega2;
        case 3: return omega3;
    }
    throw std::out_of_range("atomic level must be 1..3");
}

double ModelParams::Omega(int mode) const {
    if (mode == 1) return Omega1;
    if (mode == 2) return Omega2;
    throw std::out_of_range("field mode must be 1 or 2");
}

void ModelParams::validate() const {
    if (!(omega1 < omega2 && omega2 < omega3))
        throw std::invalid_argument("atomic frequencies must satisfy omega1 < omega2 < omega3");
    if (!(Omega1 > 0.0 && Omega2 > 0.0))
        throw std::invalid_argument("mode frequencies must be positive");
    if (mu_a < 0.0 || mu_b < 0.0)
        throw std::invalid_argument("couplings must be nonnegative");
    if (na < 1)
        throw std::invalid_argument("na must be at least 1");
}

double critical_mu_a(const ModelParams& p) {
    const auto s = coupling_scheme(p.config);
    return 0.5 * std::sqrt(p.Omega1 * p.bohr(s.mode1_pair[1], s.mode1_pair[0]));
}

double critical_mu_b(const ModelParams& p) {
    const auto s = coupling_scheme(p.config);
    return 0.5 * std::sqrt(p.Omega2 * p.bohr(s.mode2_pair[1], s.mode2_pair[0]));
}

DimensionlessCouplings to_dimensionless(const ModelParams& p) {
    return {p.mu_a / critical_mu_a(p), p.mu_b / critical_mu_b(p)};
}

ModelParams with_couplings(ModelParams p, const DimensionlessCouplings& x) {
    p.mu_a = x.x_a * critical_mu_a(p);
    p.mu_b = x.x_b * critical_mu_b(p);
    return p;
}

ModelParams preset(const std::string& name) {
    ModelParams p;
    if (name == "fig2") {
        p.omega1 = 0.0; p.omega2 = 0.2; p.omega3 = 1.0;
        p.Omega1 = 1.0; p.Omega2 = 0.8;
        return p;
    }
    if (name == "text-s2") {
        p.omega1 = 0.0; p.omega2 = 0.1; p.omega3 = 1.0;
        p.Omega1 = 1.0; p.Omega2 = 0.9;
        return p;
    }
    throw std::invalid_argument("unknown preset '" + name + "' (expected fig2 or text-s2)");
}

std::string coupling_label_a(Config c) {
    const auto s = coupling_scheme(c);
    return "x" + std::to_string(s.mode1_pair[0]) + std::to_string(s.mode1_pair[1]);
}

std::string coupling_label_b(Config c) {
    const auto s = coupling_scheme(c);
    return "x" + std::to_string(s.mode2_pair[0]) + std::to_string(s.mode2_pair[1]);
}

}  // namespace lcav
