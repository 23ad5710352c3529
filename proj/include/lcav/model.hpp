#pragma once

#include <array>
#include <string>

namespace lcav {

// Three-level atomic configurations: each field mode drives exactly one
// pair of levels (levels 1 < 2 < 3 in energy).
enum class Config { Xi, Lambda, V };

// Level pairs driven by the two modes plus the level common to both pairs.
struct CouplingScheme {
    std::array<int, 2> mode1_pair;
    std::array<int, 2> mode2_pair;
    int shared_level;
};

CouplingScheme coupling_scheme(Config c);

std::string config_name(Config c);
Config config_from_name(const std::string& name);

struct ModelParams {
    double omega1 = 0.0;  // atomic level frequencies, hbar = 1
    double omega2 = 0.2;
    double omega3 = 1.0;
    double Omega1 = 1.0;  // field mode frequencies
    double Omega2 = 0.8;
    double mu_a = 0.0;    // dipole coupling of mode 1 to its level pair
    double mu_b = 0.0;    // dipole coupling of mode 2 to its level pair
    Config config = Config::Lambda;
    int na = 2;           // number of atoms

    double omega(int level) const;
    double Omega(int mode) const;
    // Bohr frequency omega_jk = omega_j - omega_k.
    double bohr(int j, int k) const { return omega(j) - omega(k); }
    void validate() const;
};

// Critical couplings mubar^(s)_jk = sqrt(Omega_s omega_kj)/2 of the two
// driven transitions; they normalize the dimensionless couplings.
double critical_mu_a(const ModelParams& p);
double critical_mu_b(const ModelParams& p);

struct DimensionlessCouplings {
    double x_a = 0.0;
    double x_b = 0.0;
};

DimensionlessCouplings to_dimensionless(const ModelParams& p);
ModelParams with_couplings(ModelParams p, const DimensionlessCouplings& x);

// Named frequency presets: "fig2"   omega=(0,1/5,1),  Omega=(1,4/5)
//                          "text-s2" omega=(0,1/10,1), Omega=(1,9/10)
ModelParams preset(const std::string& name);

// Axis labels like "x13"/"x23" for the configuration's coupling pair.
std::string coupling_label_a(Config c);
std::string coupling_label_b(Config c);

}  // namespace lcav
