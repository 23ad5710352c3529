#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lcav/model.hpp"

namespace lcav {

// Real critical-manifold trial state: field amplitudes alpha_s = sqrt(na) r_s
// and matter direction gamma = (gamma1, rho2, s*rho3), stored in
// magnitude-sign form.  gamma1 is 1 by convention; the level-swapped
// collective solutions (Table S23 entries) set it to 0.
struct TrialConfiguration {
    double r1 = 0.0, r2 = 0.0;
    double rho2 = 0.0, rho3 = 0.0;
    int s_alpha1 = +1, s_alpha2 = +1, s_gamma3 = +1;
    double gamma1 = 1.0;

    std::array<double, 3> gamma() const { return {gamma1, rho2, s_gamma3 * rho3}; }
    std::array<double, 2> field() const { return {s_alpha1 * r1, s_alpha2 * r2}; }
};

enum class RegionLabel { N, S12, S13, S23 };

std::string region_name(RegionLabel r);
bool region_exists(Config c, RegionLabel r);

struct MeanFieldSolution {
    RegionLabel region = RegionLabel::N;
    TrialConfiguration trial;
    double energy_per_atom = 0.0;
};

// Coherent-state energy surface per atom; exact closed form, real restriction.
double energy_surface(const ModelParams&, const TrialConfiguration&);

// Closed-form ground-state energy of a region (independent of whether its
// existence condition holds at the given couplings).
double region_energy(const ModelParams&, RegionLabel);

// All regions whose existence condition holds (boundary inclusive), each
// with its closed-form trial and energy.
std::vector<MeanFieldSolution> critical_points(const ModelParams&);

// Minimum-energy entry of critical_points; ties prefer the collective region.
MeanFieldSolution ground_solution(const ModelParams&);

enum class Boundary { N_S12, N_S13, N_S23, S12_S13, S12_S23, S13_S23 };

std::string boundary_name(Boundary b);
bool boundary_exists(Config, Boundary);
std::vector<Boundary> boundaries(Config);

// The boundary's two region labels.
std::pair<RegionLabel, RegionLabel> boundary_regions(Boundary b);

// Samples of the boundary in dimensionless couplings (x_a, x_b), swept over
// the free axis up to x_max.
std::vector<std::array<double, 2>> separatrix(const ModelParams&, Boundary,
                                              int samples = 512, double x_max = 4.0);

// |E_A - E_B| of the boundary's two regions at the given couplings.
double boundary_energy_residual(const ModelParams&, Boundary);

// Coexistence point of the normal and both collective regions, found by
// numerically solving the two energy-equality conditions in (x_a, x_b).
std::array<double, 2> triple_point(const ModelParams&);

// Rank-1 one-atom density matrix of the coherent trial state.
Eigen::Matrix3d coherent_one_atom_rdm(const TrialConfiguration&);

// | |x|^2 + |y|^2 - (P1 P2 + P1 P3 + P2 P3) | with (x, y) the two
// transition expectations driven by the configuration.
double purity_condition_residual(const Eigen::Matrix3d& one_atom_rdm, Config);

}  // namespace lcav
