#include "lcav/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lcav {

namespace {

struct RegionDriver {
    int mode;          // field mode driving the region's transition
    int lo, hi;        // level pair (lo < hi)
};

// Which mode drives each collective region in the given configuration.
RegionDriver region_driver(Config c, RegionLabel r) {
    const auto s = coupling_scheme(c);
    const auto pair_of = [](RegionLabel rr) -> std::array<int, 2> {
        switch (rr) {
            case RegionLabel::S12: return {1, 2};
            case RegionLabel::S13: return {1, 3};
            case RegionLabel::S23: return {2, 3};
            default: throw std::invalid_argument("region N has no driving mode");
        }
    };
    const auto p = pair_of(r);
    if (p == s.mode1_pair) return {1, p[0], p[1]};
    if (p == s.mode2_pair) return {2, p[0], p[1]};
    throw std::invalid_argument("region " + region_name(r) + " does not exist for " +
                                config_name(c));
}

double region_mu(const ModelParams& p, const RegionDriver& d) {
    return d.mode == 1 ? p.mu_a : p.mu_b;
}

}  // namespace

std::string region_name(RegionLabel r) {
    switch (r) {
        case RegionLabel::N: return "N";
        case RegionLabel::S12: return "S12";
        case RegionLabel::S13: return "S13";
        case RegionLabel::S23: return "S23";
    }
    throw std::logic_error("bad RegionLabel");
}

bool region_exists(Config c, RegionLabel r) {
    if (r == RegionLabel::N) return true;
    const auto s = coupling_scheme(c);
    const std::array<int, 2> p = {r == RegionLabel::S12 ? 1 : (r == RegionLabel::S13 ? 1 : 2),
                                  r == RegionLabel::S12 ? 2 : 3};
    return p == s.mode1_pair || p == s.mode2_pair;
}

double energy_surface(const ModelParams& p, const TrialConfiguration& t) {
    const auto g = t.gamma();
    const double rho2 = g[0] * g[0] + g[1] * g[1] + g[2] * g[2];
    if (!(rho2 > 0.0)) throw std::invalid_argument("matter vector is zero");
    const auto f = t.field();
    const auto s = coupling_scheme(p.config);

    double e = p.Omega1 * f[0] * f[0] + p.Omega2 * f[1] * f[1];
    e += (p.omega1 * g[0] * g[0] + p.omega2 * g[1] * g[1] + p.omega3 * g[2] * g[2]) / rho2;
    e -= 4.0 * p.mu_a * g[s.mode1_pair[0] - 1] * g[s.mode1_pair[1] - 1] * f[0] / rho2;
    e -= 4.0 * p.mu_b * g[s.mode2_pair[0] - 1] * g[s.mode2_pair[1] - 1] * f[1] / rho2;
    return e;
}

double region_energy(const ModelParams& p, RegionLabel r) {
    if (r == RegionLabel::N) return p.omega1;
    const auto d = region_driver(p.config, r);
    const double mu = region_mu(p, d);
    if (!(mu > 0.0)) throw std::domain_error("region energy undefined at zero coupling");
    const double Om = p.Omega(d.mode);
    const double w = p.bohr(d.hi, d.lo);
    return -mu * mu / Om - Om * w * w / (16.0 * mu * mu) +
           0.5 * (p.omega(d.lo) + p.omega(d.hi));
}

std::vector<MeanFieldSolution> critical_points(const ModelParams& p) {
    p.validate();
    std::vector<MeanFieldSolution> out;

    MeanFieldSolution normal;
    normal.region = RegionLabel::N;
    normal.energy_per_atom = p.omega1;
    out.push_back(normal);

    for (RegionLabel r : {RegionLabel::S12, RegionLabel::S13, RegionLabel::S23}) {
        if (!region_exists(p.config, r)) continue;
        const auto d = region_driver(p.config, r);
        const double mu = region_mu(p, d);
        const double Om = p.Omega(d.mode);
        const double w = p.bohr(d.hi, d.lo);
        if (4.0 * mu * mu < Om * w) continue;

        const double rho = std::sqrt((4.0 * mu * mu - Om * w) / (4.0 * mu * mu + Om * w));
        const double rfield = 2.0 * mu * rho / ((1.0 + rho * rho) * Om);

        MeanFieldSolution sol;
        sol.region = r;
        TrialConfiguration& t = sol.trial;
        if (d.mode == 1) t.r1 = rfield; else t.r2 = rfield;
        // matter direction: level `lo` keeps weight 1, level `hi` gets rho
        if (r == RegionLabel::S12) { t.gamma1 = 1.0; t.rho2 = rho; t.rho3 = 0.0; }
        if (r == RegionLabel::S13) { t.gamma1 = 1.0; t.rho2 = 0.0; t.rho3 = rho; }
        if (r == RegionLabel::S23) { t.gamma1 = 0.0; t.rho2 = 1.0; t.rho3 = rho; }
        sol.energy_per_atom = energy_surface(p, t);
        out.push_back(sol);
    }
    return out;
}

MeanFieldSolution ground_solution(const ModelParams& p) {
    const auto cands = critical_points(p);
    const MeanFieldSolution* best = &cands.front();
    for (const auto& c : cands) {
        const double scale = std::max({1.0, std::abs(best->energy_per_atom),
                                       std::abs(c.energy_per_atom)});
        const double de = c.energy_per_atom - best->energy_per_atom;
        if (de < -1e-12 * scale) {
            best = &c;
        } else if (std::abs(de) <= 1e-12 * scale && best->region == RegionLabel::N &&
                   c.region != RegionLabel::N) {
            best = &c;  // boundary inclusive: collective wins the tie
        }
    }
    return *best;
}

std::string boundary_name(Boundary b) {
    switch (b) {
        case Boundary::N_S12: return "N-S12";
        case Boundary::N_S13: return "N-S13";
        case Boundary::N_S23: return "N-S23";
        case Boundary::S12_S13: return "S12-S13";
        case Boundary::S12_S23: return "S12-S23";
        case Boundary::S13_S23: return "S13-S23";
    }
    throw std::logic_error("bad Boundary");
}

std::pair<RegionLabel, RegionLabel> boundary_regions(Boundary b) {
    switch (b) {
        case Boundary::N_S12: return {RegionLabel::N, RegionLabel::S12};
        case Boundary::N_S13: return {RegionLabel::N, RegionLabel::S13};
        case Boundary::N_S23: return {RegionLabel::N, RegionLabel::S23};
        case Boundary::S12_S13: return {RegionLabel::S12, RegionLabel::S13};
        case Boundary::S12_S23: return {RegionLabel::S12, RegionLabel::S23};
        case Boundary::S13_S23: return {RegionLabel::S13, RegionLabel::S23};
    }
    throw std::logic_error("bad Boundary");
}

bool boundary_exists(Config c, Boundary b) {
    const auto [ra, rb] = boundary_regions(b);
    return region_exists(c, ra) && region_exists(c, rb);
}

std::vector<Boundary> boundaries(Config c) {
    std::vector<Boundary> out;
    for (Boundary b : {Boundary::N_S12, Boundary::N_S13, Boundary::N_S23,
                       Boundary::S12_S13, Boundary::S12_S23, Boundary::S13_S23})
        if (boundary_exists(c, b)) out.push_back(b);
    return out;
}

namespace {

// x_b of the first-order boundary between region N and the mode-2 collective
// region that does not contain level 1 (S23): the larger root of
// E_S23(mu) = omega1.
double normal_to_s23_xb(const ModelParams& p) {
    const auto d = region_driver(p.config, RegionLabel::S23);
    const double w_lo1 = p.bohr(2, 1);   // omega_21
    const double w_hi1 = p.bohr(3, 1);   // omega_31
    const double mu = 0.5 * std::sqrt(p.Omega(d.mode)) *
                      (std::sqrt(w_lo1) + std::sqrt(w_hi1));
    return mu / (0.5 * std::sqrt(p.Omega(d.mode) * p.bohr(3, 2)));
}

// Collective-collective curve x_b(x_a) for each configuration.
double collective_curve_xb(const ModelParams& p, double xa) {
    const double x2 = xa * xa;
    switch (p.config) {
        case Config::V: {
            const double w21 = p.bohr(2, 1), w31 = p.bohr(3, 1);
            const double f = std::sqrt((x2 - 1.0) * (x2 - 1.0) + 4.0 * x2 * w31 / w21);
            return std::sqrt(1.0 + (w21 / w31) * (x2 - 1.0) / (2.0 * x2) * (x2 - 1.0 + f));
        }
        case Config::Xi: {
            const double w21 = p.bohr(2, 1), w32 = p.bohr(3, 2);
            const double f = std::sqrt((x2 + 1.0) * (x2 + 1.0) + 4.0 * x2 * w32 / w21);
            return std::sqrt(1.0 + (w21 / w32) * (x2 + 1.0) / (2.0 * x2) * (x2 + 1.0 + f));
        }
        case Config::Lambda: {
            const double w31 = p.bohr(3, 1), w32 = p.bohr(3, 2);
            const double f = std::sqrt((x2 + 1.0) * (x2 + 1.0) - 4.0 * x2 * w32 / w31);
            return std::sqrt(-1.0 + (w31 / w32) * (x2 + 1.0) / (2.0 * x2) * (x2 + 1.0 + f));
        }
    }
    throw std::logic_error("bad Config");
}

Boundary collective_boundary(Config c) {
    switch (c) {
        case Config::V: return Boundary::S12_S13;
        case Config::Xi: return Boundary::S12_S23;
        case Config::Lambda: return Boundary::S13_S23;
    }
    throw std::logic_error("bad Config");
}

}  // namespace

std::vector<std::array<double, 2>> separatrix(const ModelParams& p, Boundary b,
                                              int samples, double x_max) {
    if (!boundary_exists(p.config, b))
        throw std::invalid_argument("boundary " + boundary_name(b) +
                                    " does not exist for " + config_name(p.config));
    if (samples < 2) throw std::invalid_argument("need at least 2 samples");

    std::vector<std::array<double, 2>> pts;
    pts.reserve(samples);
    const auto linspace = [&](double lo, double hi, auto&& f) {
        for (int i = 0; i < samples; ++i) {
            const double t = lo + (hi - lo) * double(i) / double(samples - 1);
            pts.push_back(f(t));
        }
    };

    const auto [ra, rb] = boundary_regions(b);
    if (ra == RegionLabel::N) {
        // Normal boundaries: straight lines in the dimensionless plane.  The
        // mode driving the collective region pins its own coupling; regions
        // containing level 1 meet N at x = 1 (second order), S23 meets it at
        // the larger root of E_S23 = omega1 (first order).
        const auto d = region_driver(p.config, rb);
        const double pinned = (d.lo == 1) ? 1.0 : normal_to_s23_xb(p);
        // Free coordinate runs up to the triple point (onset of the other
        // collective region's dominance).
        double free_hi;
        if (d.mode == 1) {
            free_hi = (p.config == Config::V) ? 1.0 : normal_to_s23_xb(p);
        } else {
            free_hi = 1.0;
        }
        free_hi = std::min(free_hi, x_max);
        if (d.mode == 1)
            linspace(0.0, free_hi, [&](double t) { return std::array{pinned, t}; });
        else
            linspace(0.0, free_hi, [&](double t) { return std::array{t, pinned}; });
        return pts;
    }

    if (b != collective_boundary(p.config))
        throw std::invalid_argument("boundary " + boundary_name(b) +
                                    " does not exist for " + config_name(p.config));
    linspace(1.0, x_max, [&](double t) {
        return std::array{t, collective_curve_xb(p, t)};
    });
    return pts;
}

double boundary_energy_residual(const ModelParams& p, Boundary b) {
    const auto [ra, rb] = boundary_regions(b);
    return std::abs(region_energy(p, ra) - region_energy(p, rb));
}

namespace {

// Root of E_region(x) - omega1 along one dimensionless axis.  Regions whose
// level pair contains level 1 touch omega1 tangentially at x=1, so the root
// is located through the sign change of the numerical derivative; the others
// cross transversally and plain bisection applies.
double solve_normal_crossing(const ModelParams& base, RegionLabel r, bool axis_a) {
    const auto energy_at = [&](double x) {
        DimensionlessCouplings xc = to_dimensionless(base);
        (axis_a ? xc.x_a : xc.x_b) = x;
        return region_energy(with_couplings(base, xc), r);
    };
    const auto d = region_driver(base.config, r);
    const bool tangent = (d.lo == 1);

    if (tangent) {
        const double h = 1e-5;
        auto deriv = [&](double x) { return (energy_at(x + h) - energy_at(x - h)) / (2 * h); };
        double lo = 0.3, hi = 3.0;
        double flo = deriv(lo);
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = deriv(mid);
            if ((flo < 0) == (fm < 0)) { lo = mid; flo = fm; } else { hi = mid; }
            if (hi - lo < 1e-12) break;
        }
        return 0.5 * (lo + hi);
    }

    double lo = 1.0, hi = 2.0;
    while (energy_at(hi) > base.omega1) hi *= 1.5;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (energy_at(mid) > base.omega1) lo = mid; else hi = mid;
        if (hi - lo < 1e-13) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::array<double, 2> triple_point(const ModelParams& p) {
    RegionLabel ra, rb;
    switch (p.config) {
        case Config::V: ra = RegionLabel::S12; rb = RegionLabel::S13; break;
        case Config::Xi: ra = RegionLabel::S12; rb = RegionLabel::S23; break;
        case Config::Lambda: ra = RegionLabel::S13; rb = RegionLabel::S23; break;
        default: throw std::logic_error("bad Config");
    }
    return {solve_normal_crossing(p, ra, true), solve_normal_crossing(p, rb, false)};
}

Eigen::Matrix3d coherent_one_atom_rdm(const TrialConfiguration& t) {
    const auto g = t.gamma();
    const double norm = std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
    if (!(norm > 0.0)) throw std::invalid_argument("matter vector is zero");
    Eigen::Vector3d v(g[0] / norm, g[1] / norm, g[2] / norm);
    return v * v.transpose();
}

double purity_condition_residual(const Eigen::Matrix3d& rho, Config c) {
    const auto s = coupling_scheme(c);
    const double x = rho(s.mode1_pair[0] - 1, s.mode1_pair[1] - 1);
    const double y = rho(s.mode2_pair[0] - 1, s.mode2_pair[1] - 1);
    const double p1 = rho(0, 0), p2 = rho(1, 1), p3 = rho(2, 2);
    return std::abs(x * x + y * y - (p1 * p2 + p1 * p3 + p2 * p3));
}

}  // namespace lcav
