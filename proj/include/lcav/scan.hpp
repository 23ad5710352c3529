#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lcav/exact.hpp"
#include "lcav/meanfield.hpp"
#include "lcav/qinfo.hpp"
#include "lcav/sas.hpp"

namespace lcav {

enum class Method { Exact, Sas, MeanField };

std::string method_name(Method m);
Method method_from_name(const std::string&);

enum class SectorPolicy { Auto, EE, EO, OE, OO };

SectorPolicy sector_policy_from_name(const std::string&);
std::optional<ParitySector> policy_sector(SectorPolicy, Method);

struct AxisRange {
    double lo = 0.0, hi = 3.0, step = 0.05;

    int count() const;
    double value(int i) const { return lo + step * i; }
};

AxisRange axis_from_string(const std::string& spec);  // "lo:hi:step"

struct ScanGrid {
    AxisRange axis_a, axis_b;
    int na = 2;
    Method method = Method::Sas;
    SectorPolicy sector = SectorPolicy::Auto;
};

struct ScanConfig {
    ModelParams base;       // frequencies and configuration; couplings set per point
    double dx = 1e-3;       // susceptibility displacement in dimensionless units
    double tol = 1e-8;      // cutoff convergence tolerance
    int threads = 0;        // 0 = hardware concurrency
    std::string out_dir = ".";
    bool svg = false;
    std::string stem = "scan";
};

struct ScanRecord {
    int ia = 0, ib = 0;
    double xa = 0, xb = 0, mua = 0, mub = 0;
    double energy = 0;                 // ground energy per atom for the method
    std::string region;                // mean-field region at these couplings
    double f_min = 0, ln_chi = 0, d_bures = 0;
    double sl_matter = 0, sl_atom = 0, svn_matter = 0;
    double p1 = 0, p2 = 0, p3 = 0;
    double f_sas_exact = std::nan(""); // filled by compare runs only
    int nmax1 = 0, nmax2 = 0;
    double wall_ms = 0;                // not part of the deterministic CSV
    std::string error;
};

struct MinFidelityResult {
    double f_min = 1.0;
    double chi = 0.0;
    int direction = 0;      // 0: (+dx, 0), 1: (0, +dx), 2: (+dx, +dx)
    double step_norm = 0.0;
    double d_bures = 0.0;
};

// Minimum fidelity between the matter state at x and its three displaced
// neighbours, and the susceptibility of the chosen direction.
MinFidelityResult min_fidelity_point(
    const std::function<DensityMatrix(const DimensionlessCouplings&)>& rho_at,
    const DimensionlessCouplings& x, double dx);

// One grid point evaluated with the given method.  with_chi also runs the
// fidelity scan over the three displaced neighbours.
ScanRecord evaluate_point(const ScanGrid&, const ScanConfig&, int ia, int ib,
                          bool with_chi = true);

// Full grid scan; writes <stem>.csv, <stem>_ridge.csv, <stem>_timing.csv and
// optionally <stem>.svg under out_dir.  Per-point failures land in the
// `error` column.  Interrupted runs resume from <stem>.partial.
std::vector<ScanRecord> run_scan(const ScanGrid&, const ScanConfig&);

// Ridge cells: ln chi strictly larger than both neighbours along at least
// one axis.  Returns (ia, ib) pairs.
std::vector<std::pair<int, int>> extract_ridge(const ScanGrid&,
                                               const std::vector<ScanRecord>&);

// Progress-file helpers backing the per-point resume.
std::string scan_fingerprint(const ScanGrid&, const ScanConfig&);
std::string scan_partial_row(const ScanRecord&);

// Entropy sweeps along axis b for fixed axis-a values (one CSV).
struct SweepResult {
    std::map<Method, std::vector<ScanRecord>> by_method;
};

SweepResult sweep_entropy(const std::vector<double>& xa_values, const AxisRange& xb,
                          int na, const std::set<Method>& methods, const ScanConfig&,
                          SectorPolicy sector = SectorPolicy::Auto);

struct CompareRecord {
    int ia = 0, ib = 0;
    double xa = 0, xb = 0;
    double f_sas_exact = 1.0;
    double e_sas = 0.0, e_exact = 0.0;
    std::string error;
};

// Fidelity between the SAS and exact matter states on a grid.
std::vector<CompareRecord> compare_sas_exact(const ScanGrid&, const ScanConfig&);

struct SimplexRecord {
    Method method = Method::Exact;
    double xa = 0, xb = 0;
    double p1 = 0, p2 = 0, p3 = 0;
    double u = 0, v = 0;
    double sl_atom = 0;
    std::string error;
};

struct SimplexSummary {
    std::vector<SimplexRecord> records;
    // per method: points with 1/2 <= S_L (inside the inscribed disk)
    std::map<Method, int> disk_counts;
};

SimplexSummary sample_simplex(const ScanGrid&, const std::set<Method>& methods,
                              const ScanConfig&);

// Strict-schema JSON configuration (unknown keys rejected).
void apply_json_config(const std::string& json_text, ScanGrid&, ScanConfig&);

// Simple worker pool; results must not depend on the thread count.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace lcav
