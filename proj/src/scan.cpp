#include "lcav/scan.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "lcav/svg.hpp"

namespace lcav {

namespace fs = std::filesystem;

std::string method_name(Method m) {
    switch (m) {
        case Method::Exact: return "exact";
        case Method::Sas: return "sas";
        case Method::MeanField: return "meanfield";
    }
    throw std::logic_error("bad Method");
}

Method method_from_name(const std::string& s) {
    if (s == "exact") return Method::Exact;
    if (s == "sas") return Method::Sas;
    if (s == "meanfield") return Method::MeanField;
    throw std::invalid_argument("unknown method '" + s + "'");
}

SectorPolicy sector_policy_from_name(const std::string& s) {
    if (s == "auto") return SectorPolicy::Auto;
    if (s == "ee") return SectorPolicy::EE;
    if (s == "eo") return SectorPolicy::EO;
    if (s == "oe") return SectorPolicy::OE;
    if (s == "oo") return SectorPolicy::OO;
    throw std::invalid_argument("unknown sector policy '" + s + "'");
}

std::optional<ParitySector> policy_sector(SectorPolicy p, Method m) {
    switch (p) {
        case SectorPolicy::EE: return ParitySector{Parity::Even, Parity::Even};
        case SectorPolicy::EO: return ParitySector{Parity::Even, Parity::Odd};
        case SectorPolicy::OE: return ParitySector{Parity::Odd, Parity::Even};
        case SectorPolicy::OO: return ParitySector{Parity::Odd, Parity::Odd};
        case SectorPolicy::Auto:
            // SAS needs a definite sector to project onto; the ground sector
            // convention is ee.  Exact solves run unrestricted.
            if (m == Method::Sas) return ParitySector{Parity::Even, Parity::Even};
            return std::nullopt;
    }
    throw std::logic_error("bad SectorPolicy");
}

int AxisRange::count() const {
    if (!(step > 0.0)) throw std::invalid_argument("axis step must be positive");
    if (hi < lo) throw std::invalid_argument("axis range is empty");
    return static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

AxisRange axis_from_string(const std::string& spec) {
    AxisRange r;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> r.lo >> c1 >> r.hi >> c2 >> r.step) || c1 != ':' || c2 != ':')
        throw std::invalid_argument("axis spec '" + spec + "' is not lo:hi:step");
    r.count();  // validates
    return r;
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, n));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex err_mutex;
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mutex);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

MinFidelityResult min_fidelity_point(
    const std::function<DensityMatrix(const DimensionlessCouplings&)>& rho_at,
    const DimensionlessCouplings& x, double dx) {
    if (!(dx > 0.0)) throw std::invalid_argument("dx must be positive");
    const DensityMatrix center = rho_at(x);
    const DimensionlessCouplings shifts[3] = {
        {x.x_a + dx, x.x_b}, {x.x_a, x.x_b + dx}, {x.x_a + dx, x.x_b + dx}};
    const double steps[3] = {dx, dx, dx * std::sqrt(2.0)};

    MinFidelityResult out;
    out.f_min = 2.0;
    for (int d = 0; d < 3; ++d) {
        const double f = fidelity(center, rho_at(shifts[d]));
        if (f < out.f_min) {
            out.f_min = f;
            out.direction = d;
            out.step_norm = steps[d];
        }
    }
    out.chi = 2.0 * (1.0 - out.f_min) / (out.step_norm * out.step_norm);
    out.d_bures = std::sqrt(std::max(0.0, 2.0 - 2.0 * std::sqrt(out.f_min)));
    return out;
}

namespace {

std::uint64_t point_seed(int ia, int ib) {
    return 0x5eed1ULL ^ (std::uint64_t(ia) * 0x9E3779B97F4A7C15ULL) ^
           (std::uint64_t(ib) * 1000003ULL);
}

void fill_matter_measures(ScanRecord& rec, const Eigen::MatrixXd& rho_m, int na) {
    const DensityMatrix rho = DensityMatrix::from_real(rho_m);
    rec.sl_matter = linear_entropy(rho);
    rec.svn_matter = vn_entropy(rho);
    const auto basis = enumerate_atom_basis(na);
    const Eigen::Matrix3d e = u3_expectations(rho_m, basis);
    const DensityMatrix atom = one_atom_rdm(e.cast<std::complex<double>>(), na);
    const auto p = occupations(atom);
    rec.p1 = p.p1;
    rec.p2 = p.p2;
    rec.p3 = p.p3;
    rec.sl_atom = linear_entropy(atom);
}

double safe_log(double chi) { return std::log(std::max(chi, 1e-300)); }

void evaluate_meanfield(ScanRecord& rec, const ScanConfig& cfg,
                        const DimensionlessCouplings& x, bool with_chi) {
    const auto rho_at = [&](const DimensionlessCouplings& xx) {
        const ModelParams p = with_couplings(cfg.base, xx);
        return DensityMatrix::from_real(coherent_one_atom_rdm(ground_solution(p).trial));
    };
    const ModelParams p = with_couplings(cfg.base, x);
    const auto mf = ground_solution(p);
    rec.energy = mf.energy_per_atom;
    const DensityMatrix atom = DensityMatrix::from_real(coherent_one_atom_rdm(mf.trial));
    const auto occ = occupations(atom);
    rec.p1 = occ.p1;
    rec.p2 = occ.p2;
    rec.p3 = occ.p3;
    rec.sl_atom = linear_entropy(atom);
    rec.sl_matter = 0.0;   // coherent product state
    rec.svn_matter = 0.0;
    if (!with_chi) return;
    const auto mfr = min_fidelity_point(rho_at, x, cfg.dx);
    rec.f_min = mfr.f_min;
    rec.ln_chi = safe_log(mfr.chi);
    rec.d_bures = mfr.d_bures;
}

// Space sized from the mean-field amplitudes with margin for the
// variational search around them.
HilbertSpace sas_space(const ModelParams& params) {
    const auto mf = ground_solution(params);
    const double sqn = std::sqrt(double(params.na));
    const FockCutoffs cut{cutoff_for_amplitude(sqn * mf.trial.r1 + 0.75),
                          cutoff_for_amplitude(sqn * mf.trial.r2 + 0.75)};
    return HilbertSpace(params.na, cut, params.config);
}

void evaluate_sas(ScanRecord& rec, const ScanGrid& grid, const ScanConfig& cfg,
                  const DimensionlessCouplings& x, bool with_chi) {
    const auto sector = *policy_sector(grid.sector, Method::Sas);
    const ModelParams center = with_couplings(cfg.base, x);
    const HilbertSpace space = sas_space(center);
    rec.nmax1 = space.cutoffs().nmax1;
    rec.nmax2 = space.cutoffs().nmax2;

    SasMinimizeOptions opts;
    opts.seed = point_seed(rec.ia, rec.ib);
    const SasMinimum base = minimize_sas(space, center, sector, opts);
    rec.energy = base.energy_per_atom;
    fill_matter_measures(rec, base.matter_rdm, center.na);
    if (!with_chi) return;

    const auto rho_at = [&](const DimensionlessCouplings& xx) {
        if (xx.x_a == x.x_a && xx.x_b == x.x_b)
            return DensityMatrix::from_real(base.matter_rdm);
        const ModelParams p = with_couplings(cfg.base, xx);
        SasMinimizeOptions warm;
        warm.warm_start = &base.trial;
        warm.seed = opts.seed;
        const SasMinimum m = minimize_sas(space, p, sector, warm);
        return DensityMatrix::from_real(m.matter_rdm);
    };
    const auto mfr = min_fidelity_point(rho_at, x, cfg.dx);
    rec.f_min = mfr.f_min;
    rec.ln_chi = safe_log(mfr.chi);
    rec.d_bures = mfr.d_bures;
}

void evaluate_exact(ScanRecord& rec, const ScanGrid& grid, const ScanConfig& cfg,
                    const DimensionlessCouplings& x, bool with_chi) {
    const auto sector = policy_sector(grid.sector, Method::Exact);
    const ModelParams center = with_couplings(cfg.base, x);
    const ConvergedGround cg = converge_cutoffs(center, sector, cfg.tol);
    const HilbertSpace space(center.na, cg.solution.cutoffs, center.config);
    rec.nmax1 = space.cutoffs().nmax1;
    rec.nmax2 = space.cutoffs().nmax2;
    rec.energy = cg.solution.energy / double(center.na);

    const Eigen::MatrixXd rho_m = matter_rdm(space, cg.solution.state);
    fill_matter_measures(rec, rho_m, center.na);
    if (!with_chi) return;

    const auto rho_at = [&](const DimensionlessCouplings& xx) {
        if (xx.x_a == x.x_a && xx.x_b == x.x_b) return DensityMatrix::from_real(rho_m);
        const ModelParams p = with_couplings(cfg.base, xx);
        // The 1e-3 displacement cannot move the converged cutoffs; reuse
        // them and fall back to a fresh convergence if the edge fills up.
        GroundSolution sol = ground_state(space, p, sector);
        if (edge_occupation(space, sol.state) >= 1e-8) {
            const ConvergedGround fresh = converge_cutoffs(p, sector, cfg.tol);
            const HilbertSpace bigger(p.na, fresh.solution.cutoffs, p.config);
            return DensityMatrix::from_real(matter_rdm(bigger, fresh.solution.state));
        }
        return DensityMatrix::from_real(matter_rdm(space, sol.state));
    };
    const auto mfr = min_fidelity_point(rho_at, x, cfg.dx);
    rec.f_min = mfr.f_min;
    rec.ln_chi = safe_log(mfr.chi);
    rec.d_bures = mfr.d_bures;
}

}  // namespace

ScanRecord evaluate_point(const ScanGrid& grid, const ScanConfig& cfg, int ia, int ib,
                          bool with_chi) {
    const auto t0 = std::chrono::steady_clock::now();
    ScanRecord rec;
    rec.ia = ia;
    rec.ib = ib;
    rec.xa = grid.axis_a.value(ia);
    rec.xb = grid.axis_b.value(ib);

    ModelParams base = cfg.base;
    base.na = grid.na;
    ScanConfig cfg_na = cfg;
    cfg_na.base = base;

    const DimensionlessCouplings x{rec.xa, rec.xb};
    const ModelParams at_point = with_couplings(base, x);
    rec.mua = at_point.mu_a;
    rec.mub = at_point.mu_b;
    try {
        rec.region = region_name(ground_solution(at_point).region);
        switch (grid.method) {
            case Method::MeanField: evaluate_meanfield(rec, cfg_na, x, with_chi); break;
            case Method::Sas: evaluate_sas(rec, grid, cfg_na, x, with_chi); break;
            case Method::Exact: evaluate_exact(rec, grid, cfg_na, x, with_chi); break;
        }
    } catch (const std::exception& e) {
        rec.error = e.what();
    }
    rec.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    return rec;
}

namespace {

std::string fmt_g(double v, const char* spec = "%.12g") {
    if (std::isnan(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else if (c == '\n') out += ' ';
        else out += c;
    }
    out += "\"";
    return out;
}

}  // namespace

std::string scan_fingerprint(const ScanGrid& g, const ScanConfig& c) {
    std::ostringstream os;
    os << method_name(g.method) << '|' << int(g.sector) << '|' << g.na << '|'
       << fmt_g(g.axis_a.lo) << ':' << fmt_g(g.axis_a.hi) << ':' << fmt_g(g.axis_a.step)
       << '|' << fmt_g(g.axis_b.lo) << ':' << fmt_g(g.axis_b.hi) << ':'
       << fmt_g(g.axis_b.step) << '|' << config_name(c.base.config) << '|'
       << fmt_g(c.base.omega1) << ',' << fmt_g(c.base.omega2) << ',' << fmt_g(c.base.omega3)
       << '|' << fmt_g(c.base.Omega1) << ',' << fmt_g(c.base.Omega2) << '|' << fmt_g(c.dx)
       << '|' << fmt_g(c.tol);
    return std::to_string(std::hash<std::string>{}(os.str()));
}

namespace {

std::string record_csv_row(const ScanRecord& r) {
    std::ostringstream os;
    os << fmt_g(r.xa) << ',' << fmt_g(r.xb) << ',' << fmt_g(r.mua) << ',' << fmt_g(r.mub)
       << ',' << fmt_g(r.energy) << ',' << r.region << ',' << fmt_g(r.f_min) << ','
       << fmt_g(r.ln_chi) << ',' << fmt_g(r.sl_matter) << ',' << fmt_g(r.sl_atom) << ','
       << fmt_g(r.svn_matter) << ',' << fmt_g(r.p1) << ',' << fmt_g(r.p2) << ','
       << fmt_g(r.p3) << ',' << fmt_g(r.d_bures) << ',' << fmt_g(r.f_sas_exact) << ','
       << r.nmax1 << ',' << r.nmax2 << ',' << csv_escape(r.error);
    return os.str();
}

std::string scan_header(Config c) {
    const std::string la = coupling_label_a(c), lb = coupling_label_b(c);
    const std::string ma = "mu" + la.substr(1), mb = "mu" + lb.substr(1);
    return la + "," + lb + "," + ma + "," + mb +
           ",energy,region,f_min,ln_chi,sl_matter,sl_atom,svn_matter,p1,p2,p3,"
           "d_bures,f_sas_exact,nmax1,nmax2,error";
}

}  // namespace

// partial rows keep full double precision so a resumed run reproduces the
// same final bytes
std::string scan_partial_row(const ScanRecord& r) {
    std::ostringstream os;
    os << r.ia << ',' << r.ib << ',' << fmt_g(r.xa, "%.17g") << ','
       << fmt_g(r.xb, "%.17g") << ',' << fmt_g(r.mua, "%.17g") << ','
       << fmt_g(r.mub, "%.17g") << ',' << fmt_g(r.energy, "%.17g") << ',' << r.region
       << ',' << fmt_g(r.f_min, "%.17g") << ',' << fmt_g(r.ln_chi, "%.17g") << ','
       << fmt_g(r.sl_matter, "%.17g") << ',' << fmt_g(r.sl_atom, "%.17g") << ','
       << fmt_g(r.svn_matter, "%.17g") << ',' << fmt_g(r.p1, "%.17g") << ','
       << fmt_g(r.p2, "%.17g") << ',' << fmt_g(r.p3, "%.17g") << ','
       << fmt_g(r.d_bures, "%.17g") << ',' << fmt_g(r.f_sas_exact, "%.17g") << ','
       << r.nmax1 << ',' << r.nmax2 << ',' << fmt_g(r.wall_ms, "%.6g") << ','
       << csv_escape(r.error);
    return os.str();
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (char c : line) {
        if (quoted) {
            if (c == '"') quoted = false;
            else cur += c;
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_or_nan(const std::string& s) {
    if (s.empty()) return std::nan("");
    return std::stod(s);
}

bool parse_partial_row(const std::string& line, ScanRecord& r) {
    const auto f = split_csv(line);
    if (f.size() != 22) return false;
    try {
        r.ia = std::stoi(f[0]);
        r.ib = std::stoi(f[1]);
        r.xa = parse_or_nan(f[2]);
        r.xb = parse_or_nan(f[3]);
        r.mua = parse_or_nan(f[4]);
        r.mub = parse_or_nan(f[5]);
        r.energy = parse_or_nan(f[6]);
        r.region = f[7];
        r.f_min = parse_or_nan(f[8]);
        r.ln_chi = parse_or_nan(f[9]);
        r.sl_matter = parse_or_nan(f[10]);
        r.sl_atom = parse_or_nan(f[11]);
        r.svn_matter = parse_or_nan(f[12]);
        r.p1 = parse_or_nan(f[13]);
        r.p2 = parse_or_nan(f[14]);
        r.p3 = parse_or_nan(f[15]);
        r.d_bures = parse_or_nan(f[16]);
        r.f_sas_exact = parse_or_nan(f[17]);
        r.nmax1 = std::stoi(f[18]);
        r.nmax2 = std::stoi(f[19]);
        r.wall_ms = parse_or_nan(f[20]);
        r.error = f[21];
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

void write_scan_svg(const std::string& path, const ScanGrid& grid,
                    const std::vector<ScanRecord>& recs) {
    const int na_pts = grid.axis_a.count(), nb_pts = grid.axis_b.count();
    double lo = 1e300, hi = -1e300;
    for (const auto& r : recs)
        if (r.error.empty()) {
            lo = std::min(lo, r.ln_chi);
            hi = std::max(hi, r.ln_chi);
        }
    if (hi <= lo) hi = lo + 1.0;

    const double cell = 8.0, margin = 40.0;
    SvgCanvas svg(margin * 2 + cell * na_pts, margin * 2 + cell * nb_pts);
    for (const auto& r : recs) {
        if (!r.error.empty()) continue;
        const double t = (r.ln_chi - lo) / (hi - lo);
        svg.rect(margin + cell * r.ia, margin + cell * (nb_pts - 1 - r.ib), cell, cell,
                 heat_color(t));
    }
    svg.text(margin, margin - 10.0,
             "ln chi in [" + fmt_g(lo, "%.4g") + ", " + fmt_g(hi, "%.4g") + "]");
    svg.write(path);
}

}  // namespace

std::vector<ScanRecord> run_scan(const ScanGrid& grid, const ScanConfig& cfg) {
    const int na_pts = grid.axis_a.count(), nb_pts = grid.axis_b.count();
    const int total = na_pts * nb_pts;

    fs::create_directories(cfg.out_dir);
    const fs::path out_csv = fs::path(cfg.out_dir) / (cfg.stem + ".csv");
    const fs::path ridge_csv = fs::path(cfg.out_dir) / (cfg.stem + "_ridge.csv");
    const fs::path timing_csv = fs::path(cfg.out_dir) / (cfg.stem + "_timing.csv");
    const fs::path partial = fs::path(cfg.out_dir) / (cfg.stem + ".partial");
    const std::string fp = scan_fingerprint(grid, cfg);

    std::vector<ScanRecord> recs(total);
    std::vector<char> done(total, 0);

    // resume from a matching partial file
    bool resumed = false;
    if (fs::exists(partial)) {
        std::ifstream in(partial);
        std::string line;
        if (std::getline(in, line) && line == "#cfg " + fp) {
            resumed = true;
            while (std::getline(in, line)) {
                ScanRecord r;
                if (!parse_partial_row(line, r)) continue;
                if (r.ia < 0 || r.ia >= na_pts || r.ib < 0 || r.ib >= nb_pts) continue;
                const int id = r.ia * nb_pts + r.ib;
                recs[id] = r;
                done[id] = 1;
            }
        }
    }

    std::ofstream plog(partial, (resumed ? std::ios::app : std::ios::trunc) |
                                    std::ios::binary);
    if (!resumed) plog << "#cfg " << fp << "\n";
    std::mutex log_mutex;

    std::vector<int> todo;
    for (int id = 0; id < total; ++id)
        if (!done[id]) todo.push_back(id);

    parallel_for(static_cast<int>(todo.size()), cfg.threads, [&](int t) {
        const int id = todo[t];
        ScanRecord r = evaluate_point(grid, cfg, id / nb_pts, id % nb_pts);
        {
            std::lock_guard<std::mutex> lk(log_mutex);
            plog << scan_partial_row(r) << "\n";
            plog.flush();
        }
        recs[id] = std::move(r);
    });
    plog.close();

    {
        std::ofstream out(out_csv, std::ios::binary);
        out << scan_header(cfg.base.config) << "\n";
        for (const auto& r : recs) out << record_csv_row(r) << "\n";
    }
    {
        std::ofstream out(timing_csv, std::ios::binary);
        out << coupling_label_a(cfg.base.config) << ","
            << coupling_label_b(cfg.base.config) << ",wall_ms\n";
        for (const auto& r : recs)
            out << fmt_g(r.xa) << ',' << fmt_g(r.xb) << ',' << fmt_g(r.wall_ms, "%.6g")
                << "\n";
    }
    {
        const auto ridge = extract_ridge(grid, recs);
        std::ofstream out(ridge_csv, std::ios::binary);
        out << coupling_label_a(cfg.base.config) << ","
            << coupling_label_b(cfg.base.config) << ",ln_chi\n";
        for (const auto& [ia, ib] : ridge) {
            const auto& r = recs[ia * nb_pts + ib];
            out << fmt_g(r.xa) << ',' << fmt_g(r.xb) << ',' << fmt_g(r.ln_chi) << "\n";
        }
    }
    if (cfg.svg)
        write_scan_svg((fs::path(cfg.out_dir) / (cfg.stem + ".svg")).string(), grid, recs);

    fs::remove(partial);
    return recs;
}

std::vector<std::pair<int, int>> extract_ridge(const ScanGrid& grid,
                                               const std::vector<ScanRecord>& recs) {
    const int na_pts = grid.axis_a.count(), nb_pts = grid.axis_b.count();
    const auto chi = [&](int i, int j) -> double {
        const auto& r = recs[i * nb_pts + j];
        return r.error.empty() ? r.ln_chi : -1e300;
    };
    std::vector<std::pair<int, int>> ridge;
    for (int i = 0; i < na_pts; ++i)
        for (int j = 0; j < nb_pts; ++j) {
            if (!recs[i * nb_pts + j].error.empty()) continue;
            const double c = chi(i, j);
            const bool max_a =
                i > 0 && i + 1 < na_pts && c > chi(i - 1, j) && c > chi(i + 1, j);
            const bool max_b =
                j > 0 && j + 1 < nb_pts && c > chi(i, j - 1) && c > chi(i, j + 1);
            if (max_a || max_b) ridge.emplace_back(i, j);
        }
    return ridge;
}

SweepResult sweep_entropy(const std::vector<double>& xa_values, const AxisRange& xb,
                          int na, const std::set<Method>& methods,
                          const ScanConfig& cfg, SectorPolicy sector) {
    SweepResult out;
    const int nb_pts = xb.count();
    for (Method m : methods) {
        std::vector<ScanRecord>& recs = out.by_method[m];
        recs.resize(xa_values.size() * nb_pts);
        std::vector<std::pair<int, int>> tasks;
        for (size_t li = 0; li < xa_values.size(); ++li)
            for (int ib = 0; ib < nb_pts; ++ib) tasks.emplace_back(int(li), ib);
        parallel_for(static_cast<int>(tasks.size()), cfg.threads, [&](int t) {
            const auto [li, ib] = tasks[t];
            ScanGrid line;
            line.axis_a = {xa_values[li], xa_values[li], 1.0};
            line.axis_b = xb;
            line.na = na;
            line.method = m;
            line.sector = sector;
            recs[li * nb_pts + ib] = evaluate_point(line, cfg, 0, ib);
            recs[li * nb_pts + ib].ia = int(li);
        });
    }

    fs::create_directories(cfg.out_dir);
    const fs::path csv = fs::path(cfg.out_dir) / (cfg.stem + ".csv");
    std::ofstream f(csv, std::ios::binary);
    f << coupling_label_a(cfg.base.config) << "," << coupling_label_b(cfg.base.config);
    for (Method m : methods) {
        const std::string s = method_name(m);
        f << ",energy_" << s << ",sl_matter_" << s << ",sl_atom_" << s << ",ln_chi_" << s
          << ",error_" << s;
    }
    f << "\n";
    for (size_t li = 0; li < xa_values.size(); ++li)
        for (int ib = 0; ib < nb_pts; ++ib) {
            f << fmt_g(xa_values[li]) << ',' << fmt_g(xb.value(ib));
            for (Method m : methods) {
                const auto& r = out.by_method.at(m)[li * nb_pts + ib];
                f << ',' << fmt_g(r.energy) << ',' << fmt_g(r.sl_matter) << ','
                  << fmt_g(r.sl_atom) << ',' << fmt_g(r.ln_chi) << ','
                  << csv_escape(r.error);
            }
            f << "\n";
        }
    return out;
}

std::vector<CompareRecord> compare_sas_exact(const ScanGrid& grid, const ScanConfig& cfg) {
    const int na_pts = grid.axis_a.count(), nb_pts = grid.axis_b.count();
    std::vector<CompareRecord> recs(na_pts * nb_pts);

    parallel_for(na_pts * nb_pts, cfg.threads, [&](int id) {
        CompareRecord& r = recs[id];
        r.ia = id / nb_pts;
        r.ib = id % nb_pts;
        r.xa = grid.axis_a.value(r.ia);
        r.xb = grid.axis_b.value(r.ib);
        ModelParams base = cfg.base;
        base.na = grid.na;
        const ModelParams p = with_couplings(base, {r.xa, r.xb});
        try {
            const auto sas_sector = *policy_sector(
                grid.sector == SectorPolicy::Auto ? SectorPolicy::EE : grid.sector,
                Method::Sas);
            const HilbertSpace space = sas_space(p);
            SasMinimizeOptions opts;
            opts.seed = point_seed(r.ia, r.ib);
            const SasMinimum sas = minimize_sas(space, p, sas_sector, opts);
            const ConvergedGround cg =
                converge_cutoffs(p, policy_sector(grid.sector, Method::Exact), cfg.tol);
            const HilbertSpace xspace(p.na, cg.solution.cutoffs, p.config);
            const Eigen::MatrixXd rho_x = matter_rdm(xspace, cg.solution.state);
            r.f_sas_exact = fidelity(DensityMatrix::from_real(sas.matter_rdm),
                                     DensityMatrix::from_real(rho_x));
            r.e_sas = sas.energy_per_atom;
            r.e_exact = cg.solution.energy / double(p.na);
        } catch (const std::exception& e) {
            r.error = e.what();
        }
    });

    fs::create_directories(cfg.out_dir);
    std::ofstream f(fs::path(cfg.out_dir) / (cfg.stem + ".csv"), std::ios::binary);
    f << coupling_label_a(cfg.base.config) << "," << coupling_label_b(cfg.base.config)
      << ",f_sas_exact,e_sas,e_exact,error\n";
    for (const auto& r : recs)
        f << fmt_g(r.xa) << ',' << fmt_g(r.xb) << ',' << fmt_g(r.f_sas_exact) << ','
          << fmt_g(r.e_sas) << ',' << fmt_g(r.e_exact) << ',' << csv_escape(r.error)
          << "\n";

    if (cfg.svg) {
        const double cell = 8.0, margin = 40.0;
        SvgCanvas svg(margin * 2 + cell * na_pts, margin * 2 + cell * nb_pts);
        for (const auto& r : recs) {
            if (!r.error.empty()) continue;
            svg.rect(margin + cell * r.ia, margin + cell * (nb_pts - 1 - r.ib), cell,
                     cell, heat_color(r.f_sas_exact));
        }
        svg.text(margin, margin - 10.0, "fidelity SAS vs exact (blue 0, red 1)");
        svg.write((fs::path(cfg.out_dir) / (cfg.stem + ".svg")).string());
    }
    return recs;
}

SimplexSummary sample_simplex(const ScanGrid& grid, const std::set<Method>& methods,
                              const ScanConfig& cfg) {
    const int na_pts = grid.axis_a.count(), nb_pts = grid.axis_b.count();
    SimplexSummary out;

    for (Method m : methods) {
        std::vector<SimplexRecord> recs(na_pts * nb_pts);
        parallel_for(na_pts * nb_pts, cfg.threads, [&](int id) {
            SimplexRecord& r = recs[id];
            r.method = m;
            r.xa = grid.axis_a.value(id / nb_pts);
            r.xb = grid.axis_b.value(id % nb_pts);
            ScanGrid g = grid;
            g.method = m;
            ScanRecord full = evaluate_point(g, cfg, id / nb_pts, id % nb_pts,
                                             /*with_chi=*/false);
            r.error = full.error;
            if (!full.error.empty()) return;
            r.p1 = full.p1;
            r.p2 = full.p2;
            r.p3 = full.p3;
            r.sl_atom = full.sl_atom;
            const auto pt = simplex_embed({r.p1, r.p2, r.p3});
            r.u = pt.u;
            r.v = pt.v;
        });
        int count = 0;
        for (const auto& r : recs)
            if (r.error.empty() && r.sl_atom >= 0.5) ++count;
        out.disk_counts[m] = count;
        out.records.insert(out.records.end(), recs.begin(), recs.end());
    }

    fs::create_directories(cfg.out_dir);
    std::ofstream f(fs::path(cfg.out_dir) / (cfg.stem + ".csv"), std::ios::binary);
    f << "method," << coupling_label_a(cfg.base.config) << ","
      << coupling_label_b(cfg.base.config) << ",p1,p2,p3,u,v,sl_atom,error\n";
    for (const auto& r : out.records)
        f << method_name(r.method) << ',' << fmt_g(r.xa) << ',' << fmt_g(r.xb) << ','
          << fmt_g(r.p1) << ',' << fmt_g(r.p2) << ',' << fmt_g(r.p3) << ',' << fmt_g(r.u)
          << ',' << fmt_g(r.v) << ',' << fmt_g(r.sl_atom) << ',' << csv_escape(r.error)
          << "\n";

    if (cfg.svg) {
        const double scale = 400.0, margin = 40.0;
        const double h = 0.5 * std::sqrt(3.0);
        SvgCanvas svg(scale + 2 * margin, scale * h + 2 * margin);
        const auto px = [&](double u, double v) {
            return std::pair{margin + scale * u, margin + scale * (h - v)};
        };
        svg.polyline({px(0, 0), px(1, 0), px(0.5, h), px(0, 0)}, "blue", 1.5);
        // inscribed circle: center (1/2, sqrt3/6), radius 1/(2 sqrt 3)
        const auto [ccx, ccy] = px(0.5, std::sqrt(3.0) / 6.0);
        std::vector<std::pair<double, double>> circ;
        constexpr double kTau = 6.283185307179586;
        for (int k = 0; k <= 128; ++k) {
            const double th = kTau * k / 128.0;
            circ.push_back({ccx + scale / (2.0 * std::sqrt(3.0)) * std::cos(th),
                            ccy + scale / (2.0 * std::sqrt(3.0)) * std::sin(th)});
        }
        svg.polyline(circ, "black", 0.8);
        const std::map<Method, std::string> colors = {{Method::Exact, "green"},
                                                      {Method::Sas, "red"},
                                                      {Method::MeanField, "orange"}};
        for (const auto& r : out.records) {
            if (!r.error.empty()) continue;
            const auto [cx, cy] = px(r.u, r.v);
            svg.circle(cx, cy, 2.0, colors.at(r.method));
        }
        svg.write((fs::path(cfg.out_dir) / (cfg.stem + ".svg")).string());
    }
    return out;
}

void apply_json_config(const std::string& json_text, ScanGrid& grid, ScanConfig& cfg) {
    const auto j = nlohmann::json::parse(json_text);
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");

    const auto check_keys = [](const nlohmann::json& obj,
                               const std::set<std::string>& allowed,
                               const std::string& where) {
        for (const auto& [key, _] : obj.items())
            if (!allowed.count(key))
                throw std::invalid_argument("unknown key '" + key + "' in " + where);
    };
    check_keys(j, {"preset", "model", "grid", "method", "sector", "dx", "tol", "threads",
                   "out", "svg", "stem"},
               "config");

    if (j.contains("preset")) {
        const ModelParams p = preset(j.at("preset").get<std::string>());
        cfg.base.omega1 = p.omega1; cfg.base.omega2 = p.omega2; cfg.base.omega3 = p.omega3;
        cfg.base.Omega1 = p.Omega1; cfg.base.Omega2 = p.Omega2;
    }
    if (j.contains("model")) {
        const auto& m = j.at("model");
        check_keys(m, {"omega", "Omega", "config", "na", "mu_a", "mu_b"}, "model");
        if (m.contains("omega")) {
            const auto v = m.at("omega").get<std::vector<double>>();
            if (v.size() != 3) throw std::invalid_argument("model.omega needs 3 entries");
            cfg.base.omega1 = v[0]; cfg.base.omega2 = v[1]; cfg.base.omega3 = v[2];
        }
        if (m.contains("Omega")) {
            const auto v = m.at("Omega").get<std::vector<double>>();
            if (v.size() != 2) throw std::invalid_argument("model.Omega needs 2 entries");
            cfg.base.Omega1 = v[0]; cfg.base.Omega2 = v[1];
        }
        if (m.contains("config"))
            cfg.base.config = config_from_name(m.at("config").get<std::string>());
        if (m.contains("na")) grid.na = m.at("na").get<int>();
        if (m.contains("mu_a")) cfg.base.mu_a = m.at("mu_a").get<double>();
        if (m.contains("mu_b")) cfg.base.mu_b = m.at("mu_b").get<double>();
    }
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        check_keys(g, {"a", "b"}, "grid");
        if (g.contains("a")) grid.axis_a = axis_from_string(g.at("a").get<std::string>());
        if (g.contains("b")) grid.axis_b = axis_from_string(g.at("b").get<std::string>());
    }
    if (j.contains("method")) grid.method = method_from_name(j.at("method").get<std::string>());
    if (j.contains("sector"))
        grid.sector = sector_policy_from_name(j.at("sector").get<std::string>());
    if (j.contains("dx")) cfg.dx = j.at("dx").get<double>();
    if (j.contains("tol")) cfg.tol = j.at("tol").get<double>();
    if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
    if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
    if (j.contains("svg")) cfg.svg = j.at("svg").get<bool>();
    if (j.contains("stem")) cfg.stem = j.at("stem").get<std::string>();
}

}  // namespace lcav
