#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace lcav::detail {

struct NelderMeadResult {
    std::vector<double> x;
    double f = 0.0;
    bool converged = false;
    int evals = 0;
};

// Box-constrained downhill simplex.  Candidate points are clamped into
// [lo, hi]; convergence when the simplex diameter drops below diam_tol.
// A shrink step is forced after a run of non-improving iterations so the
// diameter cannot stall.
inline NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& func,
    std::vector<double> x0, const std::vector<double>& lo,
    const std::vector<double>& hi, double initial_step, double diam_tol,
    int max_evals) {
    const size_t n = x0.size();
    NelderMeadResult res;

    const auto clamp = [&](std::vector<double>& x) {
        for (size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
    };
    const auto eval = [&](std::vector<double>& x) {
        clamp(x);
        ++res.evals;
        const double v = func(x);
        return std::isfinite(v) ? v : 1e100;
    };

    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> fv(n + 1);
    clamp(simplex[0]);
    for (size_t i = 0; i < n; ++i) {
        double step = initial_step;
        if (simplex[0][i] + step > hi[i]) step = -initial_step;
        simplex[i + 1][i] += step;
    }
    for (size_t i = 0; i <= n; ++i) fv[i] = eval(simplex[i]);

    const auto diameter = [&]() {
        double d = 0.0;
        for (size_t i = 1; i <= n; ++i)
            for (size_t k = 0; k < n; ++k)
                d = std::max(d, std::abs(simplex[i][k] - simplex[0][k]));
        return d;
    };
    const auto order = [&]() {
        std::vector<size_t> idx(n + 1);
        for (size_t i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> s2;
        std::vector<double> f2;
        for (size_t i : idx) { s2.push_back(simplex[i]); f2.push_back(fv[i]); }
        simplex.swap(s2);
        fv.swap(f2);
    };

    int stalled = 0;
    double best_seen = *std::min_element(fv.begin(), fv.end());
    while (res.evals < max_evals) {
        order();
        if (fv[0] < best_seen - 1e-15) {
            best_seen = fv[0];
            stalled = 0;
        } else {
            ++stalled;
        }
        if (diameter() < diam_tol) {
            res.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (size_t i = 0; i < n; ++i) {
            for (size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k];
        }
        for (size_t k = 0; k < n; ++k) centroid[k] /= double(n);

        const auto point = [&](double coeff) {
            std::vector<double> x(n);
            for (size_t k = 0; k < n; ++k)
                x[k] = centroid[k] + coeff * (simplex[n][k] - centroid[k]);
            return x;
        };

        const auto shrink = [&]() {
            for (size_t i = 1; i <= n; ++i) {
                for (size_t k = 0; k < n; ++k)
                    simplex[i][k] = simplex[0][k] + 0.5 * (simplex[i][k] - simplex[0][k]);
                fv[i] = eval(simplex[i]);
            }
        };

        auto xr = point(-1.0);
        const double fr = eval(xr);
        if (fr < fv[0]) {
            auto xe = point(-2.0);
            const double fe = eval(xe);
            if (fe < fr) { simplex[n] = xe; fv[n] = fe; }
            else { simplex[n] = xr; fv[n] = fr; }
        } else if (fr < fv[n - 1]) {
            simplex[n] = xr;
            fv[n] = fr;
        } else {
            auto xc = point(fr < fv[n] ? -0.5 : 0.5);
            const double fc = eval(xc);
            if (fc < std::min(fr, fv[n])) {
                simplex[n] = xc;
                fv[n] = fc;
            } else {
                shrink();
            }
        }
        // rescue hatch for the rare zigzag that never improves the best
        if (stalled >= 20 * int(n) + 20) {
            shrink();
            stalled = 0;
        }
    }

    order();
    res.x = simplex[0];
    res.f = fv[0];
    return res;
}

}  // namespace lcav::detail
