#include "shapelab/torsion.hpp"

#include "shapelab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace shapelab {

namespace {

constexpr double kPi = std::numbers::pi;

/// Interior system in compressed row-major order.  Matrix A = 4I - adj with
/// the open-neighbor adjacency; right side h^2.  Natural ordering keeps the
/// left and down neighbors strictly lower, which is what the SSOR sweeps
/// assume.
struct System {
    int m = 0;
    std::vector<int> id;        // full grid -> compressed index or -1
    std::vector<std::size_t> cell;  // compressed -> full grid index
    std::vector<int> left, right, down, up;  // -1 where the wall sits

    explicit System(const RasterMask& mask) {
        const std::size_t n = mask.inside.size();
        id.assign(n, -1);
        for (int j = 0; j < mask.ny; ++j)
            for (int i = 0; i < mask.nx; ++i)
                if (mask.inside[mask.idx(i, j)]) {
                    id[mask.idx(i, j)] = m++;
                    cell.push_back(mask.idx(i, j));
                }
        left.assign(m, -1);
        right.assign(m, -1);
        down.assign(m, -1);
        up.assign(m, -1);
        for (int j = 0; j < mask.ny; ++j) {
            for (int i = 0; i < mask.nx; ++i) {
                const int me = id[mask.idx(i, j)];
                if (me < 0) continue;
                if (mask.is_inside(i - 1, j) && mask.open_right(i - 1, j))
                    left[me] = id[mask.idx(i - 1, j)];
                if (mask.is_inside(i + 1, j) && mask.open_right(i, j))
                    right[me] = id[mask.idx(i + 1, j)];
                if (mask.is_inside(i, j - 1) && mask.open_up(i, j - 1))
                    down[me] = id[mask.idx(i, j - 1)];
                if (mask.is_inside(i, j + 1) && mask.open_up(i, j))
                    up[me] = id[mask.idx(i, j + 1)];
            }
        }
    }

    void apply(const std::vector<double>& x, std::vector<double>& y) const {
        for (int i = 0; i < m; ++i) {
            double v = 4.0 * x[i];
            if (left[i] >= 0) v -= x[left[i]];
            if (right[i] >= 0) v -= x[right[i]];
            if (down[i] >= 0) v -= x[down[i]];
            if (up[i] >= 0) v -= x[up[i]];
            y[i] = v;
        }
    }

    /// z = M^-1 r for the SSOR preconditioner
    /// M = (D/w + L) (w/(2-w)) D^-1 (D/w + U), D = 4I.
    void ssor_apply(double omega, const std::vector<double>& r,
                    std::vector<double>& z, std::vector<double>& tmp) const {
        const double inv_diag = omega / 4.0;
        for (int i = 0; i < m; ++i) {
            double v = r[i];
            if (left[i] >= 0) v += tmp[left[i]];
            if (down[i] >= 0) v += tmp[down[i]];
            tmp[i] = v * inv_diag;
        }
        const double mid = 4.0 * (2.0 - omega) / omega;
        for (int i = m - 1; i >= 0; --i) {
            double v = tmp[i] * mid;
            if (right[i] >= 0) v += z[right[i]];
            if (up[i] >= 0) v += z[up[i]];
            z[i] = v * inv_diag;
        }
    }
};

}  // namespace

TorsionSolution solve_torsion(const RasterMask& mask, const SolverOptions& options) {
    if (!(options.rel_tol > 0.0) || options.omega <= 0.0 || options.omega >= 2.0)
        throw std::invalid_argument("solve_torsion: bad solver options");
    const System sys(mask);
    if (sys.m == 0) throw std::invalid_argument("solve_torsion: empty mask");

    const double h = mask.h;
    const double b = h * h;
    const double b_norm = b * std::sqrt(static_cast<double>(sys.m));
    const int cap = options.max_iterations > 0
                        ? options.max_iterations
                        : 60 * std::max(mask.nx, mask.ny) + 500;

    std::vector<double> x(sys.m, 0.0);
    if (options.initial_guess) {
        const std::vector<double>& g = *options.initial_guess;
        if (g.size() != mask.inside.size())
            throw std::invalid_argument("solve_torsion: initial guess layout mismatch");
        for (int i = 0; i < sys.m; ++i) x[i] = g[sys.cell[i]];
    }

    std::vector<double> r(sys.m), z(sys.m), p(sys.m), ap(sys.m), tmp(sys.m);
    sys.apply(x, r);
    for (int i = 0; i < sys.m; ++i) r[i] = b - r[i];

    auto norm2 = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x * x;
        return std::sqrt(s);
    };

    double res = norm2(r) / b_norm;
    int iter = 0;
    if (res > options.rel_tol) {
        sys.ssor_apply(options.omega, r, z, tmp);
        p = z;
        double rz = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
        while (true) {
            if (iter >= cap) {
                throw SolverFailure(
                    "solve_torsion: no convergence after " + std::to_string(iter) +
                        " iterations, relative residual " + std::to_string(res),
                    iter, res);
            }
            ++iter;
            sys.apply(p, ap);
            const double pap = std::inner_product(p.begin(), p.end(), ap.begin(), 0.0);
            const double alpha = rz / pap;
            for (int i = 0; i < sys.m; ++i) x[i] += alpha * p[i];
            for (int i = 0; i < sys.m; ++i) r[i] -= alpha * ap[i];
            res = norm2(r) / b_norm;
            if (res <= options.rel_tol) break;
            sys.ssor_apply(options.omega, r, z, tmp);
            const double rz_next =
                std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
            const double beta = rz_next / rz;
            rz = rz_next;
            for (int i = 0; i < sys.m; ++i) p[i] = z[i] + beta * p[i];
        }
    }

    TorsionSolution sol;
    sol.h = h;
    sol.iterations = iter;
    sol.rel_residual = res;
    sol.u.assign(mask.inside.size(), 0.0);
    double sum = 0.0;
    for (int i = 0; i < sys.m; ++i) {
        sol.u[sys.cell[i]] = x[i];
        sum += x[i];
    }
    sol.T = b * sum;
    return sol;
}

std::vector<double> prolong(const RasterMask& coarse,
                            const std::vector<double>& u_coarse,
                            const RasterMask& fine) {
    std::vector<double> out(fine.inside.size(), 0.0);
    auto coarse_at = [&](int i, int j) {
        if (i < 0 || j < 0 || i >= coarse.nx || j >= coarse.ny) return 0.0;
        return u_coarse[coarse.idx(i, j)];
    };
    for (int j = 0; j < fine.ny; ++j) {
        for (int i = 0; i < fine.nx; ++i) {
            if (!fine.inside[fine.idx(i, j)]) continue;
            const Point p = fine.node(i, j);
            const double gx = p.x / coarse.h - coarse.ix0;
            const double gy = p.y / coarse.h - coarse.iy0;
            const int i0 = static_cast<int>(std::floor(gx));
            const int j0 = static_cast<int>(std::floor(gy));
            const double fx = gx - i0;
            const double fy = gy - j0;
            out[fine.idx(i, j)] =
                (1 - fx) * (1 - fy) * coarse_at(i0, j0) +
                fx * (1 - fy) * coarse_at(i0 + 1, j0) +
                (1 - fx) * fy * coarse_at(i0, j0 + 1) +
                fx * fy * coarse_at(i0 + 1, j0 + 1);
        }
    }
    return out;
}

RichardsonTorsion richardson_torsion(const PlanarDomain& domain, double h,
                                     const SolverOptions& options) {
    const RasterMask coarse = rasterize(domain, h);
    const RasterMask fine = rasterize(domain, 0.5 * h);

    const TorsionSolution sol_c = solve_torsion(coarse, options);
    const std::vector<double> guess = prolong(coarse, sol_c.u, fine);
    SolverOptions fine_options = options;
    fine_options.initial_guess = &guess;
    TorsionSolution sol_f = solve_torsion(fine, fine_options);

    RichardsonTorsion rt;
    rt.h = h;
    rt.T_coarse = sol_c.T;
    rt.T_fine = sol_f.T;
    rt.T_extrapolated = 2.0 * sol_f.T - sol_c.T;
    rt.coarse_iterations = sol_c.iterations;
    rt.fine = std::move(sol_f);
    return rt;
}

double rayleigh_lower(const RasterMask& mask, const std::vector<double>& u) {
    if (u.size() != mask.inside.size())
        throw std::invalid_argument("rayleigh_lower: trial layout mismatch");
    double sum = 0.0;
    double energy = 0.0;
    for (int j = 0; j < mask.ny; ++j) {
        for (int i = 0; i < mask.nx; ++i) {
            const std::size_t p = mask.idx(i, j);
            if (!mask.inside[p]) continue;
            const double v = u[p];
            sum += v;
            int open_degree = 0;
            // Each open interior edge once (toward the right and up).
            if (mask.is_inside(i + 1, j) && mask.open_right(i, j)) {
                const double w = u[mask.idx(i + 1, j)];
                energy += (v - w) * (v - w);
                ++open_degree;
            }
            if (mask.is_inside(i, j + 1) && mask.open_up(i, j)) {
                const double w = u[mask.idx(i, j + 1)];
                energy += (v - w) * (v - w);
                ++open_degree;
            }
            if (mask.is_inside(i - 1, j) && mask.open_right(i - 1, j)) ++open_degree;
            if (mask.is_inside(i, j - 1) && mask.open_up(i, j - 1)) ++open_degree;
            energy += (4 - open_degree) * v * v;
        }
    }
    const double h2 = mask.h * mask.h;
    if (!(std::abs(sum) > 0.0) || !(energy > 0.0))
        throw std::invalid_argument("rayleigh_lower: zero trial field");
    // (integral of u)^2 over the Dirichlet energy; the h^2 factors of the
    // gradient quadrature cancel.
    return (h2 * sum) * (h2 * sum) / energy;
}

double disc_torsion(double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("disc_torsion: bad radius");
    return kPi * radius * radius * radius * radius / 8.0;
}

double annulus_torsion(double inner, double outer) {
    if (!(0.0 < inner && inner < outer))
        throw std::invalid_argument("annulus_torsion: need 0 < inner < outer");
    const double r2 = inner * inner;
    const double R2 = outer * outer;
    const double ring = R2 - r2;
    return kPi / 8.0 * (R2 * R2 - r2 * r2 - ring * ring / std::log(outer / inner));
}

double rectangle_torsion(double a, double b) {
    if (!(a > 0.0 && b > 0.0))
        throw std::invalid_argument("rectangle_torsion: bad sides");
    const double wide = std::max(a, b);
    const double thin = std::min(a, b);
    double series = 0.0;
    for (int n = 1; n <= 39; n += 2) {
        const double arg = n * kPi * wide / (2.0 * thin);
        series += std::tanh(arg) / (static_cast<double>(n) * n * n * n * n);
    }
    const double factor =
        1.0 / 3.0 - 64.0 / (kPi * kPi * kPi * kPi * kPi) * (thin / wide) * series;
    return 0.25 * wide * thin * thin * thin * factor;
}

TorsionBounds torsion_bounds(const ParallelProfile& profile,
                             const MeasureReport& measure, int k) {
    TorsionBounds b;
    b.T_parallel_lb = parallel_trial_lower(profile);
    b.D_k = measure.pk_upper +
            2.0 * kPi * std::max(k - 1, 0) * profile.rho;
    const double a = measure.area;
    b.T_polya_lb = a * a * a / (3.0 * b.D_k * b.D_k);
    return b;
}

}  // namespace shapelab
