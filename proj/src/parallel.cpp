#include "shapelab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace shapelab {

namespace {

constexpr double kPi = std::numbers::pi;

double lerp_cross(double va, double vb, double level) {
    return (level - va) / (vb - va);
}

}  // namespace

double contour_length(const DistanceField& field, double level) {
    const RasterMask& m = *field.grid;
    double total = 0.0;
    for (int j = 0; j + 1 < m.ny; ++j) {
        for (int i = 0; i + 1 < m.nx; ++i) {
            // Corner order: 0 bottom-left, 1 bottom-right, 2 top-right, 3 top-left.
            const double v0 = field.d[m.idx(i, j)];
            const double v1 = field.d[m.idx(i + 1, j)];
            const double v2 = field.d[m.idx(i + 1, j + 1)];
            const double v3 = field.d[m.idx(i, j + 1)];
            const int c = (v0 > level ? 1 : 0) | (v1 > level ? 2 : 0) |
                          (v2 > level ? 4 : 0) | (v3 > level ? 8 : 0);
            if (c == 0 || c == 15) continue;

            // Crossing offsets along the four cell edges, in cell units.
            const double bx = (c & 1) != ((c >> 1) & 1) ? lerp_cross(v0, v1, level) : -1.0;
            const double rx = ((c >> 1) & 1) != ((c >> 2) & 1) ? lerp_cross(v1, v2, level) : -1.0;
            const double tx = ((c >> 3) & 1) != ((c >> 2) & 1) ? lerp_cross(v3, v2, level) : -1.0;
            const double lx = (c & 1) != ((c >> 3) & 1) ? lerp_cross(v0, v3, level) : -1.0;

            const Point pb{bx, 0.0};
            const Point pr{1.0, rx};
            const Point pt{tx, 1.0};
            const Point pl{0.0, lx};

            auto seg = [&](Point a, Point b) { total += distance(a, b) * m.h; };

            switch (c) {
                case 1: case 14: seg(pb, pl); break;
                case 2: case 13: seg(pb, pr); break;
                case 4: case 11: seg(pr, pt); break;
                case 8: case 7:  seg(pt, pl); break;
                case 3: case 12: seg(pl, pr); break;
                case 6: case 9:  seg(pb, pt); break;
                case 5: case 10: {
                    // Saddle: split by the sign of the center value.
                    const double center = 0.25 * (v0 + v1 + v2 + v3);
                    const bool center_in = center > level;
                    const bool diag_bl = (c == 5);  // corners 0 and 2 inside
                    if (diag_bl == center_in) {
                        seg(pb, pr);
                        seg(pt, pl);
                    } else {
                        seg(pb, pl);
                        seg(pr, pt);
                    }
                    break;
                }
                default: break;
            }
        }
    }
    return total;
}

ParallelProfile profile(const DistanceField& field, int n_samples) {
    if (n_samples < 8)
        throw std::invalid_argument("profile: need at least 8 samples");
    const RasterMask& m = *field.grid;
    ParallelProfile prof;
    prof.h = m.h;
    prof.rho = field.max_distance;
    if (!(prof.rho > 0.0))
        throw std::invalid_argument("profile: degenerate distance field");
    // Sampling finer than the grid step turns A into a staircase and the
    // difference stencils into noise, so n_samples only caps the count.
    n_samples = std::clamp(static_cast<int>(std::floor(prof.rho / m.h)), 8,
                           n_samples);
    prof.delta = prof.rho / n_samples;

    // alpha follows the classical count: every complement component,
    // including the unbounded one, so a plain disc has alpha = 1.
    const TopologyReport topo = topology(m);
    prof.alpha = topo.n_complement_bounded + 1;

    // Sorted copy of the interior distances turns every A(t_i) into one
    // binary search instead of n_samples full sweeps.
    std::vector<double> dist;
    dist.reserve(m.interior_count());
    for (std::size_t p = 0; p < field.d.size(); ++p)
        if (m.inside[p]) dist.push_back(field.d[p]);
    std::sort(dist.begin(), dist.end());

    const double cell = m.h * m.h;
    prof.t.resize(n_samples);
    prof.area.resize(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        prof.t[i] = i * prof.delta;
        const auto it = std::upper_bound(dist.begin(), dist.end(), prof.t[i]);
        prof.area[i] = static_cast<double>(dist.end() - it) * cell;
    }
    prof.area0 = prof.area[0];

    if (m.domain) {
        const MeasureReport mr = measure(*m.domain);
        prof.p_eff = mr.perimeter + 2.0 * mr.slit_length;
        prof.p_eff_exact = true;
    }

    // L = -A' by second-order differences; one-sided stencils at the ends.
    const int n = n_samples;
    prof.length_diff.resize(n);
    const double two_d = 2.0 * prof.delta;
    prof.length_diff[0] =
        (3.0 * prof.area[0] - 4.0 * prof.area[1] + prof.area[2]) / two_d;
    for (int i = 1; i + 1 < n; ++i)
        prof.length_diff[i] = (prof.area[i - 1] - prof.area[i + 1]) / two_d;
    prof.length_diff[n - 1] = (4.0 * prof.area[n - 2] - 3.0 * prof.area[n - 1] -
                               prof.area[n - 3]) / two_d;

    prof.length_contour.resize(n);
    for (int i = 0; i < n; ++i) {
        const double level = std::max(prof.t[i], 1e-9 * prof.rho);
        prof.length_contour[i] = contour_length(field, level);
    }
    if (!prof.p_eff_exact) {
        prof.p_eff = prof.length_diff[0];
        prof.p_eff_exact = false;
    }

    prof.g.resize(n);
    for (int i = 0; i < n; ++i)
        prof.g[i] = prof.length_diff[i] - 2.0 * kPi * (prof.alpha - 1.0) * prof.t[i];

    prof.low_confidence.assign(n, 0);
    prof.low_confidence[n - 1] = 1;
    prof.low_confidence[n - 2] = 1;
    for (int i = 0; i < n; ++i) {
        const double a = prof.length_diff[i];
        const double b = prof.length_contour[i];
        const double scale = std::max(a, b);
        if (a <= 0.0 || (scale > 0.0 && std::abs(a - b) > 0.05 * scale))
            prof.low_confidence[i] = 1;
    }
    return prof;
}

ConcavityCheck check_concavity(const ParallelProfile& prof, double tol_factor) {
    ConcavityCheck c;
    c.tolerance = tol_factor * prof.h * prof.p_eff / prof.rho;
    c.pass = true;
    const int n = prof.samples();
    auto phi = [&](int i) {
        return -prof.area[i] - (prof.alpha - 1.0) * kPi * prof.t[i] * prof.t[i];
    };
    for (int i = 1; i + 1 < n; ++i) {
        if (prof.low_confidence[i - 1] || prof.low_confidence[i] ||
            prof.low_confidence[i + 1])
            continue;
        const double second = phi(i + 1) - 2.0 * phi(i) + phi(i - 1);
        if (second > c.worst) {
            c.worst = second;
            c.worst_index = i;
        }
    }
    c.pass = c.worst <= c.tolerance;
    return c;
}

PerimeterGrowthCheck check_perimeter_growth(const ParallelProfile& prof,
                                            int k, double tol_rel) {
    PerimeterGrowthCheck c;
    c.pass = true;
    c.worst_excess = -std::numeric_limits<double>::infinity();
    c.tolerance = tol_rel * prof.p_eff + 2.0 * prof.h;
    const int n = prof.samples();
    for (int i = 0; i < n; ++i) {
        if (prof.low_confidence[i]) continue;
        const double bound = prof.p_eff + 2.0 * kPi * (k - 1.0) * prof.t[i];
        const double excess = prof.length_diff[i] - bound;
        if (excess > c.worst_excess) {
            c.worst_excess = excess;
            c.worst_index = i;
        }
        if (excess > c.tolerance) c.pass = false;
    }
    return c;
}

AreaBoundCheck check_area_bound(const ParallelProfile& prof, int k,
                                double tol_rel) {
    AreaBoundCheck c;
    c.pass = true;
    c.worst_excess = -std::numeric_limits<double>::infinity();
    // The inradius enters the bound directly and the grid estimate sits up
    // to h*sqrt(2) below the true value, so that bias gets its own term.
    c.tolerance = tol_rel * prof.area0 +
                  prof.p_eff * (std::sqrt(2.0) * prof.h + prof.delta);
    const int n = prof.samples();
    for (int i = 0; i < n; ++i) {
        if (prof.low_confidence[i]) continue;
        const double rt = prof.rho - prof.t[i];
        const double bound = prof.p_eff * rt + kPi * (k - 1.0) * rt * rt;
        const double excess = prof.area[i] - bound;
        if (excess > c.worst_excess) {
            c.worst_excess = excess;
            c.worst_index = i;
        }
        if (excess > c.tolerance) c.pass = false;
    }
    return c;
}

double parallel_trial_lower(const ParallelProfile& prof) {
    const int n = prof.samples();
    const int last = n - 3;  // drop the two flagged tail samples
    if (last < 1)
        throw std::invalid_argument("parallel_trial_lower: too few samples");
    // The contour estimate of L is the quadrature denominator: counting
    // noise in the difference estimate sits downstairs, where it only
    // inflates the integral (a 1/L average exceeds 1/(average L)), and an
    // inflated lower bound is the one failure mode this function must not
    // have.
    for (int i = 0; i <= last; ++i) {
        if (prof.length_contour[i] <= 0.0)
            throw std::invalid_argument(
                "parallel_trial_lower: degenerate profile, nonpositive L at sample " +
                std::to_string(i));
    }
    auto f = [&](int i) {
        return prof.area[i] * prof.area[i] / prof.length_contour[i];
    };
    double integral = 0.0;
    for (int i = 0; i < last; ++i)
        integral += 0.5 * (f(i) + f(i + 1)) * prof.delta;
    return integral;
}

MinkowskiReport minkowski_estimates(const RasterMask& mask,
                                    std::vector<double> r_values) {
    if (!mask.domain || !mask.segments)
        throw std::invalid_argument(
            "minkowski_estimates: mask carries no source geometry");
    if (r_values.empty())
        throw std::invalid_argument("minkowski_estimates: no radii given");
    std::sort(r_values.begin(), r_values.end());
    if (r_values.front() <= 0.0)
        throw std::invalid_argument("minkowski_estimates: radii must be positive");
    const double r_max = r_values.back();

    // Padded frame so the outer tube {d <= r} is never clipped.
    const int pad = static_cast<int>(std::ceil(r_max / mask.h)) + 4;
    RasterMask frame;
    frame.h = mask.h;
    frame.ix0 = mask.ix0 - pad;
    frame.iy0 = mask.iy0 - pad;
    frame.nx = mask.nx + 2 * pad;
    frame.ny = mask.ny + 2 * pad;
    const std::size_t n =
        static_cast<std::size_t>(frame.nx) * static_cast<std::size_t>(frame.ny);
    if (n > (std::size_t{1} << 25))
        throw std::invalid_argument("minkowski_estimates: padded grid too large");

    std::vector<std::uint8_t> inside(n, 0);
    std::vector<std::uint8_t> row;
    for (int j = 0; j < frame.ny; ++j) {
        detail::scanline_row(*mask.domain, frame, j, row);
        std::copy(row.begin(), row.end(),
                  inside.begin() + static_cast<std::size_t>(j) * frame.nx);
    }

    const std::vector<double> dist =
        distance_to_segments(frame, *mask.segments);

    // One sorted pass per estimator: distances split by side of the boundary.
    std::vector<double> d_all(dist);
    std::vector<double> d_out, d_in;
    d_out.reserve(n);
    d_in.reserve(n);
    for (std::size_t p = 0; p < n; ++p)
        (inside[p] ? d_in : d_out).push_back(dist[p]);
    std::sort(d_all.begin(), d_all.end());
    std::sort(d_out.begin(), d_out.end());
    std::sort(d_in.begin(), d_in.end());

    const double cell = frame.h * frame.h;
    auto count_le = [](const std::vector<double>& v, double r) {
        return static_cast<double>(
            std::upper_bound(v.begin(), v.end(), r) - v.begin());
    };

    MinkowskiReport rep;
    rep.r = r_values;
    for (double r : r_values) {
        rep.two_sided.push_back(count_le(d_all, r) * cell / (2.0 * r));
        rep.outer.push_back(count_le(d_out, r) * cell / r);
        rep.inner_quotient.push_back(count_le(d_in, r) * cell / r);
    }

    auto extrapolate = [](const std::vector<double>& r,
                          const std::vector<double>& v) {
        // Least-squares line through all samples; its value at r = 0.
        // Using every radius damps the counting noise of the small ones.
        if (r.size() < 2) return v[0];
        const double m = static_cast<double>(r.size());
        double sr = 0.0, sv = 0.0, srr = 0.0, srv = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            sr += r[i];
            sv += v[i];
            srr += r[i] * r[i];
            srv += r[i] * v[i];
        }
        const double denom = m * srr - sr * sr;
        if (denom <= 0.0) return v[0];
        const double slope = (m * srv - sr * sv) / denom;
        return (sv - slope * sr) / m;
    };
    rep.two_sided_limit = extrapolate(rep.r, rep.two_sided);
    rep.outer_limit = extrapolate(rep.r, rep.outer);
    rep.inner_limit = extrapolate(rep.r, rep.inner_quotient);
    return rep;
}

std::vector<InnerParallelSet> inner_parallel_approximants(
    const PlanarDomain& domain, const std::vector<double>& t_list, double h) {
    const RasterMask base = rasterize(domain, h);
    const DistanceField field = distance_field(base);

    std::vector<InnerParallelSet> out;
    out.reserve(t_list.size());
    for (double t : t_list) {
        if (t < 2.0 * h)
            throw std::invalid_argument(
                "inner_parallel_approximants: offset below grid resolution");
        if (t >= field.max_distance)
            throw std::invalid_argument(
                "inner_parallel_approximants: offset at or beyond the inradius");
        InnerParallelSet s;
        s.t = t;
        s.mask.h = base.h;
        s.mask.ix0 = base.ix0;
        s.mask.iy0 = base.iy0;
        s.mask.nx = base.nx;
        s.mask.ny = base.ny;
        s.mask.inside.assign(base.inside.size(), 0);
        s.mask.blocked_right.assign(base.inside.size(), 0);
        s.mask.blocked_up.assign(base.inside.size(), 0);
        for (std::size_t p = 0; p < base.inside.size(); ++p)
            if (base.inside[p] && field.d[p] > t) s.mask.inside[p] = 1;
        s.area = s.mask.area_estimate();
        s.perimeter_estimate = contour_length(field, t);
        s.topo = topology(s.mask);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace shapelab
