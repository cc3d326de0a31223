#include "iwt/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "iwt/dispersion.hpp"

namespace iwt {

std::optional<RootJacobian> solve_k2(double omega_target, double m2, const PhysicalParams& params) {
    if (m2 == 0.0) throw std::domain_error("solve_k2: m2 = 0");
    if (omega_target < params.f) return std::nullopt;
    const double c = params.rho0 * params.N * std::fabs(m2) / params.g;
    const double s = std::sqrt(std::max(omega_target * omega_target - params.f * params.f, 0.0));
    const double k2 = c * s;
    const double jac = (k2 > 0.0) ? c * c * omega_target / k2
                                  : std::numeric_limits<double>::infinity();
    return RootJacobian{k2, jac};
}

std::optional<double> triangle_kernel(double k, double k1, double k2) {
    if (k < 0.0 || k1 < 0.0 || k2 < 0.0)
        throw std::domain_error("triangle_kernel: negative wavenumber magnitude");
    if (!triangle_valid(k, k1, k2)) return std::nullopt;
    const double delta = triangle_delta(k, k1, k2);
    if (delta == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / delta;
}

void QuadratureSettings::validate() const {
    if (refinement < 0 || refinement > 6)
        throw std::invalid_argument("QuadratureSettings: refinement out of range [0, 6]");
    if (mu_per_decade < 2 || gl_points < 2 || scan_points < 8)
        throw std::invalid_argument("QuadratureSettings: node densities too small");
    if (!(kernel_norm > 0.0)) throw std::invalid_argument("QuadratureSettings: kernel_norm must be > 0");
    if (!(k_cut_min > 0.0 && k_cut_min < k_cut_max))
        throw std::invalid_argument("QuadratureSettings: invalid k cutoffs");
    if (!(m_cut_min > 0.0 && m_cut_min < m_cut_max))
        throw std::invalid_argument("QuadratureSettings: invalid m cutoffs");
}

QuadratureSettings QuadratureSettings::for_grid(const SpectralGrid& grid, int refinement,
                                                double extend) {
    QuadratureSettings q;
    q.refinement = refinement;
    q.k_cut_min = grid.k_min() / extend;
    q.k_cut_max = grid.k_max() * extend;
    q.m_cut_min = grid.m_min() / extend;
    q.m_cut_max = grid.m_max() * extend;
    q.validate();
    return q;
}

QuadratureSettings QuadratureSettings::with_cutoff_factor(double factor) const {
    if (!(factor > 0.0)) throw std::invalid_argument("with_cutoff_factor: factor must be > 0");
    QuadratureSettings q = *this;
    q.k_cut_min /= factor;
    q.k_cut_max *= factor;
    q.m_cut_min /= factor;
    q.m_cut_max *= factor;
    return q;
}

const GaussLegendre& gauss_legendre(int n) {
    static std::map<int, GaussLegendre> cache;
    static std::mutex mtx;
    std::lock_guard lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussLegendre gl;
    gl.nodes.resize(n);
    gl.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton iteration from the Chebyshev estimate.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        gl.nodes[i] = -x;
        gl.nodes[n - 1 - i] = x;
        gl.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        gl.weights[n - 1 - i] = gl.weights[i];
    }
    return cache.emplace(n, std::move(gl)).first->second;
}

namespace {

// Dispersion helpers switched between the full and the high-frequency form.
struct Dispersion {
    const PhysicalParams& P;
    bool hf;

    double omega_of(double k, double m_abs) const {
        const double r = P.g * k / (P.rho0 * P.N * m_abs);
        return hf ? r : std::sqrt(P.f * P.f + r * r);
    }
    double k_of(double w, double m_abs) const {
        const double c = P.rho0 * P.N * m_abs / P.g;
        if (hf) return c * w;
        return c * std::sqrt(std::max(w * w - P.f * P.f, 0.0));
    }
    // dk/d omega at fixed m = |d omega / d k|^{-1}
    double dk_domega(double w, double m_abs) const {
        const double c = P.rho0 * P.N * m_abs / P.g;
        if (hf) return c;
        const double s = std::sqrt(std::max(w * w - P.f * P.f, 0.0));
        return (s > 0.0) ? c * w / s : std::numeric_limits<double>::infinity();
    }
};

// The (free, dependent) leg relation of one collision term.  The direct
// term splits the target; in the mirror terms the target is one of the
// daughters and either the parent or the sibling is enumerated.
enum class Pattern { split, parent_free, sibling_free };

struct BranchPlan {
    Pattern pattern;
    bool free_is_leg1;  // emitted labels: free leg -> (k1, m1) or (k2, m2)
};

BranchPlan plan_for(CollisionBranch branch, bool swap_roles) {
    switch (branch) {
        case CollisionBranch::direct:
            return {Pattern::split, !swap_roles};
        case CollisionBranch::mirror1:
            // parent is leg 1
            return swap_roles ? BranchPlan{Pattern::sibling_free, false}
                              : BranchPlan{Pattern::parent_free, true};
        case CollisionBranch::mirror2:
            // parent is leg 2
            return swap_roles ? BranchPlan{Pattern::parent_free, false}
                              : BranchPlan{Pattern::sibling_free, true};
    }
    throw std::logic_error("plan_for: bad branch");
}

struct MuNode {
    double m_free = 0.0;  // signed
    double m_dep = 0.0;   // signed
    double weight = 0.0;  // |d m_free|
};

struct NodeList {
    std::vector<MuNode> nodes;
};

// Sub-intervals of [lo, hi] on which an integer signature is constant and
// nonzero, located by a logarithmic scan plus bisection of the change
// points.  After the inner frequency integration the integrand has finite
// jumps (window open/close) and logarithmic cusps (fold tangencies) at
// signature changes, so quadrature intervals must never straddle them.
template <typename Sig>
std::vector<std::pair<double, double>> signature_pieces(double lo, double hi, int scan_n,
                                                        Sig&& sig) {
    std::vector<std::pair<double, double>> pieces;
    if (!(lo > 0.0) || !(hi > lo)) return pieces;
    const double llo = std::log(lo), lhi = std::log(hi);
    std::vector<double> pts(scan_n + 1);
    for (int i = 0; i <= scan_n; ++i) pts[i] = std::exp(llo + (lhi - llo) * i / scan_n);
    pts.front() = lo;
    pts.back() = hi;
    auto bisect = [&](double a, double b, int sig_a) {
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (a + b);
            if (mid == a || mid == b) break;
            if (sig(mid) == sig_a)
                a = mid;
            else
                b = mid;
        }
        return 0.5 * (a + b);
    };
    int prev = sig(pts[0]);
    double start = pts[0];
    for (int i = 1; i <= scan_n; ++i) {
        const int cur = sig(pts[i]);
        if (cur != prev) {
            const double edge = bisect(pts[i - 1], pts[i], prev);
            if (prev != 0 && edge > start) pieces.emplace_back(start, edge);
            start = edge;
            prev = cur;
        }
    }
    if (prev != 0 && hi > start) pieces.emplace_back(start, hi);
    return pieces;
}

// Gauss-Legendre nodes under the sine endpoint map in a transformed
// variable u; mu_of_u returns (mu, dmu/du).
template <typename Map, typename Emit>
void gl_piece_nodes(double u_lo, double u_hi, int n_points, Map&& mu_of_u, Emit&& emit) {
    if (!(u_hi > u_lo)) return;
    const auto& gl = gauss_legendre(n_points);
    const double c = 0.5 * (u_lo + u_hi), r = 0.5 * (u_hi - u_lo);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double theta = 0.5 * M_PI * gl.nodes[i];
        const double u = c + r * std::sin(theta);
        const double du = gl.weights[i] * 0.5 * M_PI * r * std::cos(theta);
        const auto [mu, dmu] = mu_of_u(u);
        emit(mu, dmu * du);
    }
}

// One sign sector of the vertical-wavenumber integral: the free magnitude
// variable t maps to m_free = sign * (shift + t); pair sectors live in
// t in (0, m) and get the two-sided grading.
struct SectorSpec {
    bool pair = false;
    double sign = 1.0;
    double shift = 0.0;
    double lo = 0.0, hi = 0.0;
};

std::vector<SectorSpec> sectors_for(Pattern pattern, double m, const QuadratureSettings& quad) {
    const double c0 = quad.m_cut_min, c1 = quad.m_cut_max;
    const double pair_lo = std::max(c0, m - c1);
    const double pair_hi = std::min(c1, m - c0);
    const SectorSpec pair_pos{true, +1.0, 0.0, pair_lo, pair_hi};
    const SectorSpec pair_neg{true, -1.0, 0.0, pair_lo, pair_hi};
    const SectorSpec up_pos{false, +1.0, m, c0, c1 - m};    // m_free = +(m + t)
    const SectorSpec up_neg{false, -1.0, m, c0, c1 - m};    // m_free = -(m + t)
    const SectorSpec small_pos{false, +1.0, 0.0, c0, c1 - m};  // m_free = +t
    const SectorSpec small_neg{false, -1.0, 0.0, c0, c1 - m};  // m_free = -t

    std::vector<SectorSpec> out;
    switch (pattern) {
        case Pattern::split:
            out.push_back(pair_pos);
            if (quad.mixed_sign_m) {
                out.push_back(up_pos);
                out.push_back(small_neg);
            }
            break;
        case Pattern::parent_free:
            out.push_back(up_pos);
            if (quad.mixed_sign_m) {
                out.push_back(pair_pos);
                out.push_back(small_neg);
            }
            break;
        case Pattern::sibling_free:
            out.push_back(small_pos);
            if (quad.mixed_sign_m) {
                out.push_back(pair_neg);
                out.push_back(up_neg);
            }
            break;
    }
    return out;
}

double dep_of_free(Pattern pattern, double m, double m_free) {
    switch (pattern) {
        case Pattern::split: return m - m_free;
        case Pattern::parent_free: return m_free - m;
        case Pattern::sibling_free: return m_free + m;
    }
    return 0.0;
}

// Vertical-wavenumber nodes of one pattern, split at the resonance-region
// signature changes.  The signature (per free vertical wavenumber) is
// supplied by the caller.  Pair sectors use u = log(mu/(m - mu)), which is
// odd under mu <-> m - mu, so swapped-role enumerations mirror exactly;
// half-line sectors use u = log t.
template <typename Signature>
NodeList mu_sectors(Pattern pattern, double m, const QuadratureSettings& quad,
                    Signature&& signature_mu) {
    NodeList out;
    const int pd = quad.mu_per_decade_eff();
    const int scan_n = quad.scan_points << quad.refinement;
    const double ln10 = std::log(10.0);

    for (const SectorSpec& sec : sectors_for(pattern, m, quad)) {
        if (!(sec.lo > 0.0) || !(sec.hi > sec.lo)) continue;
        auto sig = [&](double t) { return signature_mu(sec.sign * (sec.shift + t)); };
        auto emit = [&](double mu_t, double w) {
            const double mf = sec.sign * (sec.shift + mu_t);
            out.nodes.push_back({mf, dep_of_free(pattern, m, mf), w});
        };
        for (const auto& [a, b] : signature_pieces(sec.lo, sec.hi, scan_n, sig)) {
            if (sec.pair) {
                const double ua = std::log(a / (m - a));
                const double ub = std::log(b / (m - b));
                const int n = std::clamp(static_cast<int>(std::ceil(pd * (ub - ua) / ln10)), 8,
                                         1 << 12);
                gl_piece_nodes(
                    ua, ub, n,
                    [&](double u) {
                        const double mu = m / (1.0 + std::exp(-u));
                        return std::pair{mu, mu * (m - mu) / m};
                    },
                    emit);
            } else {
                const double ua = std::log(a), ub = std::log(b);
                const int n = std::clamp(static_cast<int>(std::ceil(pd * (ub - ua) / ln10)), 8,
                                         1 << 12);
                gl_piece_nodes(
                    ua, ub, n,
                    [&](double u) {
                        const double t = std::exp(u);
                        return std::pair{t, t};
                    },
                    emit);
            }
        }
    }
    return out;
}

struct NuRange {
    double lo = 0.0, hi = 0.0;
    bool log_scan = false;
};

// Frequency window of the free leg implied by the k cutoffs of both legs.
std::optional<NuRange> nu_range(Pattern pattern, double omega_t, double mf_abs, double md_abs,
                                const Dispersion& disp, const QuadratureSettings& quad) {
    const double f_lo = disp.omega_of(quad.k_cut_min, mf_abs);
    const double f_hi = disp.omega_of(quad.k_cut_max, mf_abs);
    const double d_lo = disp.omega_of(quad.k_cut_min, md_abs);
    const double d_hi = disp.omega_of(quad.k_cut_max, md_abs);
    NuRange r;
    switch (pattern) {
        case Pattern::split:
            r.lo = std::max(f_lo, omega_t - d_hi);
            r.hi = std::min(f_hi, omega_t - d_lo);
            r.log_scan = false;
            break;
        case Pattern::parent_free:
            r.lo = std::max(f_lo, omega_t + d_lo);
            r.hi = std::min(f_hi, omega_t + d_hi);
            r.log_scan = true;
            break;
        case Pattern::sibling_free:
            r.lo = std::max(f_lo, d_lo - omega_t);
            r.hi = std::min(f_hi, d_hi - omega_t);
            r.log_scan = true;
            break;
    }
    if (!(r.lo < r.hi)) return std::nullopt;
    return r;
}

double dep_freq(Pattern pattern, double omega_t, double nu) {
    switch (pattern) {
        case Pattern::split: return omega_t - nu;
        case Pattern::parent_free: return nu - omega_t;
        case Pattern::sibling_free: return nu + omega_t;
    }
    return 0.0;
}

// Triangle doubled-area along the resonant curve at fixed vertical
// wavenumbers; negative when the triangle inequality fails.
double delta_along(double k_target, Pattern pattern, double omega_t, double mf_abs,
                   double md_abs, const Dispersion& disp, double nu) {
    const double kf = disp.k_of(nu, mf_abs);
    const double kd = disp.k_of(dep_freq(pattern, omega_t, nu), md_abs);
    // factored Heron form, sign-carrying
    const double t = (k_target + kf + kd) * (kf + kd - k_target) * (k_target + kd - kf) *
                     (k_target + kf - kd);
    return (t >= 0.0) ? 0.5 * std::sqrt(t) : t;  // negative marker off-manifold
}

// Feasible sub-intervals of the triangle inequality inside [lo, hi],
// located by a scan plus bisection, then split at interior minima of
// Delta: the fold tangencies of the resonant region put near-singular
// 1/Delta lines in the interior, which must sit at quadrature-interval
// endpoints for the endpoint mapping to absorb them.
std::vector<std::pair<double, double>> feasible_intervals(
    double k_target, Pattern pattern, double omega_t, double mf_abs, double md_abs,
    const NuRange& range, const Dispersion& disp, const QuadratureSettings& quad) {
    auto delta_of = [&](double nu) {
        return delta_along(k_target, pattern, omega_t, mf_abs, md_abs, disp, nu);
    };
    auto feasible = [&](double nu) { return delta_of(nu) >= 0.0; };

    const int n = quad.scan_points << quad.refinement;
    std::vector<double> pts(n + 1);
    if (range.log_scan) {
        const double llo = std::log(range.lo), lhi = std::log(range.hi);
        for (int i = 0; i <= n; ++i) pts[i] = std::exp(llo + (lhi - llo) * i / n);
    } else {
        for (int i = 0; i <= n; ++i) pts[i] = range.lo + (range.hi - range.lo) * i / n;
    }
    pts.front() = range.lo;
    pts.back() = range.hi;

    auto bisect = [&](double a, double b, bool a_feasible) {
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (a + b);
            if (mid == a || mid == b) break;
            if (feasible(mid) == a_feasible)
                a = mid;
            else
                b = mid;
        }
        return 0.5 * (a + b);
    };

    std::vector<std::pair<double, double>> intervals;
    bool prev = feasible(pts[0]);
    double start = prev ? pts[0] : 0.0;
    for (int i = 1; i <= n; ++i) {
        const bool cur = feasible(pts[i]);
        if (cur && !prev) start = bisect(pts[i - 1], pts[i], /*a_feasible=*/false);
        if (!cur && prev) intervals.emplace_back(start, bisect(pts[i - 1], pts[i], true));
        prev = cur;
    }
    if (prev) intervals.emplace_back(start, pts[n]);

    // split every interval at the interior local minima of Delta
    std::vector<std::pair<double, double>> out;
    for (const auto& [a, b] : intervals) {
        const int m = 64;
        std::vector<double> cuts;
        double x0 = a, x1 = a + (b - a) / m, d0 = delta_of(x0), d1 = delta_of(x1);
        for (int i = 2; i <= m; ++i) {
            const double x2 = a + (b - a) * i / m;
            const double d2 = delta_of(x2);
            if (d1 <= d0 && d1 <= d2 && d1 < 0.5 * std::max(d0, d2)) {
                // golden-section refinement of the dip
                double lo = x0, hi = x2;
                const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
                double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
                double fc = delta_of(c), fd = delta_of(d);
                for (int it = 0; it < 60 && hi - lo > 1e-14 * (std::fabs(hi) + 1.0); ++it) {
                    if (fc < fd) {
                        hi = d;
                        d = c;
                        fd = fc;
                        c = hi - gr * (hi - lo);
                        fc = delta_of(c);
                    } else {
                        lo = c;
                        c = d;
                        fc = fd;
                        d = lo + gr * (hi - lo);
                        fd = delta_of(d);
                    }
                }
                cuts.push_back(0.5 * (lo + hi));
            }
            x0 = x1;
            d0 = d1;
            x1 = x2;
            d1 = d2;
        }
        double left = a;
        for (double c : cuts) {
            if (c > left && c < b) {
                out.emplace_back(left, c);
                left = c;
            }
        }
        out.emplace_back(left, b);
    }
    return out;
}

// Number of feasible sub-intervals plus interior Delta dips: the signature
// whose changes mark the fold boundaries of the resonant region in the
// vertical-wavenumber direction.
int nu_signature(double k_target, Pattern pattern, double omega_t, double mf_abs, double md_abs,
                 const Dispersion& disp, const QuadratureSettings& quad) {
    const auto range = nu_range(pattern, omega_t, mf_abs, md_abs, disp, quad);
    if (!range) return 0;
    auto delta_of = [&](double nu) {
        return delta_along(k_target, pattern, omega_t, mf_abs, md_abs, disp, nu);
    };
    const int n = 96;
    int segments = 0, dips = 0;
    double d_prev = -1.0, d_prev2 = -1.0;
    bool in_segment = false;
    for (int i = 0; i <= n; ++i) {
        const double nu = range->log_scan
                              ? std::exp(std::log(range->lo) +
                                         (std::log(range->hi) - std::log(range->lo)) * i / n)
                              : range->lo + (range->hi - range->lo) * i / n;
        const double d = delta_of(nu);
        if (d >= 0.0 && !in_segment) {
            ++segments;
            in_segment = true;
        }
        if (d < 0.0) in_segment = false;
        if (i >= 2 && d_prev2 >= 0.0 && d_prev >= 0.0 && d >= 0.0 && d_prev <= d_prev2 &&
            d_prev <= d && d_prev < 0.5 * std::max(d_prev2, d))
            ++dips;
        d_prev2 = d_prev;
        d_prev = d;
    }
    return 1 + segments * 16 + dips;  // distinct from the empty signature 0
}

}  // namespace

std::vector<ResonantPoint> enumerate_manifold(const Wavevector& p, CollisionBranch branch,
                                              const PhysicalParams& params,
                                              const QuadratureSettings& quad) {
    params.validate();
    quad.validate();
    if (!(p.k > 0.0) || !(p.m > 0.0))
        throw std::domain_error("enumerate_manifold: target needs k > 0, m > 0");

    const Dispersion disp{params, quad.high_frequency_omega};
    const BranchPlan plan = plan_for(branch, quad.swap_outgoing_roles);
    const double omega_t = disp.omega_of(p.k, p.m);
    const auto& gl = gauss_legendre(quad.gl_points_eff());

    // Resonant-region signature for this free vertical wavenumber; its
    // changes locate the jump and fold boundaries of the mu integrand.
    auto signature_mu = [&](double m_free) {
        const double m_dep = dep_of_free(plan.pattern, p.m, m_free);
        if (m_dep == 0.0 || m_free == 0.0) return 0;
        return nu_signature(p.k, plan.pattern, omega_t, std::fabs(m_free), std::fabs(m_dep),
                            disp, quad);
    };

    std::vector<ResonantPoint> points;
    const NodeList mus = mu_sectors(plan.pattern, p.m, quad, signature_mu);
    for (const MuNode& mu : mus.nodes) {
        const double mf_abs = std::fabs(mu.m_free);
        const double md_abs = std::fabs(mu.m_dep);
        const auto range = nu_range(plan.pattern, omega_t, mf_abs, md_abs, disp, quad);
        if (!range) continue;
        const auto intervals = feasible_intervals(p.k, plan.pattern, omega_t, mf_abs, md_abs,
                                                  *range, disp, quad);
        for (const auto& [a, b] : intervals) {
            const double c = 0.5 * (a + b);
            const double r = 0.5 * (b - a);
            for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
                double nu, dnu;
                if (quad.boundary_map) {
                    // nu = c + r sin(theta): the cos(theta) factor cancels
                    // the inverse-square-root endpoint singularities of
                    // 1/Delta and of the dispersion inverses.
                    const double theta = 0.5 * M_PI * gl.nodes[i];
                    nu = c + r * std::sin(theta);
                    dnu = gl.weights[i] * 0.5 * M_PI * r * std::cos(theta);
                } else {
                    nu = c + r * gl.nodes[i];
                    dnu = gl.weights[i] * r;
                }
                const double wd = dep_freq(plan.pattern, omega_t, nu);
                const double kf = disp.k_of(nu, mf_abs);
                const double kd = disp.k_of(wd, md_abs);
                if (!triangle_valid(p.k, kf, kd)) continue;  // interval-edge roundoff
                const double delta = triangle_delta(p.k, kf, kd);
                if (!(delta > 0.0)) continue;

                ResonantPoint pt;
                pt.branch = branch;
                pt.delta = delta;
                pt.inv_delta = 1.0 / delta;
                pt.weight = mu.weight * dnu * disp.dk_domega(nu, mf_abs);
                pt.jacobian = disp.dk_domega(wd, md_abs);
                if (plan.free_is_leg1) {
                    pt.k1 = kf; pt.m1 = mu.m_free; pt.omega1 = nu;
                    pt.k2 = kd; pt.m2 = mu.m_dep;  pt.omega2 = wd;
                } else {
                    pt.k1 = kd; pt.m1 = mu.m_dep;  pt.omega1 = wd;
                    pt.k2 = kf; pt.m2 = mu.m_free; pt.omega2 = nu;
                }
                if (!std::isfinite(pt.weight) || !std::isfinite(pt.jacobian)) continue;
                points.push_back(pt);
            }
        }
    }
    return points;
}

double manifold_measure(const Wavevector& p, CollisionBranch branch,
                        const PhysicalParams& params, const QuadratureSettings& quad) {
    KahanSum sum;
    for (const ResonantPoint& pt : enumerate_manifold(p, branch, params, quad))
        sum.add(pt.weight * pt.jacobian * pt.inv_delta);
    return sum.value();
}

}  // namespace iwt
