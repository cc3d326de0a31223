#include "iwt/kinetic.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>

#include "iwt/dispersion.hpp"
#include "iwt/triads.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace iwt {

double EquipartitionEvaluator::operator()(double k, double m_abs) const {
    return 1.0 / omega({k, m_abs}, params_);
}

double occupation_factor(double n, double n1, double n2) {
    return n1 * n2 - n * (n1 + n2);
}

namespace {

double target_omega(const Wavevector& p, const PhysicalParams& params,
                    const QuadratureSettings& quad) {
    return quad.high_frequency_omega ? omega_high_frequency(p, params) : omega(p, params);
}

struct LegValues {
    double k, w, n;
};

// Parent (decaying) leg of each collision term: the target for the direct
// term, p1 or p2 for the mirrored ones.
void assign_roles(CollisionBranch branch, const LegValues& target, const LegValues& leg1,
                  const LegValues& leg2, LegValues& a, LegValues& b, LegValues& c) {
    switch (branch) {
        case CollisionBranch::direct: a = target; b = leg1; c = leg2; break;
        case CollisionBranch::mirror1: a = leg1; b = target; c = leg2; break;
        case CollisionBranch::mirror2: a = leg2; b = leg1; c = target; break;
    }
}

struct BranchSums {
    double integral = 0.0;
    double magnitude = 0.0;
    double max_pointwise = 0.0;
    std::size_t count = 0;
};

BranchSums accumulate_branch(const SpectrumEvaluator& n_eval, const Wavevector& node,
                             double omega_t, double n_target, CollisionBranch branch,
                             const PhysicalParams& params, const QuadratureSettings& quad) {
    BranchSums out;
    KahanSum integral, magnitude;
    const auto points = enumerate_manifold(node, branch, params, quad);
    for (const ResonantPoint& pt : points) {
        const LegValues target{node.k, omega_t, n_target};
        const LegValues leg1{pt.k1, pt.omega1, n_eval(pt.k1, std::fabs(pt.m1))};
        const LegValues leg2{pt.k2, pt.omega2, n_eval(pt.k2, std::fabs(pt.m2))};
        LegValues a, b, c;
        assign_roles(branch, target, leg1, leg2, a, b, c);

        const double occ = occupation_factor(a.n, b.n, c.n);
        const double occ_mag = std::fabs(b.n * c.n) + std::fabs(a.n * (b.n + c.n));
        const double vsq = v_squared_components(a.k, b.k, c.k, a.w, b.w, c.w, pt.delta,
                                                params, quad.k_prefactor_quarter);
        const double base =
            pt.weight * pt.jacobian * pt.inv_delta * vsq * (node.k * pt.k1 * pt.k2);
        integral.add(base * occ);
        magnitude.add(std::fabs(base) * occ_mag);
        if (occ_mag > 0.0)
            out.max_pointwise = std::max(out.max_pointwise, std::fabs(occ) / occ_mag);
        ++out.count;
    }
    out.integral = integral.value();
    out.magnitude = magnitude.value();
    return out;
}

}  // namespace

CollisionResult collision_rate(const SpectrumEvaluator& n, const Wavevector& node,
                               const PhysicalParams& params, const QuadratureSettings& quad) {
    const double omega_t = target_omega(node, params, quad);
    const double n_target = n(node.k, node.m);
    if (!std::isfinite(n_target))
        throw std::runtime_error("collision_rate: non-finite spectrum value at the target node");

    CollisionResult res;
    res.node = node;
    res.refinement = quad.refinement;

    const BranchSums gain =
        accumulate_branch(n, node, omega_t, n_target, CollisionBranch::direct, params, quad);
    const BranchSums loss1 =
        accumulate_branch(n, node, omega_t, n_target, CollisionBranch::mirror1, params, quad);
    const BranchSums loss2 =
        accumulate_branch(n, node, omega_t, n_target, CollisionBranch::mirror2, params, quad);

    const double pref = quad.kernel_norm / node.k;
    res.branch_gain = pref * gain.integral;
    res.branch_loss1 = pref * loss1.integral;
    res.branch_loss2 = pref * loss2.integral;
    res.rate = res.branch_gain - res.branch_loss1 - res.branch_loss2;
    res.magnitude = pref * (gain.magnitude + loss1.magnitude + loss2.magnitude);
    res.max_pointwise = std::max({gain.max_pointwise, loss1.max_pointwise, loss2.max_pointwise});
    res.point_count = gain.count + loss1.count + loss2.count;

    if (!std::isfinite(res.rate) || !std::isfinite(res.magnitude)) {
        std::ostringstream msg;
        msg << "collision_rate: non-finite integral at node (k=" << node.k << ", m=" << node.m
            << "); branch sums " << res.branch_gain << ", " << res.branch_loss1 << ", "
            << res.branch_loss2;
        throw std::runtime_error(msg.str());
    }
    return res;
}

CollisionResult collision_rate(const WaveactionSpectrum& spectrum, std::size_t ik, std::size_t im,
                               const PhysicalParams& params, const QuadratureSettings& quad) {
    GridSpectrumEvaluator eval(spectrum);
    return collision_rate(eval, spectrum.grid().node(ik, im), params, quad);
}

std::vector<CollisionResult> collision_rates(const SpectrumEvaluator& n,
                                             const std::vector<Wavevector>& nodes,
                                             const PhysicalParams& params,
                                             const QuadratureSettings& quad, bool parallel) {
    std::vector<CollisionResult> out(nodes.size());
    if (parallel) {
        // exceptions must not unwind across the parallel region
        std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(nodes.size()); ++i) {
            try {
                out[i] = collision_rate(n, nodes[i], params, quad);
            } catch (...) {
#pragma omp critical
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);
    } else {
        for (std::size_t i = 0; i < nodes.size(); ++i)
            out[i] = collision_rate(n, nodes[i], params, quad);
    }
    return out;
}

double zakharov_factor(const Wavevector& node, const ResonantPoint& pt, double x, double y) {
    const double ek = -6.0 - 2.0 * x;
    const double em = 2.0 + 2.0 * y;
    if (pt.k1 <= 0.0 || pt.k2 <= 0.0 || pt.m1 == 0.0 || pt.m2 == 0.0)
        throw std::domain_error("zakharov_factor: degenerate manifold point");
    const double t1 = std::pow(pt.k1 / node.k, ek) * std::pow(node.m / std::fabs(pt.m1), em);
    const double t2 = std::pow(pt.k2 / node.k, ek) * std::pow(node.m / std::fabs(pt.m2), em);
    return 1.0 - t1 - t2;
}

ZakharovStationarity::ZakharovStationarity(std::vector<Wavevector> probes,
                                           const PhysicalParams& params,
                                           const QuadratureSettings& quad)
    : probes_(std::move(probes)) {
    // The transformation maps the mirrored terms onto the direct one, with
    // vertical wavenumbers entering as magnitudes.  The resonance conditions
    // admit no same-sign triads (k always exceeds k1 + k2 there), so the
    // direct-branch manifold is the mixed-sign set.
    QuadratureSettings q = quad;
    q.mixed_sign_m = true;
    caches_.reserve(probes_.size());
    for (const Wavevector& p : probes_) {
        ProbeCache cache;
        cache.node = p;
        const double omega_t = target_omega(p, params, q);
        for (const ResonantPoint& pt : enumerate_manifold(p, CollisionBranch::direct, params, q)) {
            const double vsq = v_squared_components(p.k, pt.k1, pt.k2, omega_t, pt.omega1,
                                                    pt.omega2, pt.delta, params,
                                                    q.k_prefactor_quarter);
            const double base = pt.weight * pt.jacobian * pt.inv_delta * vsq *
                                (p.k * pt.k1 * pt.k2) * q.kernel_norm / p.k;
            cache.points.push_back({pt.k1, std::fabs(pt.m1), pt.k2, std::fabs(pt.m2), base});
        }
        caches_.push_back(std::move(cache));
    }
}

std::size_t ZakharovStationarity::total_points() const {
    std::size_t n = 0;
    for (const auto& c : caches_) n += c.points.size();
    return n;
}

StationarityReport ZakharovStationarity::evaluate(const PowerLawSpectrum& law) const {
    StationarityReport rep;
    rep.law = law;
    const double ek = -6.0 - 2.0 * law.x;
    const double em = 2.0 + 2.0 * law.y;
    KahanSum rate2, mag2;
    for (const ProbeCache& cache : caches_) {
        const double n_t = law(cache.node.k, cache.node.m);
        KahanSum rate, mag;
        for (const Point& pt : cache.points) {
            const double n1 = law(pt.k1, pt.m1);
            const double n2 = law(pt.k2, pt.m2);
            const double occ = occupation_factor(n_t, n1, n2);
            const double occ_mag = std::fabs(n1 * n2) + std::fabs(n_t * (n1 + n2));
            const double t1 =
                std::pow(pt.k1 / cache.node.k, ek) * std::pow(cache.node.m / pt.m1, em);
            const double t2 =
                std::pow(pt.k2 / cache.node.k, ek) * std::pow(cache.node.m / pt.m2, em);
            rate.add(pt.base * occ * (1.0 - t1 - t2));
            mag.add(std::fabs(pt.base) * occ_mag * (1.0 + t1 + t2));
        }
        rep.node_rates.push_back(rate.value());
        rep.node_magnitudes.push_back(mag.value());
        rate2.add(rate.value() * rate.value());
        mag2.add(mag.value() * mag.value());
    }
    rep.residual_norm = (mag2.value() > 0.0) ? std::sqrt(rate2.value() / mag2.value()) : 0.0;
    return rep;
}

StationarityReport stationarity_report(const PowerLawSpectrum& law,
                                       const std::vector<Wavevector>& probes,
                                       const PhysicalParams& params,
                                       const QuadratureSettings& quad, int convergence_levels) {
    ZakharovStationarity base(probes, params, quad);
    StationarityReport rep = base.evaluate(law);
    rep.convergence.emplace_back(quad.refinement, rep.residual_norm);
    for (int level = 1; level <= convergence_levels; ++level) {
        QuadratureSettings q = quad;
        q.refinement = quad.refinement + level;
        ZakharovStationarity finer(probes, params, q);
        rep.convergence.emplace_back(q.refinement, finer.evaluate(law).residual_norm);
    }
    return rep;
}

ExponentScan stationarity_scan(double amplitude, const std::vector<double>& xs,
                               const std::vector<double>& ys,
                               const std::vector<Wavevector>& probes,
                               const PhysicalParams& params, const QuadratureSettings& quad,
                               bool parallel) {
    if (xs.empty() || ys.empty()) throw std::invalid_argument("stationarity_scan: empty exponent axes");
    ZakharovStationarity machinery(probes, params, quad);

    ExponentScan scan;
    scan.xs = xs;
    scan.ys = ys;
    scan.residual.assign(xs.size() * ys.size(), 0.0);

    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(scan.residual.size());
    auto cell = [&](std::ptrdiff_t idx) {
        const std::size_t ix = static_cast<std::size_t>(idx) / ys.size();
        const std::size_t iy = static_cast<std::size_t>(idx) % ys.size();
        PowerLawSpectrum law{amplitude, xs[ix], ys[iy]};
        scan.residual[idx] = machinery.evaluate(law).residual_norm;
    };
    if (parallel) {
        std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
            try {
                cell(idx);
            } catch (...) {
#pragma omp critical
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);
    } else {
        for (std::ptrdiff_t idx = 0; idx < total; ++idx) cell(idx);
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < scan.residual.size(); ++i)
        if (scan.residual[i] < scan.residual[best]) best = i;
    scan.best_x = xs[best / ys.size()];
    scan.best_y = ys[best % ys.size()];
    scan.best_residual = scan.residual[best];
    return scan;
}

LocalityTable locality_check(const SpectrumEvaluator& n, const Wavevector& node,
                             const PhysicalParams& params, const QuadratureSettings& quad,
                             const std::vector<double>& factors, double tolerance) {
    if (factors.empty()) throw std::invalid_argument("locality_check: no cutoff factors");
    LocalityTable table;
    table.tolerance = tolerance;
    for (double factor : factors) {
        LocalityEntry entry;
        entry.factor = factor;
        entry.result = collision_rate(n, node, params, quad.with_cutoff_factor(factor));
        table.entries.push_back(entry);
    }
    table.converged = true;
    for (std::size_t i = 1; i < table.entries.size(); ++i) {
        const double scale = std::max(table.entries[i - 1].result.magnitude,
                                      std::numeric_limits<double>::min());
        const double change =
            std::fabs(table.entries[i].result.rate - table.entries[i - 1].result.rate);
        if (change > tolerance * scale) table.converged = false;
    }
    return table;
}

double spectrum_energy(const WaveactionSpectrum& spectrum, const PhysicalParams& params) {
    const SpectralGrid& grid = spectrum.grid();
    KahanSum e;
    for (std::size_t ik = 0; ik < grid.nk(); ++ik) {
        for (std::size_t im = 0; im < grid.nm(); ++im) {
            const Wavevector p = grid.node(ik, im);
            e.add(p.k * omega(p, params) * spectrum.value(ik, im) * grid.k_cell_width(ik) *
                  grid.m_cell_width(im));
        }
    }
    return e.value();
}

Trajectory evolve(const WaveactionSpectrum& n0, const PhysicalParams& params,
                  const QuadratureSettings& quad, const EvolveOptions& opts) {
    if (!(opts.dt > 0.0)) throw std::invalid_argument("evolve: dt must be > 0");
    if (opts.steps == 0) throw std::invalid_argument("evolve: steps must be > 0");

    const SpectralGrid& grid = n0.grid();
    std::vector<Wavevector> nodes;
    nodes.reserve(grid.size());
    for (std::size_t ik = 0; ik < grid.nk(); ++ik)
        for (std::size_t im = 0; im < grid.nm(); ++im) nodes.push_back(grid.node(ik, im));

    Trajectory traj;
    WaveactionSpectrum current = n0;
    const double e0 = spectrum_energy(current, params);
    traj.samples.push_back({0.0, e0, 0.0, 0});
    traj.snapshots.emplace_back(0.0, current);

    double time = 0.0;
    for (std::size_t step = 0; step < opts.steps; ++step) {
        GridSpectrumEvaluator eval(current);
        const auto results = collision_rates(eval, nodes, params, quad, opts.parallel);

        // Adaptive caps: dt * max|rate / n| <= rate_cap, and the explicit
        // stability bound dt * max(d rate/d n) <= stiffness_cap with the
        // Jacobian scale estimated as magnitude / n^2.  The collision
        // operator is stiff near equilibrium (rate ~ 0 but its derivative
        // is not), so the rate cap alone does not keep the step stable.
        double n_max = 0.0;
        for (double v : current.values()) n_max = std::max(n_max, v);
        double max_rel = 0.0, max_abs = 0.0, max_stiff = 0.0;
        for (std::size_t i = 0; i < results.size(); ++i) {
            const double n_here = current.values()[i];
            max_abs = std::max(max_abs, std::fabs(results[i].rate));
            if (n_here > 0.0) max_rel = std::max(max_rel, std::fabs(results[i].rate) / n_here);
            if (n_here > 1e-8 * n_max)
                max_stiff = std::max(max_stiff, results[i].magnitude / (n_here * n_here));
        }
        double dt_eff = opts.dt;
        if (max_rel > 0.0) dt_eff = std::min(dt_eff, opts.rate_cap / max_rel);
        if (max_stiff > 0.0) dt_eff = std::min(dt_eff, opts.stiffness_cap / max_stiff);

        std::size_t clips = 0;
        std::vector<double> next(current.values());
        for (std::size_t i = 0; i < next.size(); ++i) {
            next[i] += dt_eff * results[i].rate;
            if (next[i] < 0.0) {
                next[i] = 0.0;
                ++clips;
            }
        }
        current = WaveactionSpectrum(grid, std::move(next));
        time += dt_eff;
        traj.total_clip_events += clips;

        const double e = spectrum_energy(current, params);
        traj.samples.push_back({time, e, max_abs, clips});
        if (opts.snapshot_every > 0 && (step + 1) % opts.snapshot_every == 0)
            traj.snapshots.emplace_back(time, current);
        if (e0 > 0.0 && e > opts.blowup_factor * e0) {
            std::ostringstream msg;
            msg << "evolve: energy grew from " << e0 << " to " << e << " at t=" << time
                << " (step " << step + 1 << "); instability suspected";
            throw std::runtime_error(msg.str());
        }
    }
    if (opts.snapshot_every == 0 || traj.snapshots.back().first != time)
        traj.snapshots.emplace_back(time, current);
    traj.final_spectrum = current;
    return traj;
}

std::vector<Wavevector> probe_nodes(const SpectralGrid& grid, std::size_t count_k,
                                    std::size_t count_m) {
    if (count_k == 0 || count_m == 0) throw std::invalid_argument("probe_nodes: zero count");
    auto pick = [](std::size_t n, std::size_t count) {
        std::vector<std::size_t> idx;
        const double lo = 0.32, hi = 0.68;
        for (std::size_t i = 0; i < count; ++i) {
            const double t = (count == 1) ? 0.5
                                          : lo + (hi - lo) * static_cast<double>(i) /
                                                     static_cast<double>(count - 1);
            idx.push_back(static_cast<std::size_t>(t * static_cast<double>(n - 1) + 0.5));
        }
        return idx;
    };
    std::vector<Wavevector> probes;
    for (std::size_t ik : pick(grid.nk(), count_k))
        for (std::size_t im : pick(grid.nm(), count_m)) probes.push_back(grid.node(ik, im));
    return probes;
}

}  // namespace iwt
