#include "iwt/hamlab/integrate.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace iwt::hamlab {

Scheme scheme_from_string(const std::string& name) {
    if (name == "rk4") return Scheme::rk4;
    if (name == "implicit_midpoint") return Scheme::implicit_midpoint;
    throw std::invalid_argument("unknown scheme: " + name);
}

std::string to_string(Scheme scheme) {
    return scheme == Scheme::rk4 ? "rk4" : "implicit_midpoint";
}

namespace {

void axpy(FieldState& y, double alpha, const FieldState& x) {
    for (std::size_t i = 0; i < y.a.size(); ++i) {
        y.a[i] += alpha * x.a[i];
        y.b[i] += alpha * x.b[i];
    }
}

FieldState linear_comb(const FieldState& base, double alpha, const FieldState& dir) {
    FieldState out = base;
    axpy(out, alpha, dir);
    return out;
}

double state_rms(const FieldState& s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s.a.size(); ++i) acc += s.a[i] * s.a[i] + s.b[i] * s.b[i];
    return std::sqrt(acc / static_cast<double>(2 * s.a.size()));
}

double diff_rms(const FieldState& x, const FieldState& y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.a.size(); ++i) {
        const double da = x.a[i] - y.a[i];
        const double db = x.b[i] - y.b[i];
        acc += da * da + db * db;
    }
    return std::sqrt(acc / static_cast<double>(2 * x.a.size()));
}

FieldState rk4_step(const Model& model, const FieldState& state, double dt) {
    const FieldState k1 = model.rhs(state);
    const FieldState k2 = model.rhs(linear_comb(state, 0.5 * dt, k1));
    const FieldState k3 = model.rhs(linear_comb(state, 0.5 * dt, k2));
    const FieldState k4 = model.rhs(linear_comb(state, dt, k3));
    FieldState out = state;
    axpy(out, dt / 6.0, k1);
    axpy(out, dt / 3.0, k2);
    axpy(out, dt / 3.0, k3);
    axpy(out, dt / 6.0, k4);
    return out;
}

FieldState midpoint_step(const Model& model, const FieldState& state, double dt,
                         double tol, std::size_t max_iter) {
    FieldState next = rk4_step(model, state, dt);  // predictor
    const double scale = state_rms(state) + 1e-300;
    double prev_delta = std::numeric_limits<double>::infinity();
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        FieldState mid = state;
        axpy(mid, 1.0, next);
        for (std::size_t i = 0; i < mid.a.size(); ++i) {
            mid.a[i] *= 0.5;
            mid.b[i] *= 0.5;
        }
        FieldState candidate = linear_comb(state, dt, model.rhs(mid));
        const double delta = diff_rms(candidate, next);
        next = std::move(candidate);
        if (delta <= tol * scale) return next;
        // roundoff floor: accept once the iteration stops contracting
        if (iter >= 3 && delta >= prev_delta) return next;
        prev_delta = delta;
    }
    throw std::runtime_error("implicit midpoint: fixed-point iteration failed to converge; "
                             "reduce dt");
}

}  // namespace

LabTrajectory integrate(const Model& model, FieldState state, const IntegrateOptions& opts) {
    if (!(opts.dt > 0.0)) throw std::invalid_argument("integrate: dt must be > 0");
    if (opts.steps == 0) throw std::invalid_argument("integrate: steps must be > 0");

    LabTrajectory traj;
    state = model.mask(state);
    const double h0 = model.hamiltonian(state);
    const double href = std::max(std::fabs(h0), 1e-300);
    traj.times.push_back(0.0);
    traj.energies.push_back(h0);
    traj.snapshots.emplace_back(0.0, state);

    for (std::size_t step = 1; step <= opts.steps; ++step) {
        state = (opts.scheme == Scheme::rk4)
                    ? rk4_step(model, state, opts.dt)
                    : midpoint_step(model, state, opts.dt, opts.midpoint_tol,
                                    opts.midpoint_max_iter);
        const double t = opts.dt * static_cast<double>(step);
        const double h = model.hamiltonian(state);
        if (!std::isfinite(h) || !std::isfinite(state_rms(state))) {
            std::ostringstream msg;
            msg << "integrate: non-finite state at step " << step << " (t = " << t << ")";
            throw std::runtime_error(msg.str());
        }
        traj.times.push_back(t);
        traj.energies.push_back(h);
        traj.max_rel_drift = std::max(traj.max_rel_drift, std::fabs(h - h0) / href);
        if (opts.snapshot_every > 0 && step % opts.snapshot_every == 0)
            traj.snapshots.emplace_back(t, state);
    }
    traj.final_state = std::move(state);
    return traj;
}

std::complex<double> mode_amplitude(const BoxGrid& grid, const RealField& field,
                                    const std::array<int, 3>& mode) {
    const double kx = 2.0 * M_PI * mode[0] / grid.nx;
    const double ky = 2.0 * M_PI * mode[1] / grid.ny;
    const double kr = 2.0 * M_PI * mode[2] / grid.nr;
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t ix = 0; ix < grid.nx; ++ix)
        for (std::size_t iy = 0; iy < grid.ny; ++iy)
            for (std::size_t ir = 0; ir < grid.nr; ++ir) {
                const double theta = kx * ix + ky * iy + kr * ir;
                acc += field[grid.index(ix, iy, ir)] *
                       std::complex<double>(std::cos(theta), -std::sin(theta));
            }
    return acc / static_cast<double>(grid.size());
}

double measure_mode_frequency(const Model& model, const std::array<int, 3>& mode,
                              double amplitude, double dt, std::size_t steps, Scheme scheme) {
    FieldState state = model.mask(model.eigenmode(mode, amplitude));
    std::vector<double> phases;
    phases.reserve(steps + 1);
    phases.push_back(std::arg(mode_amplitude(model.grid(), state.a, mode)));

    IntegrateOptions opts;
    opts.dt = dt;
    opts.steps = 1;
    opts.scheme = scheme;
    for (std::size_t s = 0; s < steps; ++s) {
        LabTrajectory step = integrate(model, std::move(state), opts);
        state = std::move(step.final_state);
        phases.push_back(std::arg(mode_amplitude(model.grid(), state.a, mode)));
    }

    // unwrap (valid while the per-step phase advance stays under pi, which
    // the callers ensure via omega dt << 1) and fit phase = c - omega t
    double offset = 0.0;
    std::vector<double> unwrapped(phases.size());
    unwrapped[0] = phases[0];
    for (std::size_t i = 1; i < phases.size(); ++i) {
        double d = phases[i] - phases[i - 1];
        while (d > M_PI) {
            d -= 2.0 * M_PI;
            offset -= 2.0 * M_PI;
        }
        while (d < -M_PI) {
            d += 2.0 * M_PI;
            offset += 2.0 * M_PI;
        }
        unwrapped[i] = phases[i] + offset;
    }
    const double n = static_cast<double>(unwrapped.size());
    double st = 0.0, sp = 0.0, stt = 0.0, stp = 0.0;
    for (std::size_t i = 0; i < unwrapped.size(); ++i) {
        const double t = dt * static_cast<double>(i);
        st += t;
        sp += unwrapped[i];
        stt += t * t;
        stp += t * unwrapped[i];
    }
    const double slope = (n * stp - st * sp) / (n * stt - st * st);
    return std::fabs(slope);
}

}  // namespace iwt::hamlab
