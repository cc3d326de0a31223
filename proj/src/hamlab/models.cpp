#include "iwt/hamlab/models.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace iwt::hamlab {

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::linear_sw: return "linear_sw";
        case ModelKind::nonlinear_sw: return "nonlinear_sw";
        case ModelKind::rotating_linear_sw: return "rotating_linear_sw";
        case ModelKind::rotating_nonlinear_sw: return "rotating_nonlinear_sw";
        case ModelKind::internal_waves: return "internal_waves";
        case ModelKind::rotating_internal_waves: return "rotating_internal_waves";
    }
    return "?";
}

ModelKind model_kind_from_string(const std::string& name) {
    for (ModelKind kind : {ModelKind::linear_sw, ModelKind::nonlinear_sw,
                           ModelKind::rotating_linear_sw, ModelKind::rotating_nonlinear_sw,
                           ModelKind::internal_waves, ModelKind::rotating_internal_waves})
        if (to_string(kind) == name) return kind;
    throw std::invalid_argument("unknown model kind: " + name);
}

bool model_is_internal(ModelKind kind) {
    return kind == ModelKind::internal_waves || kind == ModelKind::rotating_internal_waves;
}

bool model_is_rotating(ModelKind kind) {
    return kind == ModelKind::rotating_linear_sw || kind == ModelKind::rotating_nonlinear_sw ||
           kind == ModelKind::rotating_internal_waves;
}

bool model_is_linear(ModelKind kind) {
    return kind == ModelKind::linear_sw || kind == ModelKind::rotating_linear_sw;
}

double ModelConfig::effective_f() const {
    if (kind == ModelKind::internal_waves) return 0.0;
    if (kind == ModelKind::rotating_internal_waves) return params.f;
    return model_is_rotating(kind) ? 1.0 : 0.0;  // nondimensional shallow water
}

FieldState FieldState::zeros(const BoxGrid& grid) {
    return {grid, RealField(grid.size(), 0.0), RealField(grid.size(), 0.0)};
}

Model::Model(const ModelConfig& config, const BoxGrid& grid)
    : config_(config), grid_(grid), ops_(grid) {
    if (model_is_internal(config_.kind)) {
        config_.params.validate();
        if (!grid_.three_dimensional())
            throw std::invalid_argument("internal-wave models need a density axis (nr > 1)");
        q0_of_r_.assign(grid_.nr, config_.params.f / config_.reference_pi0());
        if (!config_.q0_profile.empty()) {
            if (config_.q0_profile.size() != grid_.nr)
                throw std::invalid_argument("q0 profile length must match nr");
            q0_of_r_ = config_.q0_profile;
            for (double q : q0_of_r_)
                if (q == 0.0) throw std::invalid_argument("q0 profile must not vanish");
        }
    } else {
        if (grid_.three_dimensional())
            throw std::invalid_argument("shallow-water models are two-dimensional (nr = 1)");
        if (config_.kind == ModelKind::rotating_nonlinear_sw && config_.q0 == 0.0)
            throw std::invalid_argument("rotating nonlinear SW needs q0 != 0");
    }
}

double Model::dealias_fraction() const {
    // 2/3 suffices for the quadratic products of the shallow-water rhs;
    // the internal-wave Hamiltonian is cubic, so keep 1/2.
    return model_is_internal(config_.kind) ? 0.5 : 2.0 / 3.0;
}

FieldState Model::mask(const FieldState& state) const {
    const double frac = dealias_fraction();
    return {state.grid, ops_.dealias(state.a, frac), ops_.dealias(state.b, frac)};
}

void Model::check_state(const FieldState& state) const {
    if (!(state.grid == grid_)) throw std::invalid_argument("Model: state grid mismatch");
    if (state.a.size() != grid_.size() || state.b.size() != grid_.size())
        throw std::invalid_argument("Model: field size mismatch");
}

namespace {

// Pointwise helpers on flat fields.
RealField mul(const RealField& x, const RealField& y) {
    RealField out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * y[i];
    return out;
}

}  // namespace

double Model::hamiltonian(const FieldState& state) const {
    check_state(state);
    const double w = ops_.cell_measure();
    const RealField bx = ops_.dx(state.b);
    const RealField by = ops_.dy(state.b);
    KahanSum sum;

    switch (config_.kind) {
        case ModelKind::linear_sw: {
            for (std::size_t i = 0; i < state.a.size(); ++i)
                sum.add(0.5 * (state.a[i] * state.a[i] + bx[i] * bx[i] + by[i] * by[i]));
            break;
        }
        case ModelKind::nonlinear_sw: {
            for (std::size_t i = 0; i < state.a.size(); ++i) {
                const double h = 1.0 + state.a[i];
                if (!(h > 0.0)) throw std::domain_error("nonlinear SW: h = 1 + eta must stay > 0");
                sum.add(0.5 * (state.a[i] * state.a[i] + h * (bx[i] * bx[i] + by[i] * by[i])));
            }
            break;
        }
        case ModelKind::rotating_linear_sw: {
            const auto [py, px] = ops_.perp_grad_inv_lap(state.a);
            for (std::size_t i = 0; i < state.a.size(); ++i) {
                const double v1 = bx[i] - py[i];
                const double v2 = by[i] + px[i];
                sum.add(0.5 * (state.a[i] * state.a[i] + v1 * v1 + v2 * v2));
            }
            break;
        }
        case ModelKind::rotating_nonlinear_sw: {
            RealField s(state.a.size());
            for (std::size_t i = 0; i < s.size(); ++i) s[i] = config_.q0 * (1.0 + state.a[i]) - 1.0;
            const auto [py, px] = ops_.perp_grad_inv_lap(s, 1e-8);
            for (std::size_t i = 0; i < state.a.size(); ++i) {
                const double h = 1.0 + state.a[i];
                if (!(h > 0.0)) throw std::domain_error("rotating SW: h = 1 + eta must stay > 0");
                const double v1 = bx[i] - py[i];
                const double v2 = by[i] + px[i];
                sum.add(0.5 * (state.a[i] * state.a[i] + h * (v1 * v1 + v2 * v2)));
            }
            break;
        }
        case ModelKind::internal_waves:
        case ModelKind::rotating_internal_waves: {
            const double pi0 = config_.reference_pi0();
            const double g = config_.params.g;
            const double rho0 = config_.params.rho0;
            const double f = config_.effective_f();
            RealField v1 = bx, v2 = by;
            if (config_.kind == ModelKind::rotating_internal_waves) {
                RealField s(state.a.size());
                for (std::size_t ix = 0; ix < grid_.nx; ++ix)
                    for (std::size_t iy = 0; iy < grid_.ny; ++iy)
                        for (std::size_t ir = 0; ir < grid_.nr; ++ir) {
                            const std::size_t i = grid_.index(ix, iy, ir);
                            s[i] = q0_of_r_[ir] * (pi0 + state.a[i]) - f;
                        }
                const auto [py, px] = ops_.perp_grad_inv_lap(s, 1e-8);
                for (std::size_t i = 0; i < v1.size(); ++i) {
                    v1[i] -= py[i];
                    v2[i] += px[i];
                }
            }
            const RealField sa = ops_.vertical_antiderivative(state.a);
            const double pot = 0.5 * g / (rho0 * rho0);
            for (std::size_t i = 0; i < state.a.size(); ++i) {
                const double strat = pi0 + state.a[i];
                if (!(strat < 0.0))
                    throw std::domain_error("internal waves: Pi0 + Pi must keep the sign of Pi0");
                sum.add(0.5 * strat * (v1[i] * v1[i] + v2[i] * v2[i]) - pot * sa[i] * sa[i]);
            }
            break;
        }
    }
    return sum.value() * w;
}

FieldState Model::rhs(const FieldState& state) const {
    check_state(state);
    const RealField bx = ops_.dx(state.b);
    const RealField by = ops_.dy(state.b);
    FieldState out = FieldState::zeros(grid_);

    switch (config_.kind) {
        case ModelKind::linear_sw: {
            const RealField lap = ops_.laplacian_h(state.b);
            for (std::size_t i = 0; i < out.a.size(); ++i) {
                out.a[i] = -lap[i];
                out.b[i] = -state.a[i];
            }
            break;
        }
        case ModelKind::nonlinear_sw: {
            RealField h(state.a.size());
            for (std::size_t i = 0; i < h.size(); ++i) {
                h[i] = 1.0 + state.a[i];
                if (!(h[i] > 0.0)) throw std::domain_error("nonlinear SW: h = 1 + eta must stay > 0");
            }
            const RealField fx = ops_.dx(mul(h, bx));
            const RealField fy = ops_.dy(mul(h, by));
            for (std::size_t i = 0; i < out.a.size(); ++i) {
                out.a[i] = -(fx[i] + fy[i]);
                out.b[i] = -0.5 * (bx[i] * bx[i] + by[i] * by[i]) - state.a[i];
            }
            break;
        }
        case ModelKind::rotating_linear_sw: {
            const RealField lap = ops_.laplacian_h(state.b);
            const RealField inv = ops_.inv_laplacian_h(state.a);
            for (std::size_t i = 0; i < out.a.size(); ++i) {
                out.a[i] = -lap[i];
                out.b[i] = -state.a[i] + inv[i];
            }
            break;
        }
        case ModelKind::rotating_nonlinear_sw: {
            RealField s(state.a.size()), h(state.a.size());
            for (std::size_t i = 0; i < s.size(); ++i) {
                h[i] = 1.0 + state.a[i];
                if (!(h[i] > 0.0)) throw std::domain_error("rotating SW: h = 1 + eta must stay > 0");
                s[i] = config_.q0 * h[i] - 1.0;
            }
            const auto [py, px] = ops_.perp_grad_inv_lap(s, 1e-8);
            RealField v1 = bx, v2 = by;
            for (std::size_t i = 0; i < v1.size(); ++i) {
                v1[i] -= py[i];
                v2[i] += px[i];
            }
            const RealField hv1 = mul(h, v1);
            const RealField hv2 = mul(h, v2);
            const RealField div = [&] {
                const RealField fx = ops_.dx(hv1);
                const RealField fy = ops_.dy(hv2);
                RealField d(fx.size());
                for (std::size_t i = 0; i < d.size(); ++i) d[i] = fx[i] + fy[i];
                return d;
            }();
            const RealField perp_div = [&] {
                const RealField gy = ops_.dy(hv1);
                const RealField gx = ops_.dx(hv2);
                RealField d(gx.size());
                for (std::size_t i = 0; i < d.size(); ++i) d[i] = gx[i] - gy[i];
                return d;
            }();
            const RealField corr = ops_.inv_laplacian_h(perp_div);
            for (std::size_t i = 0; i < out.a.size(); ++i) {
                out.a[i] = -div[i];
                out.b[i] = -0.5 * (v1[i] * v1[i] + v2[i] * v2[i]) - state.a[i] +
                           config_.q0 * corr[i];
            }
            break;
        }
        case ModelKind::internal_waves:
        case ModelKind::rotating_internal_waves: {
            const double pi0 = config_.reference_pi0();
            const double g = config_.params.g;
            const double rho0 = config_.params.rho0;
            const double f = config_.effective_f();
            const bool rotating = config_.kind == ModelKind::rotating_internal_waves;

            RealField strat(state.a.size());
            for (std::size_t i = 0; i < strat.size(); ++i) {
                strat[i] = pi0 + state.a[i];
                if (!(strat[i] < 0.0))
                    throw std::domain_error("internal waves: Pi0 + Pi must keep the sign of Pi0");
            }
            RealField v1 = bx, v2 = by;
            if (rotating) {
                RealField s(state.a.size());
                for (std::size_t ix = 0; ix < grid_.nx; ++ix)
                    for (std::size_t iy = 0; iy < grid_.ny; ++iy)
                        for (std::size_t ir = 0; ir < grid_.nr; ++ir) {
                            const std::size_t i = grid_.index(ix, iy, ir);
                            s[i] = q0_of_r_[ir] * strat[i] - f;
                        }
                const auto [py, px] = ops_.perp_grad_inv_lap(s, 1e-8);
                for (std::size_t i = 0; i < v1.size(); ++i) {
                    v1[i] -= py[i];
                    v2[i] += px[i];
                }
            }
            const RealField gv1 = mul(strat, v1);
            const RealField gv2 = mul(strat, v2);
            {
                const RealField fx = ops_.dx(gv1);
                const RealField fy = ops_.dy(gv2);
                for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] = -(fx[i] + fy[i]);
            }
            const RealField s2a = ops_.vertical_antiderivative(ops_.vertical_antiderivative(state.a));
            const double pot = g / (rho0 * rho0);
            for (std::size_t i = 0; i < out.b.size(); ++i)
                out.b[i] = -0.5 * (v1[i] * v1[i] + v2[i] * v2[i]) - pot * s2a[i];
            if (rotating) {
                const RealField gy = ops_.dy(gv1);
                const RealField gx = ops_.dx(gv2);
                RealField perp_div(gx.size());
                for (std::size_t i = 0; i < perp_div.size(); ++i) perp_div[i] = gx[i] - gy[i];
                const RealField corr = ops_.inv_laplacian_h(perp_div);
                for (std::size_t ix = 0; ix < grid_.nx; ++ix)
                    for (std::size_t iy = 0; iy < grid_.ny; ++iy)
                        for (std::size_t ir = 0; ir < grid_.nr; ++ir) {
                            const std::size_t i = grid_.index(ix, iy, ir);
                            out.b[i] += q0_of_r_[ir] * corr[i];
                        }
            }
            break;
        }
    }
    return mask(out);
}

std::array<double, 3> Model::mode_wavevector(const std::array<int, 3>& mode) const {
    return {2.0 * M_PI * mode[0] / grid_.Lx, 2.0 * M_PI * mode[1] / grid_.Ly,
            grid_.three_dimensional() ? 2.0 * M_PI * mode[2] / grid_.Lr : 0.0};
}

double Model::mode_frequency(const std::array<int, 3>& mode) const {
    const auto [kx, ky, kr] = mode_wavevector(mode);
    const double kh = std::hypot(kx, ky);
    switch (config_.kind) {
        case ModelKind::linear_sw:
        case ModelKind::nonlinear_sw:
            return kh;
        case ModelKind::rotating_linear_sw:
        case ModelKind::rotating_nonlinear_sw:
            return std::sqrt(1.0 + kh * kh);
        case ModelKind::internal_waves:
        case ModelKind::rotating_internal_waves: {
            if (kr == 0.0) throw std::domain_error("internal-wave mode needs a vertical component");
            const auto& P = config_.params;
            const double f = config_.effective_f();
            const double r = P.g * kh / (P.rho0 * P.N * std::fabs(kr));
            return std::sqrt(f * f + r * r);
        }
    }
    throw std::logic_error("mode_frequency: bad kind");
}

FieldState Model::eigenmode(const std::array<int, 3>& mode, double amplitude) const {
    const auto [kx, ky, kr] = mode_wavevector(mode);
    const double kh = std::hypot(kx, ky);
    if (kh == 0.0) throw std::domain_error("eigenmode: horizontal wavenumber must be nonzero");
    const double w = mode_frequency(mode);

    double b_coeff = 0.0;
    switch (config_.kind) {
        case ModelKind::linear_sw:
        case ModelKind::nonlinear_sw:
            b_coeff = amplitude / w;
            break;
        case ModelKind::rotating_linear_sw:
        case ModelKind::rotating_nonlinear_sw:
            b_coeff = amplitude * (1.0 + 1.0 / (kh * kh)) / w;
            break;
        case ModelKind::internal_waves:
        case ModelKind::rotating_internal_waves: {
            const auto& P = config_.params;
            const double f = config_.effective_f();
            const double c = f * f * P.N * P.N / (P.g * kh * kh) +
                             P.g / (P.rho0 * P.rho0 * kr * kr);
            b_coeff = -amplitude * c / w;
            break;
        }
    }

    FieldState state = FieldState::zeros(grid_);
    for (std::size_t ix = 0; ix < grid_.nx; ++ix)
        for (std::size_t iy = 0; iy < grid_.ny; ++iy)
            for (std::size_t ir = 0; ir < grid_.nr; ++ir) {
                const double theta = kx * grid_.Lx * ix / grid_.nx +
                                     ky * grid_.Ly * iy / grid_.ny +
                                     kr * grid_.Lr * ir / grid_.nr;
                const std::size_t i = grid_.index(ix, iy, ir);
                state.a[i] = amplitude * std::cos(theta);
                state.b[i] = b_coeff * std::sin(theta);
            }
    return state;
}

double functional_derivative_check(const Model& model, const FieldState& state,
                                   const FieldState& direction,
                                   const std::vector<double>& eps_seq) {
    if (eps_seq.empty()) throw std::invalid_argument("functional_derivative_check: empty eps list");
    const FieldState s = model.mask(state);
    const FieldState d = model.mask(direction);
    const double w = model.ops().cell_measure();

    const FieldState f = model.rhs(s);
    // a_t = dH/db, b_t = -dH/da
    KahanSum pairing;
    for (std::size_t i = 0; i < s.a.size(); ++i)
        pairing.add((-f.b[i]) * d.a[i] + f.a[i] * d.b[i]);
    const double analytic = pairing.value() * w;

    double best = std::numeric_limits<double>::infinity();
    const double scale = std::max(std::fabs(analytic), 1e-300);
    for (double eps : eps_seq) {
        FieldState plus = s, minus = s;
        for (std::size_t i = 0; i < s.a.size(); ++i) {
            plus.a[i] += eps * d.a[i];
            plus.b[i] += eps * d.b[i];
            minus.a[i] -= eps * d.a[i];
            minus.b[i] -= eps * d.b[i];
        }
        const double fd = (model.hamiltonian(plus) - model.hamiltonian(minus)) / (2.0 * eps);
        best = std::min(best, std::fabs(fd - analytic) / scale);
    }
    return best;
}

}  // namespace iwt::hamlab
