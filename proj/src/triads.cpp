#include "iwt/triads.hpp"

#include <algorithm>
#include <cmath>

#include "iwt/dispersion.hpp"

namespace iwt {

double Vec2::norm() const { return std::hypot(x, y); }
double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

bool triangle_valid(double a, double b, double c) {
    if (a < 0.0 || b < 0.0 || c < 0.0) throw std::domain_error("triangle: negative side length");
    return a <= b + c && b <= a + c && c <= a + b;
}

double triangle_delta(double a, double b, double c) {
    if (!triangle_valid(a, b, c)) throw std::domain_error("triangle_delta: no such triangle");
    // Kahan ordering: a >= b >= c keeps the factored products cancellation-safe.
    if (a < b) std::swap(a, b);
    if (b < c) std::swap(b, c);
    if (a < b) std::swap(a, b);
    const double t = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    return 0.5 * std::sqrt(std::max(t, 0.0));
}

Triad Triad::from_vectors(const Vec2& k2, const Vec2& k3, double m2, double m3) {
    Triad t;
    t.vector_form_ = true;
    t.v2_ = k2;
    t.v3_ = k3;
    t.k2_ = k2.norm();
    t.k3_ = k3.norm();
    t.k1_ = Vec2{k2.x + k3.x, k2.y + k3.y}.norm();
    t.m2_ = m2;
    t.m3_ = m3;
    t.m1_ = m2 + m3;
    return t;
}

Triad Triad::from_magnitudes(double k1, double k2, double k3,
                             double m1, double m2, double m3) {
    if (!triangle_valid(k1, k2, k3))
        throw std::domain_error("Triad: magnitudes violate the triangle inequality");
    if (m1 != m2 + m3)
        throw std::domain_error("Triad: vertical resonance m1 = m2 + m3 must hold exactly");
    Triad t;
    t.vector_form_ = false;
    t.k1_ = k1;
    t.k2_ = k2;
    t.k3_ = k3;
    t.m1_ = m1;
    t.m2_ = m2;
    t.m3_ = m3;
    return t;
}

double Triad::dot23() const {
    if (vector_form_) return dot(v2_, v3_);
    return 0.5 * (k1_ * k1_ - k2_ * k2_ - k3_ * k3_);
}

double Triad::dot13() const {
    if (vector_form_) return dot({v2_.x + v3_.x, v2_.y + v3_.y}, v3_);
    return 0.5 * (k1_ * k1_ + k3_ * k3_ - k2_ * k2_);
}

double Triad::dot12() const {
    if (vector_form_) return dot({v2_.x + v3_.x, v2_.y + v3_.y}, v2_);
    return 0.5 * (k1_ * k1_ + k2_ * k2_ - k3_ * k3_);
}

double Triad::cross23_signed() const {
    if (!vector_form_)
        throw std::domain_error("Triad: signed cross product needs the vector form");
    return cross(v2_, v3_);
}

double Triad::cross23_abs() const {
    if (vector_form_) return std::fabs(cross(v2_, v3_));
    return triangle_delta(k1_, k2_, k3_);
}

Triad Triad::swapped23() const {
    if (vector_form_) return from_vectors(v3_, v2_, m3_, m2_);
    return from_magnitudes(k1_, k3_, k2_, m1_, m3_, m2_);
}

namespace {

// Everything the three coefficient lines consume: side lengths,
// frequencies, and the direction cosines of the horizontal legs.
struct Components {
    double k1, k2, k3;
    double w1, w2, w3;
    double c23, c13, c12;
};

double I_of(const Components& c, const PhysicalParams& P) {
    const double sum = c.c23 * std::sqrt(c.w2 * c.w3 / c.w1) * c.k1 +
                       c.c13 * std::sqrt(c.w1 * c.w3 / c.w2) * c.k2 +
                       c.c12 * std::sqrt(c.w1 * c.w2 / c.w3) * c.k3;
    return -P.N / (4.0 * std::sqrt(2.0 * P.g)) * sum;
}

double J_of(const Components& c, const PhysicalParams& P) {
    if (P.f == 0.0) return 0.0;
    const double sum = c.c23 * c.k1 - c.c13 * c.k2 - c.c12 * c.k3;
    return P.N * P.f * P.f / (4.0 * std::sqrt(2.0 * P.g * c.w1 * c.w2 * c.w3)) * sum;
}

// Imaginary part of K; cross23 is the (possibly signed) z-component of
// k2 x k3.
double K_of(const Components& c, double cross23, const PhysicalParams& P, bool quarter) {
    if (P.f == 0.0) return 0.0;
    const double bracket = std::sqrt(c.w2 / (c.w1 * c.w3)) * (c.k1 * c.k1 - c.k3 * c.k3) +
                           std::sqrt(c.w1 / (c.w2 * c.w3)) * (c.k2 * c.k2 - c.k3 * c.k3) +
                           std::sqrt(c.w3 / (c.w1 * c.w2)) * (c.k2 * c.k2 - c.k1 * c.k1);
    // The K line carries no 1/4, unlike I and J; implemented as printed,
    // with the alternative normalization behind a switch.
    double pref = P.f * P.N / std::sqrt(2.0 * P.g);
    if (quarter) pref *= 0.25;
    return pref * cross23 / (c.k1 * c.k2 * c.k3) * bracket;
}

Components components_of(const Triad& t, const PhysicalParams& params,
                         const TriadOptions& opts) {
    if (t.k1() <= 0.0 || t.k2() <= 0.0 || t.k3() <= 0.0)
        throw std::domain_error("triad coefficients: zero horizontal wavenumber");
    if (t.m1() == 0.0 || t.m2() == 0.0 || t.m3() == 0.0)
        throw std::domain_error("triad coefficients: zero vertical wavenumber");
    Components c;
    c.k1 = t.k1();
    c.k2 = t.k2();
    c.k3 = t.k3();
    if (opts.high_frequency) {
        c.w1 = omega_high_frequency(t.p1(), params);
        c.w2 = omega_high_frequency(t.p2(), params);
        c.w3 = omega_high_frequency(t.p3(), params);
    } else {
        c.w1 = omega(t.p1(), params);
        c.w2 = omega(t.p2(), params);
        c.w3 = omega(t.p3(), params);
    }
    c.c23 = t.dot23() / (c.k2 * c.k3);
    c.c13 = t.dot13() / (c.k1 * c.k3);
    c.c12 = t.dot12() / (c.k1 * c.k2);
    return c;
}

}  // namespace

double I_term(const Triad& t, const PhysicalParams& params, const TriadOptions& opts) {
    return I_of(components_of(t, params, opts), params);
}

double J_term(const Triad& t, const PhysicalParams& params, const TriadOptions& opts) {
    return J_of(components_of(t, params, opts), params);
}

double K_term_imag(const Triad& t, const PhysicalParams& params, const TriadOptions& opts) {
    const double cr = t.cross23_signed();
    return K_of(components_of(t, params, opts), cr, params, opts.k_prefactor_quarter);
}

double v_squared(const Triad& t, const PhysicalParams& params, const TriadOptions& opts) {
    const Components c = components_of(t, params, opts);
    const double ij = I_of(c, params) + J_of(c, params);
    const double ki = K_of(c, t.cross23_abs(), params, opts.k_prefactor_quarter);
    return ij * ij + ki * ki;
}

double v_squared_components(double k1, double k2, double k3,
                            double w1, double w2, double w3, double delta,
                            const PhysicalParams& params, bool k_prefactor_quarter) {
    Components c;
    c.k1 = k1;
    c.k2 = k2;
    c.k3 = k3;
    c.w1 = w1;
    c.w2 = w2;
    c.w3 = w3;
    c.c23 = 0.5 * (k1 * k1 - k2 * k2 - k3 * k3) / (k2 * k3);
    c.c13 = 0.5 * (k1 * k1 + k3 * k3 - k2 * k2) / (k1 * k3);
    c.c12 = 0.5 * (k1 * k1 + k2 * k2 - k3 * k3) / (k1 * k2);
    const double ij = I_of(c, params) + J_of(c, params);
    const double ki = K_of(c, delta, params, k_prefactor_quarter);
    return ij * ij + ki * ki;
}

}  // namespace iwt
