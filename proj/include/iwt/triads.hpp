#pragma once

#include "iwt/core.hpp"

// Three-wave interaction coefficients V^1_{23} = I + J + K for resonant
// triads p1 = p2 + p3, in both vector form (explicit horizontal vectors)
// and magnitude form (side lengths only, the axisymmetric setting).

namespace iwt {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
    double norm() const;
};

double dot(const Vec2& a, const Vec2& b);
double cross(const Vec2& a, const Vec2& b);  // z-component of a x b

// Doubled area of the triangle with side lengths (a, b, c):
//   Delta = 1/2 sqrt(2((ab)^2 + (bc)^2 + (ca)^2) - a^4 - b^4 - c^4),
// evaluated through the factored (Heron) form for stability.
// Returns 0 for degenerate triangles; negative under the triangle
// inequality violation is reported as NaN-free -1 sentinel via the
// dedicated query below, so use triangle_valid() first when unsure.
double triangle_delta(double a, double b, double c);
bool triangle_valid(double a, double b, double c);

class Triad {
public:
    // Vector form: k1 = k2 + k3 by construction, m1 = m2 + m3 exactly.
    static Triad from_vectors(const Vec2& k2, const Vec2& k3, double m2, double m3);

    // Magnitude form: requires |k2 - k3| <= k1 <= k2 + k3 and m1 = m2 + m3.
    static Triad from_magnitudes(double k1, double k2, double k3,
                                 double m1, double m2, double m3);

    bool vector_form() const { return vector_form_; }

    double k1() const { return k1_; }
    double k2() const { return k2_; }
    double k3() const { return k3_; }
    double m1() const { return m1_; }
    double m2() const { return m2_; }
    double m3() const { return m3_; }

    Wavevector p1() const { return {k1_, m1_}; }
    Wavevector p2() const { return {k2_, m2_}; }
    Wavevector p3() const { return {k3_, m3_}; }

    // Horizontal dot products; magnitude form reconstructs them from the
    // law of cosines using k1 = |k2 + k3|.
    double dot23() const;
    double dot13() const;
    double dot12() const;

    // Signed z-component of k2 x k3 (vector form only).
    double cross23_signed() const;
    // |k2 x k3|; available in both forms (equals the triangle Delta).
    double cross23_abs() const;

    Triad swapped23() const;

private:
    Triad() = default;
    bool vector_form_ = false;
    Vec2 v2_, v3_;  // vector form only
    double k1_ = 0, k2_ = 0, k3_ = 0;
    double m1_ = 0, m2_ = 0, m3_ = 0;
};

struct TriadOptions {
    bool high_frequency = false;      // use omega = gk/(rho0 N |m|) inside V
    bool k_prefactor_quarter = false; // exploratory alternative K normalization
};

// The three lines of the interaction coefficient.  I and J are real;
// K is purely imaginary and returned as its imaginary part.
double I_term(const Triad& t, const PhysicalParams& params, const TriadOptions& opts = {});
double J_term(const Triad& t, const PhysicalParams& params, const TriadOptions& opts = {});
double K_term_imag(const Triad& t, const PhysicalParams& params, const TriadOptions& opts = {});

// |V|^2 = (I + J)^2 + |K|^2; identical between vector and magnitude forms.
double v_squared(const Triad& t, const PhysicalParams& params, const TriadOptions& opts = {});

// |V^1_{23}|^2 from precomputed side lengths, frequencies, and the doubled
// triangle area delta = |k2 x k3|.  This is the axisymmetric kernel path:
// dot products come from the law of cosines under k1 = k2 + k3.  The
// frequencies are taken as given, so resonance bookkeeping stays exact.
double v_squared_components(double k1, double k2, double k3,
                            double w1, double w2, double w3, double delta,
                            const PhysicalParams& params, bool k_prefactor_quarter = false);

}  // namespace iwt
