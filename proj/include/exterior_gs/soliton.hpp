#pragma once

namespace exgs {

// The even decaying solution of -W'' + W = W^{p-1} on the line:
//   W(r) = (p/2)^{1/(p-2)} sech^{2/(p-2)}((p-2) r / 2).
// This is the limit profile of the rescaled ground state at both parameter
// extremes, and the reference for the soliton-distance diagnostics.
class Soliton {
  public:
    explicit Soliton(double p);

    double p() const { return p_; }
    double amplitude() const { return amp_; } // W(0) = (p/2)^{1/(p-2)}

    double value(double r) const;
    double derivative(double r) const;
    double second_derivative(double r) const;

    double operator()(double r) const { return value(r); }

    // -W'' + W - W^{p-1}; identically zero for the exact profile.
    double ode_residual(double r) const;

    // (1/2) W'^2 + W^p / p - W^2 / 2; the homoclinic orbit sits on level 0.
    double energy(double r) const;

    // ∫ W^2 dr over the line, via the sech-power Beta integral.
    double mass_closed_form() const;

    // Same integral by composite quadrature; agreement with the closed form
    // is a test invariant (1e-10).
    double mass_quadrature() const;

  private:
    double p_;
    double amp_;   // (p/2)^{1/(p-2)}
    double sechp_; // sech exponent 2/(p-2)
    double rate_;  // (p-2)/2
};

// Spec-facing alias: closed-form ∫ W^2 dr for exponent p.
double soliton_mass_1d(double p);

} // namespace exgs
