#include "exterior_gs/soliton.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "exterior_gs/quadrature.hpp"

namespace exgs {

Soliton::Soliton(double p) : p_(p) {
    if (!(p > 2.0)) throw std::invalid_argument("Soliton: need p > 2");
    amp_ = std::pow(p / 2.0, 1.0 / (p - 2.0));
    sechp_ = 2.0 / (p - 2.0);
    rate_ = (p - 2.0) / 2.0;
}

double Soliton::value(double r) const {
    // sech^b(c r) written as exp(-b c |r|) (2 / (1 + e^{-2 c |r|}))^b to stay
    // finite for large |r|.
    const double z = rate_ * std::abs(r);
    const double log_sech = -z + std::log(2.0 / (1.0 + std::exp(-2.0 * z)));
    return amp_ * std::exp(sechp_ * log_sech);
}

double Soliton::derivative(double r) const {
    return -sechp_ * rate_ * std::tanh(rate_ * r) * value(r);
}

double Soliton::second_derivative(double r) const {
    // W'' = W (tanh^2(c r) - c sech^2(c r)), using b^2 c^2 = 1 and b c^2 = c.
    const double t = std::tanh(rate_ * r);
    const double sech2 = 1.0 - t * t;
    return value(r) * (t * t - rate_ * sech2);
}

double Soliton::ode_residual(double r) const {
    const double w = value(r);
    return -second_derivative(r) + w - std::pow(w, p_ - 1.0);
}

double Soliton::energy(double r) const {
    const double w = value(r);
    const double wp = derivative(r);
    return 0.5 * wp * wp + std::pow(w, p_) / p_ - 0.5 * w * w;
}

double Soliton::mass_closed_form() const {
    // ∫ sech^{2b}(c r) dr = sqrt(pi) Gamma(b) / (c Gamma(b + 1/2)).
    const double b = sechp_;
    return std::exp(2.0 * std::log(amp_) - std::log(rate_) + 0.5 * std::log(M_PI) +
                    std::lgamma(b) - std::lgamma(b + 0.5));
}

double Soliton::mass_quadrature() const {
    // W decays like e^{-|r|} for every p (b c = 1), so [-26, 26] truncates
    // below 1e-22 of the peak.
    const double L = 26.0;
    const int n = 64001;
    std::vector<double> x(n), f(n);
    for (int i = 0; i < n; ++i) {
        x[i] = -L + 2.0 * L * i / (n - 1);
        const double w = value(x[i]);
        f[i] = w * w;
    }
    return simpson_nonuniform(x, f);
}

double soliton_mass_1d(double p) { return Soliton(p).mass_closed_form(); }

} // namespace exgs
