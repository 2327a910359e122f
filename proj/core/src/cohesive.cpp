#include "metapeel/cohesive.hpp"

#include <cmath>
#include <stdexcept>

namespace metapeel {

CohesiveLaw::CohesiveLaw(const MaterialParams& mat, double element_size)
    : sigma_max_(mat.tensile_strength),
      tau_max_(mat.shear_strength),
      gc_(mat.release_rate),
      eta_(mat.mixity_exponent),
      stiffness_(mat.stiffness_factor * mat.tensile_strength / element_size),
      contact_stiffness_(mat.contact_factor * mat.stiffness_factor * mat.tensile_strength /
                         element_size) {}

double CohesiveLaw::damage_at(double dn, double dt) const {
  const double dn_pos = dn > 0.0 ? dn : 0.0;
  const double lambda = std::hypot(dn_pos, dt);
  if (lambda <= 0.0) return 0.0;

  const double c = dn_pos / lambda;
  const double s = dt / lambda;
  const double lambda0 =
      1.0 / (stiffness_ * std::sqrt((c / sigma_max_) * (c / sigma_max_) +
                                    (s / tau_max_) * (s / tau_max_)));
  const double mix = std::pow(std::pow(c * c, eta_) + std::pow(s * s, eta_), 1.0 / eta_);
  const double lambda_f = 2.0 * gc_ / (stiffness_ * lambda0 * mix);

  if (lambda <= lambda0) return 0.0;
  if (lambda >= lambda_f) return 1.0;
  // Secant damage reproducing the linear softening envelope.
  return (lambda_f * (lambda - lambda0)) / (lambda * (lambda_f - lambda0));
}

CohesiveLaw::Traction CohesiveLaw::evaluate(double dn, double dt, double damage) const {
  if (!std::isfinite(dn) || !std::isfinite(dt))
    throw std::logic_error("cohesive law: non-finite separation");

  Traction t;
  t.damage = std::max(damage, damage_at(dn, dt));
  if (dn >= 0.0) {
    t.normal = (1.0 - t.damage) * stiffness_ * dn;
  } else {
    t.normal = contact_stiffness_ * dn;
  }
  t.tangential = (1.0 - t.damage) * stiffness_ * dt;
  return t;
}

double CohesiveLaw::elastic_energy_density(double dn, double dt, double damage) const {
  double e = 0.0;
  if (dn >= 0.0) {
    e += 0.5 * (1.0 - damage) * stiffness_ * dn * dn;
  } else {
    e += 0.5 * contact_stiffness_ * dn * dn;
  }
  e += 0.5 * (1.0 - damage) * stiffness_ * dt * dt;
  return e;
}

CohesiveLaw::Traction cohesive_traction(double dn, double dt, CohesiveBond& bond,
                                        const CohesiveLaw& law) {
  CohesiveLaw::Traction t = law.evaluate(dn, dt, bond.damage);
  bond.damage = t.damage;
  return t;
}

} // namespace metapeel
