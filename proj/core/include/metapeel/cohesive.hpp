#pragma once

#include "metapeel/material.hpp"

namespace metapeel {

/// One cohesive bond tying a sheet node to the rigid substrate.
struct CohesiveBond {
  int node = -1;
  double area = 0.0;   // tributary area [m^2]
  double damage = 0.0; // monotone, 0 = intact, 1 = failed

  bool failed() const { return damage >= 1.0; }
};

/// Mixed-mode bilinear traction-separation law.
///
/// Each mode rises linearly at stiffness K to its onset strength, then
/// softens linearly so a single-mode pull dissipates exactly G_c per area.
/// Under a mixed opening/sliding separation the effective bilinear
/// envelope interpolates between the modes:
///
///   lambda      = sqrt(<dn>^2 + dt^2)          (effective separation)
///   lambda0(phi)= 1 / (K * sqrt((cos/s)^2 + (sin/t)^2))
///   lambdaF(phi)= 2 G_c / (K lambda0) * (cos^2eta + sin^2eta)^(-1/eta)
///
/// with phi the mode angle. The final separation is set from the
/// power-law energy criterion (G_I/G_c)^eta + (G_II/G_c)^eta = 1, so the
/// mode-wise works under proportional loading satisfy it exactly at
/// failure. Damage is the secant softening variable, taken as the maximum
/// over history; tractions scale by (1 - damage). Compressive contact is
/// a stiff quadratic penalty decoupled from damage.
class CohesiveLaw {
public:
  CohesiveLaw() = default;
  CohesiveLaw(const MaterialParams& mat, double element_size);

  struct Traction {
    double normal = 0.0;     // [Pa], positive = pulling back toward substrate
    double tangential = 0.0; // [Pa], magnitude opposing slip
    double damage = 0.0;     // updated (monotone) damage
  };

  /// Evaluate tractions at the given separations and the damage the bond
  /// would carry afterwards. Pure; does not mutate the bond.
  Traction evaluate(double normal_sep, double tangential_sep, double damage) const;

  /// Monotonic-envelope damage at the given separations (ignoring history).
  double damage_at(double normal_sep, double tangential_sep) const;

  /// Recoverable energy per unit area at fixed damage [J/m^2].
  double elastic_energy_density(double normal_sep, double tangential_sep, double damage) const;

  double stiffness() const { return stiffness_; }
  double contact_stiffness() const { return contact_stiffness_; }
  double mode1_onset_separation() const { return sigma_max_ / stiffness_; }
  double mode1_final_separation() const { return 2.0 * gc_ / sigma_max_; }
  double release_rate() const { return gc_; }

private:
  double sigma_max_ = 0.0;
  double tau_max_ = 0.0;
  double gc_ = 0.0;
  double eta_ = 1.0;
  double stiffness_ = 0.0;         // K [Pa/m]
  double contact_stiffness_ = 0.0; // [Pa/m]
};

/// Contract-level entry point: tractions at (dn, dt) for a bond, with the
/// bond's damage advanced irreversibly.
CohesiveLaw::Traction cohesive_traction(double normal_sep, double tangential_sep,
                                        CohesiveBond& bond, const CohesiveLaw& law);

} // namespace metapeel
