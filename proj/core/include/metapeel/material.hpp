#pragma once

#include "metapeel/errors.hpp"

namespace metapeel {

/// Elastic and cohesive constants of the bonded sheet. SI units.
///
/// The cohesive defaults are the adhesive interface values used throughout
/// the studies (80 MPa strengths, 2.8 kJ/m^2 release rate, mode-mixity
/// exponent 2.284, 300 um sheet). The elastic modulus is the effective
/// in-plane modulus of the laminated sheet (thin stiff backing film plus
/// soft elastomer), which dominates its membrane stiffness.
struct MaterialParams {
  double tensile_strength = 80.0e6;  // sigma_max [Pa]
  double shear_strength = 80.0e6;    // tau_max [Pa]
  double release_rate = 2800.0;      // G_c [J/m^2]
  double mixity_exponent = 2.284;    // eta, power-law mixed-mode criterion
  double sheet_thickness = 300.0e-6; // t [m]
  double youngs_modulus = 0.5e9;     // E [Pa], laminate effective
  double poissons_ratio = 0.45;      // nu
  double stiffness_factor = 50.0;    // cohesive K = factor * sigma_max / element size
  double contact_factor = 10.0;      // compressive penalty stiffness = factor * K

  /// Membrane stiffness E*t [N/m].
  double membrane_stiffness() const { return youngs_modulus * sheet_thickness; }

  /// Plate bending rigidity E*t^3 / 12(1-nu^2) [N*m].
  double bending_rigidity() const {
    const double t = sheet_thickness;
    return youngs_modulus * t * t * t / (12.0 * (1.0 - poissons_ratio * poissons_ratio));
  }

  /// Throws ConfigError when a constant is outside its admissible range.
  void validate() const;
};

} // namespace metapeel
