#include "metapeel/material.hpp"

namespace metapeel {

void MaterialParams::validate() const {
  if (!(tensile_strength > 0.0)) throw ConfigError("material: tensile strength must be > 0");
  if (!(shear_strength > 0.0)) throw ConfigError("material: shear strength must be > 0");
  if (!(release_rate > 0.0)) throw ConfigError("material: release rate must be > 0");
  if (!(youngs_modulus > 0.0)) throw ConfigError("material: Young's modulus must be > 0");
  if (!(mixity_exponent >= 1.0)) throw ConfigError("material: mixity exponent must be >= 1");
  if (!(poissons_ratio >= 0.0 && poissons_ratio < 0.5))
    throw ConfigError("material: Poisson ratio must be in [0, 0.5)");
  if (!(sheet_thickness > 0.0)) throw ConfigError("material: sheet thickness must be > 0");
  if (!(stiffness_factor > 0.0)) throw ConfigError("material: stiffness factor must be > 0");
  if (!(contact_factor > 0.0)) throw ConfigError("material: contact factor must be > 0");
}

} // namespace metapeel
