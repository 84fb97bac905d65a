#pragma once

// Physical constants (CODATA 2018) and the conversions between lab units and
// the internal convention hbar = 1, energies in rad/ps, times in ps.

namespace dqgate::units {

inline constexpr double kHbarMeVps = 0.6582119569509067;         // meV ps
inline constexpr double kHbarJs = 1.0545718176461565e-34;       // J s
inline constexpr double kBohrMagnetonMeVperT = 5.7883818060e-2;
inline constexpr double kElectronMassKg = 9.1093837015e-31;
inline constexpr double kElementaryChargeC = 1.602176634e-19;
inline constexpr double kCoulombMeVnm = 1439.96454784;      // e^2 / (4 pi eps0)

inline constexpr double mev_to_rad_per_ps(double mev) { return mev / kHbarMeVps; }
inline constexpr double rad_per_ps_to_mev(double w) { return w * kHbarMeVps; }

/// mu_B g B in rad/ps for a field in tesla.
inline constexpr double zeeman_rad_per_ps(double g, double tesla) {
  return kBohrMagnetonMeVperT * g * tesla / kHbarMeVps;
}

inline constexpr double tesla_from_zeeman(double g, double rad_per_ps) {
  return rad_per_ps * kHbarMeVps / (kBohrMagnetonMeVperT * g);
}

}  // namespace dqgate::units
