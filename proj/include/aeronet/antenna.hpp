// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "aeronet/geometry.hpp"

namespace aeronet::antenna {

// Parabolic single-element model with independent azimuth/elevation rolloff
// and front-to-back / sidelobe attenuation floors.
struct ElementPattern {
  double gmax_dbi = 8.0;
  double hpbw_az_deg = 65.0;
  double hpbw_el_deg = 65.0;
  double front_back_db = 30.0;  // azimuth floor A_m
  double sla_db = 30.0;         // elevation sidelobe floor
};

// Vertical uniform linear array, electrically steered below the horizon.
struct ArrayConfig {
  int m_elements = 16;
  double spacing_wl = 0.8;
  double downtilt_deg = 10.0;
};

struct CompositePattern {
  ElementPattern element;
  ArrayConfig array;
};

// Lowest value the array factor may take; exact nulls clamp here.
inline constexpr double kArrayFactorFloorDb = -50.0;

// Gain of one element. Angles are relative to the element boresight.
double element_gain_db(double az_rel_deg, double el_rel_deg, const ElementPattern& p);

// Power array factor in dB, peaking at 10*log10(M) when el_rel_deg equals
// the steering angle -downtilt_deg. el_rel_deg is measured from horizontal,
// negative below the horizon.
double array_factor_db(double el_rel_deg, const ArrayConfig& a);

// Element gain x array factor. The element is tilted with the array, so the
// composite peak is exactly gmax + 10*log10(M) at (az 0, el -downtilt).
// Clamped below at gmax - front_back - 20 dBi.
double composite_gain_db(double az_rel_deg, double el_rel_deg, const CompositePattern& c);

struct LinkAngles {
  double az_rel_deg;  // [-180, 180) relative to sector bearing
  double el_rel_deg;  // positive above horizon
};

// Azimuth/elevation of the BS->UE direction relative to a sector boresight.
// Throws std::invalid_argument for coincident positions.
LinkAngles link_angles(double bearing_deg, Vec3 bs_pos, Vec3 ue_pos);

}  // namespace aeronet::antenna
