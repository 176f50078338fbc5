// SPDX-License-Identifier: Apache-2.0
#include "aeronet/antenna.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aeronet::antenna {

double element_gain_db(double az_rel_deg, double el_rel_deg, const ElementPattern& p) {
  const double az_ratio = az_rel_deg / p.hpbw_az_deg;
  const double el_ratio = el_rel_deg / p.hpbw_el_deg;
  const double att_az = std::min(12.0 * az_ratio * az_ratio, p.front_back_db);
  const double att_el = std::min(12.0 * el_ratio * el_ratio, p.sla_db);
  return p.gmax_dbi - std::min(att_az + att_el, p.front_back_db);
}

double array_factor_db(double el_rel_deg, const ArrayConfig& a) {
  const int m = a.m_elements;
  if (m <= 1) return 0.0;

  // Uniform-phasor sum: |sin(M psi/2) / sin(psi/2)|^2 / M.
  const double delta_sin =
      std::sin(deg_to_rad(el_rel_deg)) - std::sin(deg_to_rad(-a.downtilt_deg));
  const double psi = 2.0 * kPi * a.spacing_wl * delta_sin;
  const double den = std::sin(psi / 2.0);
  double af_lin;
  if (std::abs(den) < 1e-12) {
    af_lin = static_cast<double>(m);  // coherent sum
  } else {
    const double ratio = std::sin(static_cast<double>(m) * psi / 2.0) / den;
    af_lin = ratio * ratio / static_cast<double>(m);
  }
  if (af_lin <= 0.0) return kArrayFactorFloorDb;
  return std::max(linear_to_db(af_lin), kArrayFactorFloorDb);
}

double composite_gain_db(double az_rel_deg, double el_rel_deg, const CompositePattern& c) {
  // The element boresight follows the array tilt.
  const double gain = element_gain_db(az_rel_deg, el_rel_deg + c.array.downtilt_deg,
                                      c.element) +
                      array_factor_db(el_rel_deg, c.array);
  const double floor = c.element.gmax_dbi - c.element.front_back_db - 20.0;
  return std::max(gain, floor);
}

LinkAngles link_angles(double bearing_deg, Vec3 bs_pos, Vec3 ue_pos) {
  const Vec3 d = ue_pos - bs_pos;
  if (d.x == 0.0 && d.y == 0.0 && d.z == 0.0) {
    throw std::invalid_argument("link_angles: coincident BS and UE positions");
  }
  const double az = rad_to_deg(std::atan2(d.y, d.x));
  const double d2d = std::hypot(d.x, d.y);
  const double el = rad_to_deg(std::atan2(d.z, d2d));
  return {wrap_deg_pm180(az - bearing_deg), el};
}

}  // namespace aeronet::antenna
