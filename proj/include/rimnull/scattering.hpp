// SPDX-License-Identifier: Apache-2.0
//
// Reflection dyads and physical-optics surface currents. Dyads act on the
// (TM, TE) components of a field in the local plane of incidence; TM pairs
// with the tabulated theta index and TE with phi. The reflected TM vector is
// oriented so that the dyad -I reproduces a perfectly conducting tangent plane.
#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rimnull/feed.hpp"
#include "rimnull/geometry.hpp"

namespace rimnull {

using Mat2c = Eigen::Matrix2cd;
using CVec2 = Eigen::Vector2cd;

struct ReflectionDyad {
    Mat2c m = Mat2c::Zero();

    cdouble tt() const { return m(0, 0); }
    cdouble tp() const { return m(0, 1); }
    cdouble pt() const { return m(1, 0); }
    cdouble pp() const { return m(1, 1); }

    static ReflectionDyad from_entries(cdouble tt, cdouble tp, cdouble pt, cdouble pp);
    static ReflectionDyad pec();
    static ReflectionDyad scaled_identity(cdouble value);
    static ReflectionDyad zero() { return {}; }

    double largest_singular_value() const;
    bool passive(double tolerance = 1e-6) const { return largest_singular_value() <= 1.0 + tolerance; }
};

enum class SwitchState : std::uint8_t { off = 0, on = 1 };

std::string_view to_string(SwitchState s);
SwitchState parse_switch_state(std::string_view text);

enum class DyadKind { pec, ideal_one_bit, ruc_table2, user_table };

std::string_view to_string(DyadKind kind);
DyadKind parse_dyad_kind(std::string_view text);

struct DyadEntry {
    SwitchState state = SwitchState::off;
    double frequency = 0.0;  ///< Hz
    double theta_li = 0.0;   ///< radians
    ReflectionDyad dyad;
};

/// Immutable source of reflection dyads keyed by (state, frequency, local incidence).
class DyadSource {
public:
    static DyadSource pec();
    /// States on -> +jI, off -> -jI.
    static DyadSource ideal_one_bit();
    /// Measured 1-bit RUC dyads at 1.5 GHz, theta_li = 31.25 deg.
    static DyadSource ruc_table2();
    static DyadSource user_table(std::vector<DyadEntry> entries);
    /// CSV columns: state, frequency_hz, theta_inc_deg, then magnitude and
    /// phase (deg) for tt, tp, pt, pp. Lines starting with '#' are ignored.
    static DyadSource from_csv(std::istream& in);
    static DyadSource from_csv_file(const std::string& path);

    DyadKind kind() const { return kind_; }
    const std::vector<DyadEntry>& entries() const { return entries_; }
    /// Maximum |theta_li - table angle| accepted by lookup, radians.
    double angle_tolerance() const { return angle_tolerance_; }

    ReflectionDyad lookup(SwitchState state, double theta_li, double frequency) const;

private:
    DyadSource(DyadKind kind, std::vector<DyadEntry> entries, double angle_tolerance);

    DyadKind kind_;
    std::vector<DyadEntry> entries_;
    double angle_tolerance_;
};

/// Physical design of the tabulated RUC. Provenance only.
struct RucDatasheet {
    struct DiodeState {
        double capacitance_pf;
        double resistance_ohm;
        double inductance_nh;
    };
    double patch_length_mm = 51.0;
    double patch_width_mm = 51.0;
    double top_substrate_mm = 13.5;      // Taconic TLX-8
    double top_eps_r = 2.55;
    double top_tan_delta = 0.0017;
    double bottom_substrate_mm = 4.167;  // RT/Duroid 5880
    DiodeState diode_on{0.0, 0.75, 0.45};
    DiodeState diode_off{0.23, 0.0, 0.45};
    double design_frequency_hz = 1.5e9;
    double design_theta_li_deg = 31.25;
    double design_phi_li_deg = 180.0;
};

struct PolarizationBasis {
    Vec3 k_i;     ///< incident propagation direction (r-hat from the focus)
    Vec3 k_r;     ///< specular reflection of k_i about the surface
    Vec3 e_te;    ///< local y, shared by incident and reflected waves
    Vec3 e_tm_i;  ///< e_te x k_i
    Vec3 e_tm_r;  ///< k_r x e_te
};

PolarizationBasis local_polarization_basis(const SurfaceSample& sample);

/// (TM, TE) components of a field transverse to basis.k_i.
CVec2 incident_components(const PolarizationBasis& basis, const CVec3& e_i);

/// Reflected field R . E_i reconstructed on (e_tm_r, e_te).
CVec3 reflected_field(const PolarizationBasis& basis, const ReflectionDyad& dyad, const CVec3& e_i);

/// PO surface current 2 n x H_r with H_r = k_r x E_r / eta0. Throws
/// ContractError when E_i has a longitudinal part above 1e-9 relative.
CVec3 surface_current(const SurfaceSample& sample, const ReflectionDyad& dyad, const CVec3& e_i);

}  // namespace rimnull
