#pragma once

// Two-photon polarization-spectral amplitudes and the unitary optics that
// act on them.
//
// A BiphotonState stores, per detuning bin k, the 2x2 complex matrix
// A[k](p, q): the coefficient of |1>_{w0+u_k, p} |1>_{w0-u_k, q} with
// p, q in {H = 0, V = 1}.  The norm convention is
//
//   sum_k ||A[k]||_F^2 du = 1.
//
// Basis conventions, fixed once for the whole artifact:
//   |X> = (|H> + |V>)/sqrt(2),   |Y> = (|H> - |V>)/sqrt(2),
// so the H/V <-> X/Y component change is the self-inverse matrix
// [[1, 1], [1, -1]]/sqrt(2).  Bell states carry the standard signs
// phi± = (|HH> ± |VV>)/sqrt(2), psi± = (|HV> ± |VH>)/sqrt(2).

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "homsim/spectral.hpp"

namespace homsim {

using Mat2 = Eigen::Matrix2cd;

struct BiphotonState {
    SpectralGrid grid;
    std::vector<Mat2> amplitude;  // one 2x2 polarization block per bin

    double norm_squared() const;
};

// Polarization transform resolved over the grid: upper[k] acts on the photon
// at w0 + u_k, lower[k] on the photon at w0 - u_k.  All matrices must be
// unitary (lossless elements only).
struct JonesField {
    SpectralGrid grid;
    std::vector<Mat2> upper;
    std::vector<Mat2> lower;
};

enum class BellLabel { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

std::string to_string(BellLabel label);

// The polarization coefficient matrix of a Bell state (unit Frobenius norm).
Mat2 bell_matrix(BellLabel label);

// H/V <-> X/Y component change, [[1, 1], [1, -1]]/sqrt(2).  Self-inverse.
Mat2 rotation_45();

// Half-wave plate with fast axis at `axis_angle` to H:
// [[cos 2a, sin 2a], [sin 2a, -cos 2a]].  hwp_matrix(alpha/2) maps an
// alpha-polarized photon to H.
Mat2 hwp_matrix(double axis_angle);

// Frequency-flat fields built from a single Jones matrix.
JonesField uniform_field(const SpectralGrid& grid, const Mat2& jones);
JonesField basis_rotation_45(const SpectralGrid& grid);
JonesField hwp(const SpectralGrid& grid, double axis_angle);

// The source state
//   A[k](H,H) = g_k / sqrt(2),  A[k](V,V) = e^{i beta} g_k / sqrt(2),
// with beta the relative phase between the H-polarized and V-polarized
// pairs.  beta = pi gives phi- in H/V (equivalently psi+ in X/Y); beta = 0
// gives phi+.
BiphotonState source_state(const Spectrum& spectrum, double beta);

// A'[k] = upper[k] * A[k] * lower[k]^T.  Rejects grid mismatch and
// non-unitary fields (tolerance 1e-10).
BiphotonState apply_jones(const BiphotonState& state, const JonesField& field);

// The two-SLM shaper: at every frequency, phase e^{i theta_X} on the X
// component and e^{i theta_Y} on the Y component.  Equivalent to apply_jones
// with the field R45 * diag(e^{i tx}, e^{i ty}) * R45 per bin and half.
BiphotonState apply_shaper(const BiphotonState& state, const PhaseMask& mask_x,
                           const PhaseMask& mask_y);

// The Jones field the shaper is equivalent to (exposed so the equivalence
// can be checked directly).
JonesField shaper_field(const SpectralGrid& grid, const PhaseMask& mask_x,
                        const PhaseMask& mask_y);

// Single-mode fiber: a common spectral phase e^{i phi(omega)} applied to
// both polarizations (phi sampled by `dispersion` on both half-spectra) and
// a frequency-flat unitary `birefringence` applied to both photons (U x U).
BiphotonState fiber_channel(const BiphotonState& state,
                            const PhaseMask& dispersion,
                            const Mat2& birefringence);

// The ideal Bell state dressed with the given spectral envelope.
BiphotonState bell_state(BellLabel label, const Spectrum& spectrum);

// Polarization fidelity <bell| rho_pol |bell>, where rho_pol is the 4x4
// polarization density matrix obtained by tracing out the detuning bin
// (weights du).  The reference dressing is the state's own envelope, so the
// result measures polarization structure, not spectral overlap: a
// bin-dependent phase common to all polarization components leaves it
// unchanged.
double fidelity(const BiphotonState& state, BellLabel label);

// 4x4 polarization density matrix in the basis {HH, HV, VH, VV}.
Eigen::Matrix4cd polarization_density(const BiphotonState& state);

}  // namespace homsim
