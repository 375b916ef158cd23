#include "homsim/biphoton.hpp"

#include <cmath>
#include <stdexcept>

namespace homsim {

namespace {

constexpr double kUnitaryTol = 1e-10;
const std::complex<double> kI{0.0, 1.0};

void require_unitary(const Mat2& m, const char* where) {
    const Mat2 residual = m.adjoint() * m - Mat2::Identity();
    if (residual.cwiseAbs().maxCoeff() > kUnitaryTol)
        throw std::invalid_argument(std::string(where) +
                                    ": matrix is not unitary");
}

}  // namespace

double BiphotonState::norm_squared() const {
    double total = 0.0;
    for (const auto& a : amplitude) total += a.squaredNorm();
    return total * grid.spacing();
}

std::string to_string(BellLabel label) {
    switch (label) {
        case BellLabel::PhiPlus: return "phi_plus";
        case BellLabel::PhiMinus: return "phi_minus";
        case BellLabel::PsiPlus: return "psi_plus";
        case BellLabel::PsiMinus: return "psi_minus";
    }
    throw std::invalid_argument("to_string: bad BellLabel");
}

Mat2 bell_matrix(BellLabel label) {
    const double r = 1.0 / std::sqrt(2.0);
    Mat2 m = Mat2::Zero();
    switch (label) {
        case BellLabel::PhiPlus:  m(0, 0) = r;  m(1, 1) = r;  break;
        case BellLabel::PhiMinus: m(0, 0) = r;  m(1, 1) = -r; break;
        case BellLabel::PsiPlus:  m(0, 1) = r;  m(1, 0) = r;  break;
        case BellLabel::PsiMinus: m(0, 1) = r;  m(1, 0) = -r; break;
    }
    return m;
}

Mat2 rotation_45() {
    const double r = 1.0 / std::sqrt(2.0);
    Mat2 m;
    m << r, r, r, -r;
    return m;
}

Mat2 hwp_matrix(double axis_angle) {
    if (!std::isfinite(axis_angle))
        throw std::invalid_argument("hwp_matrix: non-finite angle");
    const double c = std::cos(2.0 * axis_angle);
    const double s = std::sin(2.0 * axis_angle);
    Mat2 m;
    m << c, s, s, -c;
    return m;
}

JonesField uniform_field(const SpectralGrid& grid, const Mat2& jones) {
    require_unitary(jones, "uniform_field");
    JonesField f;
    f.grid = grid;
    f.upper.assign(grid.n_bins, jones);
    f.lower.assign(grid.n_bins, jones);
    return f;
}

JonesField basis_rotation_45(const SpectralGrid& grid) {
    return uniform_field(grid, rotation_45());
}

JonesField hwp(const SpectralGrid& grid, double axis_angle) {
    return uniform_field(grid, hwp_matrix(axis_angle));
}

BiphotonState source_state(const Spectrum& spectrum, double beta) {
    if (!std::isfinite(beta))
        throw std::invalid_argument("source_state: non-finite beta");
    const double r = 1.0 / std::sqrt(2.0);
    const std::complex<double> phase = std::exp(kI * beta);
    BiphotonState state;
    state.grid = spectrum.grid;
    state.amplitude.resize(spectrum.grid.n_bins, Mat2::Zero());
    for (int k = 0; k < spectrum.grid.n_bins; ++k) {
        state.amplitude[k](0, 0) = spectrum.amplitude[k] * r;
        state.amplitude[k](1, 1) = spectrum.amplitude[k] * r * phase;
    }
    return state;
}

BiphotonState apply_jones(const BiphotonState& state, const JonesField& field) {
    detail::require_same_grid(state.grid, field.grid, "apply_jones");
    BiphotonState out;
    out.grid = state.grid;
    out.amplitude.resize(state.amplitude.size());
    for (int k = 0; k < state.grid.n_bins; ++k) {
        require_unitary(field.upper[k], "apply_jones");
        require_unitary(field.lower[k], "apply_jones");
        out.amplitude[k] =
            field.upper[k] * state.amplitude[k] * field.lower[k].transpose();
    }
    return out;
}

JonesField shaper_field(const SpectralGrid& grid, const PhaseMask& mask_x,
                        const PhaseMask& mask_y) {
    detail::require_same_grid(grid, mask_x.grid, "shaper_field");
    detail::require_same_grid(grid, mask_y.grid, "shaper_field");
    const Mat2 r45 = rotation_45();
    JonesField f;
    f.grid = grid;
    f.upper.resize(grid.n_bins);
    f.lower.resize(grid.n_bins);
    for (int k = 0; k < grid.n_bins; ++k) {
        Mat2 du = Mat2::Zero();
        du(0, 0) = std::exp(kI * mask_x.phase_upper[k]);
        du(1, 1) = std::exp(kI * mask_y.phase_upper[k]);
        Mat2 dl = Mat2::Zero();
        dl(0, 0) = std::exp(kI * mask_x.phase_lower[k]);
        dl(1, 1) = std::exp(kI * mask_y.phase_lower[k]);
        f.upper[k] = r45 * du * r45;
        f.lower[k] = r45 * dl * r45;
    }
    return f;
}

BiphotonState apply_shaper(const BiphotonState& state, const PhaseMask& mask_x,
                           const PhaseMask& mask_y) {
    return apply_jones(state, shaper_field(state.grid, mask_x, mask_y));
}

BiphotonState fiber_channel(const BiphotonState& state,
                            const PhaseMask& dispersion,
                            const Mat2& birefringence) {
    detail::require_same_grid(state.grid, dispersion.grid, "fiber_channel");
    require_unitary(birefringence, "fiber_channel");
    BiphotonState out;
    out.grid = state.grid;
    out.amplitude.resize(state.amplitude.size());
    for (int k = 0; k < state.grid.n_bins; ++k) {
        // both photons pick up the common phase at their own frequency
        const std::complex<double> pair_phase = std::exp(
            kI * (dispersion.phase_upper[k] + dispersion.phase_lower[k]));
        out.amplitude[k] = pair_phase * birefringence * state.amplitude[k] *
                           birefringence.transpose();
    }
    return out;
}

BiphotonState bell_state(BellLabel label, const Spectrum& spectrum) {
    const Mat2 b = bell_matrix(label);
    BiphotonState state;
    state.grid = spectrum.grid;
    state.amplitude.resize(spectrum.grid.n_bins);
    for (int k = 0; k < spectrum.grid.n_bins; ++k)
        state.amplitude[k] = spectrum.amplitude[k] * b;
    return state;
}

Eigen::Matrix4cd polarization_density(const BiphotonState& state) {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    const double du = state.grid.spacing();
    for (const auto& a : state.amplitude) {
        Eigen::Vector4cd v;
        v << a(0, 0), a(0, 1), a(1, 0), a(1, 1);
        rho += du * v * v.adjoint();
    }
    return rho;
}

double fidelity(const BiphotonState& state, BellLabel label) {
    const Mat2 b = bell_matrix(label);
    double f = 0.0;
    const double du = state.grid.spacing();
    for (const auto& a : state.amplitude) {
        // Frobenius inner product <b, a> per bin; |.|^2 summed with weight du
        const std::complex<double> overlap =
            (b.conjugate().cwiseProduct(a)).sum();
        f += du * std::norm(overlap);
    }
    return f;
}

}  // namespace homsim
