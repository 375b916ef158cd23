#pragma once

// Bell-state synthesis by spectral shaping, and the two-detector analysis
// curves R_{alpha,alpha_perp} / R_{alpha,alpha} as functions of the
// analysis angle.
//
// The four recipes: the source phase beta picks phi- (beta = pi) or phi+
// (beta = 0) in H/V; a spectral pi step at w0 on exactly one SLM then maps
// phi- -> psi- and phi+ -> psi+ (in H/V; the step acts in the X/Y basis
// where those states are psi+ and phi+ respectively).

#include <span>
#include <vector>

#include "homsim/biphoton.hpp"
#include "homsim/interference.hpp"
#include "homsim/spectral.hpp"

namespace homsim {

struct BellRecipe {
    double beta = 0.0;             // LCC phase between HH and VV pairs
    bool step_on_one_slm = false;  // pi step at w0 on the X SLM only
    BellLabel target = BellLabel::PhiPlus;
};

// The canonical recipe reaching `target`.
BellRecipe recipe_for(BellLabel target);

BiphotonState synthesize(const BellRecipe& recipe, const Spectrum& spectrum);

struct BellCurves {
    std::vector<double> alphas;  // radians
    std::vector<double> r_orth;  // R_{alpha, alpha_perp}
    std::vector<double> r_same;  // R_{alpha, alpha}, detection factor 1/2
                                 // already applied
    BellLabel state_label = BellLabel::PhiPlus;
};

// Evaluates both detection configurations at every analysis angle.  `label`
// tags the curves for serialization and witness selection.
BellCurves bell_curves(const BiphotonState& state,
                       std::span<const double> alphas, double mu,
                       BellLabel label);

struct CurveVisibilities {
    double v_same = 0.0;
    double v_orth = 0.0;
};

// Fringe contrast (max - min)/(max + min) per curve.  Constant-zero curves
// have no defined contrast and are rejected.
CurveVisibilities curve_visibilities(const BellCurves& curves);

// Two-basis witness bound: the mean of the R_{alpha,alpha_perp} fringe
// visibilities measured in the alpha family and in the alpha + 45 deg
// family.  Requires matching grids offset by exactly 45 deg and a common
// target label.
double fidelity_lower_bound(const BellCurves& curves_hv_basis,
                            const BellCurves& curves_diag_basis);

struct CauchySchwarzResult {
    double lhs = 0.0;  // R_{alpha,alpha} * R_{alpha_perp,alpha_perp}
    double rhs = 0.0;  // R_{alpha,alpha_perp}^2
    bool violated = false;
};

// Classical-field bound R_aa * R_bb >= R_ab^2 evaluated from tabulated
// curves; alpha and alpha + 90 deg must be on the curve grid.
CauchySchwarzResult cauchy_schwarz(const BellCurves& curves, double alpha);

// Same test evaluated directly from the state.
CauchySchwarzResult cauchy_schwarz(const BiphotonState& state, double alpha,
                                   double mu);

// The analysis angle with the strongest fringe contrast for each state
// (used to report the Cauchy-Schwarz test at its most telling point).
double maximal_fringe_alpha(BellLabel label);

}  // namespace homsim
