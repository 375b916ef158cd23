#include "homsim/bell.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace homsim {

namespace {

constexpr double kGridTol = 1e-12;

double lookup_rate(const BellCurves& curves, const std::vector<double>& rates,
                   double alpha) {
    for (std::size_t i = 0; i < curves.alphas.size(); ++i)
        if (std::abs(curves.alphas[i] - alpha) <= kGridTol) return rates[i];
    throw std::invalid_argument(
        "cauchy_schwarz: analysis angle not present in the curve grid");
}

double fringe_visibility(const std::vector<double>& rates, const char* name) {
    if (rates.empty())
        throw std::invalid_argument(std::string("curve_visibilities: empty ") +
                                    name + " curve");
    double lo = rates.front(), hi = rates.front();
    for (double r : rates) {
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    // curves that are zero up to roundoff have no defined contrast
    if (!(hi + lo > 1e-12))
        throw std::invalid_argument(
            std::string("curve_visibilities: ") + name +
            " curve is identically zero; visibility undefined");
    return (hi - lo) / (hi + lo);
}

}  // namespace

BellRecipe recipe_for(BellLabel target) {
    switch (target) {
        case BellLabel::PhiMinus:
            return {std::numbers::pi, false, target};
        case BellLabel::PhiPlus:
            return {0.0, false, target};
        case BellLabel::PsiMinus:
            return {std::numbers::pi, true, target};
        case BellLabel::PsiPlus:
            return {0.0, true, target};
    }
    throw std::invalid_argument("recipe_for: bad BellLabel");
}

BiphotonState synthesize(const BellRecipe& recipe, const Spectrum& spectrum) {
    BiphotonState state = source_state(spectrum, recipe.beta);
    if (recipe.step_on_one_slm) {
        const PhaseMask step = mask_pi_step(spectrum.grid, 0.0);
        state = apply_shaper(state, step, mask_zero(spectrum.grid));
    }
    return state;
}

BellCurves bell_curves(const BiphotonState& state,
                       std::span<const double> alphas, double mu,
                       BellLabel label) {
    BellCurves curves;
    curves.state_label = label;
    curves.alphas.assign(alphas.begin(), alphas.end());
    curves.r_orth.reserve(alphas.size());
    curves.r_same.reserve(alphas.size());
    for (double alpha : alphas) {
        DetectionConfig orth{alpha, DetectionMode::Orthogonal,
                             std::numeric_limits<double>::infinity(), mu};
        DetectionConfig same{alpha, DetectionMode::Same,
                             std::numeric_limits<double>::infinity(), mu};
        curves.r_orth.push_back(coincidence_oracle(state, orth));
        curves.r_same.push_back(coincidence_oracle(state, same));
    }
    return curves;
}

CurveVisibilities curve_visibilities(const BellCurves& curves) {
    CurveVisibilities v;
    v.v_same = fringe_visibility(curves.r_same, "r_same");
    v.v_orth = fringe_visibility(curves.r_orth, "r_orth");
    return v;
}

double fidelity_lower_bound(const BellCurves& curves_hv_basis,
                            const BellCurves& curves_diag_basis) {
    if (curves_hv_basis.alphas.size() != curves_diag_basis.alphas.size())
        throw std::invalid_argument(
            "fidelity_lower_bound: mismatched alpha grids");
    const double offset = std::numbers::pi / 4.0;
    for (std::size_t i = 0; i < curves_hv_basis.alphas.size(); ++i)
        if (std::abs(curves_diag_basis.alphas[i] -
                     (curves_hv_basis.alphas[i] + offset)) > 1e-9)
            throw std::invalid_argument(
                "fidelity_lower_bound: bases are not offset by 45 degrees");
    if (curves_hv_basis.state_label != curves_diag_basis.state_label)
        throw std::invalid_argument(
            "fidelity_lower_bound: curve sets target different states");
    const double v1 = fringe_visibility(curves_hv_basis.r_orth, "r_orth");
    const double v2 = fringe_visibility(curves_diag_basis.r_orth, "r_orth");
    return 0.5 * (v1 + v2);
}

CauchySchwarzResult cauchy_schwarz(const BellCurves& curves, double alpha) {
    const double perp = alpha + std::numbers::pi / 2.0;
    CauchySchwarzResult r;
    const double saa = lookup_rate(curves, curves.r_same, alpha);
    const double spp = lookup_rate(curves, curves.r_same, perp);
    const double oap = lookup_rate(curves, curves.r_orth, alpha);
    r.lhs = saa * spp;
    r.rhs = oap * oap;
    r.violated = r.lhs < r.rhs;
    return r;
}

CauchySchwarzResult cauchy_schwarz(const BiphotonState& state, double alpha,
                                   double mu) {
    const double perp = alpha + std::numbers::pi / 2.0;
    const double inf = std::numeric_limits<double>::infinity();
    CauchySchwarzResult r;
    const double saa = coincidence_oracle(
        state, DetectionConfig{alpha, DetectionMode::Same, inf, mu});
    const double spp = coincidence_oracle(
        state, DetectionConfig{perp, DetectionMode::Same, inf, mu});
    const double oap = coincidence_oracle(
        state, DetectionConfig{alpha, DetectionMode::Orthogonal, inf, mu});
    r.lhs = saa * spp;
    r.rhs = oap * oap;
    r.violated = r.lhs < r.rhs;
    return r;
}

double maximal_fringe_alpha(BellLabel label) {
    switch (label) {
        case BellLabel::PsiPlus: return 0.0;
        case BellLabel::PhiMinus: return std::numbers::pi / 4.0;
        case BellLabel::PsiMinus: return std::numbers::pi / 4.0;
        case BellLabel::PhiPlus: return std::numbers::pi / 4.0;
    }
    throw std::invalid_argument("maximal_fringe_alpha: bad BellLabel");
}

}  // namespace homsim
