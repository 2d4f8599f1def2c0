#pragma once

#include <optional>

#include "ca/calculus.hpp"
#include "ca/courant.hpp"

namespace ca {

// Section X + alpha of TM + T*M over one chart.
struct GeneralizedSection {
    VectorField vf;
    DifferentialForm form;  // degree 1

    GeneralizedSection() = default;
    GeneralizedSection(VectorField x, DifferentialForm alpha);
    static GeneralizedSection zero(const Chart& chart);

    const Chart& chart() const { return vf.chart(); }
    bool is_zero() const { return vf.is_zero() && form.is_zero(); }

    friend GeneralizedSection operator+(const GeneralizedSection& a, const GeneralizedSection& b);
    friend GeneralizedSection operator-(const GeneralizedSection& a, const GeneralizedSection& b);
    friend GeneralizedSection operator*(const Scalar& f, const GeneralizedSection& e);
    GeneralizedSection operator-() const;
    friend bool operator==(const GeneralizedSection& a, const GeneralizedSection& b);

    // Frame components: (vector part, form part), length 2n.
    ESection to_esection() const;
    static GeneralizedSection from_esection(const Chart& chart, const ESection& e);
};

enum class PairingKind { G, Omega };

// (1/2)(beta(X) +- alpha(Y)); symmetric for G, skew for Omega.
Scalar pairing(const GeneralizedSection& e1, const GeneralizedSection& e2, PairingKind which);

// partial f = 0 + df.
GeneralizedSection partial_of(const Chart& chart, const Scalar& f);

// [X+alpha, Y+beta] = [X,Y] + (L_X beta - L_Y alpha - d omega(e1,e2)), plus
// the twist term -Phi(X,Y,.) on the form part when a 3-form is supplied.
GeneralizedSection courant_bracket(const GeneralizedSection& e1, const GeneralizedSection& e2,
                                   const std::optional<DifferentialForm>& twist = std::nullopt);

// (X+alpha) * (Y+beta) = [X,Y] + (L_X beta - i(Y) d alpha).
GeneralizedSection dorfman_product(const GeneralizedSection& e1, const GeneralizedSection& e2);

// Cotangent Lie algebroid of a Poisson bivector: [a,b]_P, d_*, L*_a.
DifferentialForm koszul_bracket(const DifferentialForm& a, const DifferentialForm& b,
                                const Bivector& p);
// d_* f as a vector field: (d_*f)^i = P^{ij} d_j f.
VectorField poisson_differential(const Bivector& p, const Scalar& f);
// d_* X as a bivector.
Bivector poisson_differential(const Bivector& p, const VectorField& x);
// i_a W for a 1-form and a bivector: (i_a W)^j = W^{ij} a_i.
VectorField interior_product(const DifferentialForm& a, const Bivector& w);
// L*_a X = i_a d_* X + d_*(a(X)).
VectorField poisson_lie_derivative(const Bivector& p, const DifferentialForm& a,
                                   const VectorField& x);

// Bracket of the Lie bialgebroid (TM, T*M_P); anchor X + sharp_P alpha.
GeneralizedSection bialgebroid_bracket(const GeneralizedSection& e1,
                                       const GeneralizedSection& e2, const Bivector& p,
                                       Flavor flavor);

struct ParaHermitianTM {
    MetricOnTM g;
    EndomorphismField F;

    ParaHermitianTM() = default;
    ParaHermitianTM(MetricOnTM g_, EndomorphismField F_);  // validates invariants
    SMat omega() const;  // omega(X,Y) = g(FX,Y)
    VectorField plus(const VectorField& x) const;   // F+ projection
    VectorField minus(const VectorField& x) const;  // F- projection
};

// [X,Y]_{F+} = [X+,Y+] + sharp_g{L_{X+} flat_g Y- - L_{Y+} flat_g X- - (1/2) d omega(X,Y)}.
VectorField paraherm_bracket(const VectorField& x, const VectorField& y,
                             const ParaHermitianTM& s);

// phi-torsion of the Levi-Civita connection of g:
// T(X,Y) = (nabla_{phi Y} phi)(X) - (nabla_{phi X} phi)(Y).
VectorField phi_torsion(const EndomorphismField& phi, const MetricOnTM& g, const VectorField& x,
                        const VectorField& y);
// Same value through the Nijenhuis identity, for cross-checks.
VectorField phi_torsion_via_nijenhuis(const EndomorphismField& phi, const MetricOnTM& g,
                                      const VectorField& x, const VectorField& y);

// [[X,Y]] = nabla_{phi X} Y - nabla_{phi Y} X - gamma(X,Y) - beta(X,Y), with
// beta recovered from the 3-form B through g.
VectorField phi_bracket(const VectorField& x, const VectorField& y, const EndomorphismField& phi,
                        const MetricOnTM& g, const DifferentialForm& b);

// --- assembled CourantStructure builders -----------------------------------

// TM + T*M with the Courant bracket (skew) or the Dorfman product.
CourantStructure standard_structure(const Chart& chart, Flavor flavor = Flavor::Skew);
// Severa-Weinstein twist by a 3-form.
CourantStructure twisted_structure(const Chart& chart, const DifferentialForm& phi);
// Lie bialgebroid structure of a Poisson bivector.
CourantStructure bialgebroid_structure(const Bivector& p, Flavor flavor = Flavor::Skew);
// Bracket on TM with anchor F+.
CourantStructure paraherm_structure(const ParaHermitianTM& s);
// Pre-Courant structure on TM + T*M + TM for a Riemannian metric G,
// optionally with the lambda-term of a 3-form Phi.
CourantStructure riemannian_triple(const MetricOnTM& G,
                                   const std::optional<DifferentialForm>& phi = std::nullopt);

}  // namespace ca
