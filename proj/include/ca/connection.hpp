#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ca/courant.hpp"

namespace ca {

// Trivial pseudo-Euclidean bundle over a chart: a symmetric invertible fiber
// metric in a fixed frame.
struct PseudoEuclideanBundle {
    Chart chart;
    SMat gE;
    SMat gE_inv;
    std::vector<std::string> labels;

    PseudoEuclideanBundle() = default;
    PseudoEuclideanBundle(Chart chart_, SMat gE_, std::vector<std::string> labels_ = {});

    int rank() const { return static_cast<int>(gE.rows()); }
    Scalar pairing(const ESection& e1, const ESection& e2) const;
};

// Metric connection: one Christoffel matrix per coordinate direction, with
//   d_i gE = Gamma_i^T gE + gE Gamma_i   (exactly, for every i).
class MetricConnection {
public:
    MetricConnection() = default;
    // Validates the metric identity; throws InvalidComponentConnection.
    MetricConnection(PseudoEuclideanBundle bundle, std::vector<SMat> gamma);

    const PseudoEuclideanBundle& bundle() const { return bundle_; }
    const Chart& chart() const { return bundle_.chart; }
    int rank() const { return bundle_.rank(); }
    const std::vector<SMat>& gamma() const { return gamma_; }

private:
    PseudoEuclideanBundle bundle_;
    std::vector<SMat> gamma_;
};

// Gamma_i = (1/2) gE^{-1} d_i gE; the metric identity then holds identically.
MetricConnection default_metric_connection(const PseudoEuclideanBundle& b);

// nabla_X e = X^i (d_i e + Gamma_i e).
ESection covariant_derivative(const MetricConnection& nabla, const VectorField& x,
                              const ESection& e);

// T(e1,e2) = rho(nabla_{rho e1} e2 - nabla_{rho e2} e1) - [rho e1, rho e2].
VectorField rho_torsion(const MetricConnection& nabla, const SMat& rho, const ESection& e1,
                        const ESection& e2);

// The unique section with g(gamma(e1,e2), e) = (1/2)[g(e1, nabla_{rho e} e2)
// - g(e2, nabla_{rho e} e1)] for every frame section e.
ESection gamma_op(const MetricConnection& nabla, const SMat& rho, const ESection& e1,
                  const ESection& e2);

// Skew bracket [e1,e2]_0 = nabla_{rho e1} e2 - nabla_{rho e2} e1 - gamma(e1,e2).
CourantStructure bracket0(const MetricConnection& nabla, const SMat& rho);

// Section with g(beta(e1,e2), .) = B(e1,e2,.), through gE.
ESection beta_of(const PseudoEuclideanBundle& b, const EThreeForm& bform, const ESection& e1,
                 const ESection& e2);

struct BetaBracket {
    CourantStructure structure;
    // Whether rho(beta(e1,e2)) reproduces the rho-torsion, checked on frame
    // pairs against coordinate functions; the anchor property of the bracket
    // holds exactly when it does (and the anchor is isotropic).
    ReportLine torsion_check;
};

// [e1,e2] = [e1,e2]_0 - beta(e1,e2).
BetaBracket bracket_with_beta(const MetricConnection& nabla, const SMat& rho,
                              const EThreeForm& bform);

// R(d_i, d_j) = d_i Gamma_j - d_j Gamma_i + Gamma_i Gamma_j - Gamma_j Gamma_i.
SMat curvature(const MetricConnection& nabla, int i, int j);
bool is_flat(const MetricConnection& nabla);

struct ObstructionPair {
    ESection C0;  // jacobiator defect of the torsion-free part
    ESection C;   // defect of the full bracket, beta terms included
};

// Requires the anchor property of the assembled bracket (throws
// PropertyIFails otherwise); C then measures the only remaining obstruction
// to the Jacobi identity.
ObstructionPair obstruction0(const MetricConnection& nabla, const SMat& rho,
                             const std::optional<EThreeForm>& bform, const ESection& e1,
                             const ESection& e2, const ESection& e3);

// Structure on E + C with metric gE + g0, anchor rho + 0, and
// [e,c] = nabla_{rho e} c, [c1,c2] = -gamma0(c1,c2).  The Jacobi identity
// survives exactly when nablaC is flat; flatness is reported by is_flat, not
// enforced here.
CourantStructure whitney_sum(const CourantStructure& s, const MetricConnection& nablaC);

// Product foliation of the chart: a split of the coordinates into leafwise
// and transverse ones.
struct Foliation {
    std::vector<int> leaf;
    std::vector<int> transverse;
};

// Connection with nabla_X e = 0 for leafwise X and frame sections e;
// transverse part is the default metric connection.  Requires gE constant
// along the leaves.
MetricConnection adapted_connection(const PseudoEuclideanBundle& b, const Foliation& fol);

struct FoliatedBracket {
    CourantStructure structure;
    // anchor_condition: rho(beta(e1,e2)) = -[rho e1, rho e2];
    // cyclic_condition: cyclic-sum of beta(beta(e1,e2),e3) equals the
    // cyclic-sum of [beta(e1,e2),e3]_0.  Both on frame sections; the bracket
    // is Courant exactly when both hold.
    Report conditions;
};

// Bracket [e1,e2]_0 - beta(e1,e2) for the adapted connection of a leafwise
// anchor; [.,.]_0 vanishes on frame sections.
FoliatedBracket foliated_bracket(const PseudoEuclideanBundle& b, const Foliation& fol,
                                 const SMat& rho, const EThreeForm& bform);

}  // namespace ca
