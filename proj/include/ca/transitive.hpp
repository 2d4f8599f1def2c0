#pragma once

#include <optional>
#include <vector>

#include "ca/connection.hpp"

namespace ca {

// Splitting of a bundle with surjective anchor: E = (Q + im partial) + C with
// Q isotropic, C the g-orthogonal complement of P = Q + im partial, and
// sigma a right inverse of the anchor with image Q.
struct TransitiveData {
    PseudoEuclideanBundle bundle;
    SMat rho;
    SMat Q;      // r x n column basis, isotropic, complementary to ker rho
    SMat D;      // r x n column basis of im partial (the partials of coordinates)
    SMat C;      // r x (r - 2n) column basis of the orthogonal complement of P
    SMat sigma;  // r x n, rho * sigma = identity
    SMat pK, pQ, pP, pD, pC;  // projectors onto ker rho, Q, P, im partial, C

    int n() const { return static_cast<int>(rho.rows()); }
    int r() const { return bundle.rank(); }
    int c_rank() const { return r() - 2 * n(); }
};

// Deterministic construction of the splitting, given the frame order.
TransitiveData decompose(const PseudoEuclideanBundle& b, const SMat& rho);

// Metric connection preserving Q, im partial and C, with the im-partial block
// determined from the Q block by the duality of the neutral pairing.
struct SuitableConnection {
    MetricConnection nabla;  // in the bundle frame
    // blocks in the adapted frame (Q | D | C), one matrix per coordinate
    std::vector<SMat> gamma_q, gamma_d, gamma_c;
};

// nabla_q defaults to zero in the Q frame; nabla_c defaults to the metric
// connection of the induced C metric (and must be metric for it if given).
SuitableConnection suitable_connection(
    const TransitiveData& t, const std::optional<std::vector<SMat>>& nabla_q = std::nullopt,
    const std::optional<std::vector<SMat>>& nabla_c = std::nullopt);

// Linear connection on the base induced by the Q block: D_X Y = rho(nabla_X sigma Y).
VectorField induced_connection(const TransitiveData& t, const SuitableConnection& sc,
                               const VectorField& x, const VectorField& y);

// B1(e1,e2,e3) = cyclic-sum g(sigma(T(e1,e2)), p_D e3); compensates the
// rho-torsion of a suitable connection.
EThreeForm b1_form(const TransitiveData& t, const SuitableConnection& sc);

// The bracket [.,.]_1 built from B1; Courant exactly when nabla is flat.
CourantStructure bracket1(const TransitiveData& t, const SuitableConnection& sc);

// Checks rho o lambda = 0 and lambda(e, partial f) = 0; throws InvalidLambda.
void require_lambda(const TransitiveData& t, const EThreeForm& lam);

// [.,.]_1 + lambda(.,.).
CourantStructure general_bracket(const TransitiveData& t, const SuitableConnection& sc,
                                 const EThreeForm& lam);

// The bracket cocycle operator of Lambda: partial(Lambda(e1,e2,e3)) minus the
// cyclic sum of lambda(lambda(e1,e2),e3) + lambda([e1,e2],e3) + [lambda(e1,e2),e3].
ESection cocycle_operator(const CourantStructure& s, const EThreeForm& lam, const ESection& e1,
                          const ESection& e2, const ESection& e3);

// Residuals of the four components of the cocycle condition, evaluated on
// Q-sections sigma(x_i) and C-sections with coefficients c_i.  Components
// involving C are absent when C = 0.  The bracket [q, gamma(c1,c2)] inside
// the mixed component is read as a [.,.]_1 bracket; `note` records that
// reading.
struct ComponentResiduals {
    ESection qqq;
    std::optional<ESection> qqc, qcc, ccc;
    std::string note;
};
ComponentResiduals component_conditions(const TransitiveData& t, const SuitableConnection& sc,
                                        const EThreeForm& lam, const VectorField& x1,
                                        const VectorField& x2, const VectorField& x3,
                                        const SVec& c1, const SVec& c2, const SVec& c3);

// Checks that lambda defines a restricted structure (bracket-closed neutral
// extension of im partial): the value constraints on (c,q), (q,q), (c,c)
// pairs, flatness of the C block, and the three cocycle conditions.  At
// minimal rank (r = 2n) the C conditions are skipped.
Report restricted_check(const TransitiveData& t, const SuitableConnection& sc,
                        const EThreeForm& lam);

}  // namespace ca
