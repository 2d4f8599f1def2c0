#pragma once

#include <string>

#include "ca/matrix.hpp"

namespace ca {

// Standard para-Hermitian model on dimension 2n with adapted basis
// (b_1..b_n, c_1..c_n): g(b_i,c_j) = delta_ij, g(b,b) = g(c,c) = 0,
// F = +1 on span(b), -1 on span(c), omega(x,y) = g(Fx,y).
struct ParaHermitianSpace {
    int n = 0;
    QMat g, F, omega;  // 2n x 2n

    explicit ParaHermitianSpace(int n_);
    int dim() const { return 2 * n; }
};

// A subspace of Q^{2n}, stored as a canonical (RREF) row basis; two
// subspaces are equal iff their canonical bases are equal entrywise.
struct Subspace {
    QMat basis;  // dim() x ambient(), full row rank, reduced row echelon form

    Subspace() : basis(0, 0) {}
    explicit Subspace(const QMat& rows) : basis(canonical_rowspace(rows)) {}

    int dim() const { return static_cast<int>(basis.rows()); }
    int ambient() const { return static_cast<int>(basis.cols()); }
    bool contains(const QVec& v) const {
        return in_rowspace(basis, QMat(v.transpose()));
    }
    bool operator==(const Subspace& o) const {
        return basis.rows() == o.basis.rows() && basis.cols() == o.basis.cols() &&
               is_zero_matrix(QMat(basis - o.basis));
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }
};

Subspace w_plus(const ParaHermitianSpace& w);
Subspace w_minus(const ParaHermitianSpace& w);

// is_dirac: true iff dim L = n and the g-Gram matrix of L vanishes;
// `reason` names the offending dimension or basis pair otherwise.
struct DiracCertificate {
    bool ok = false;
    std::string reason;
};
DiracCertificate is_dirac(const ParaHermitianSpace& w, const Subspace& l);

// Unique basis (s_1..s_n) of the complement S with g(l_i, s_j) = delta_ij,
// returned as rows.  lbasis rows must span the Dirac subspace L.
QMat conjugated_basis(const ParaHermitianSpace& w, const Subspace& l, const Subspace& s,
                      const QMat& lbasis);

// The Dirac complement u_i = s_i + tau_i^k l_k obtained from the conjugated
// basis of S by the unique symmetric correction tau killing the Gram matrix.
Subspace isotropic_complement(const ParaHermitianSpace& w, const Subspace& l,
                              const Subspace& s, const QMat& lbasis);

// The unique skew matrix theta with v_i = u_i + theta_i^j l_j, where (u_i)
// and (v_i) are the conjugated bases of lbasis in the Dirac complements
// lp and lpp of L.
QMat complement_offset(const ParaHermitianSpace& w, const Subspace& l, const Subspace& lp,
                       const Subspace& lpp, const QMat& lbasis);

// k = dim(W_- cap L), h = dim(W_+ cap L), r = rank(omega|_L); k + h = n - r.
// `kernel` is ker(omega|_L), computed and cross-checked against both closed
// forms (W_+ cap L) + (W_- cap L) and L cap F(L).
struct DiracInvariants {
    int k = 0, h = 0, r = 0;
    Subspace kernel;
    bool operator==(const DiracInvariants& o) const {
        return k == o.k && h == o.h && r == o.r;
    }
};
DiracInvariants invariants(const ParaHermitianSpace& w, const Subspace& l);

enum class Side { Plus, Minus };

// L_side = im(F_side|_L) inside W_side, together with the induced skew form
// in the canonical row basis of `part`: for the + side,
// omega_plus(F_+x, F_+y) = g(F_-x, F_+y) for x, y in L (and symmetrically
// for the - side); this is the pairing appearing in the reconstruction of L.
struct GraphData {
    Subspace part;   // contained in W_side
    QMat form;       // dim(part) x dim(part), skew, in the rows of part.basis
};
GraphData graph_data(const ParaHermitianSpace& w, const Subspace& l, Side side);

// L = {x : F_+x in L_+, g(F_-x, u) = omega_plus(F_+x, u) for all u in L_+};
// always Dirac, and graph_data(L, +) returns (lplus, omega_plus) back.
Subspace reconstruct(const ParaHermitianSpace& w, const Subspace& lplus,
                     const QMat& omega_plus);

// A para-Hermitian transformation psi = diag(A, A^{-t}) with psi(L) = L';
// requires invariants(L) = invariants(L').
QMat ph_transport(const ParaHermitianSpace& w, const Subspace& l, const Subspace& lp);

}  // namespace ca
