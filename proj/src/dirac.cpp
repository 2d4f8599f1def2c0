#include "ca/dirac.hpp"

#include <utility>
#include <vector>

namespace ca {

namespace {

// One solution x of a x = b; throws ShapeMismatch when the system is
// inconsistent.
QVec solve_exact(const QMat& a, const QVec& b) {
    QMat aug(a.rows(), a.cols() + 1);
    aug.leftCols(a.cols()) = a;
    aug.col(a.cols()) = b;
    auto pivots = rref_in_place(aug);
    QVec x = QVec::Zero(a.cols());
    for (size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == a.cols()) throw ShapeMismatch("inconsistent linear system");
        x(pivots[r]) = aug(static_cast<Eigen::Index>(r), a.cols());
    }
    return x;
}

void require_ambient(const ParaHermitianSpace& w, const Subspace& l) {
    if (l.ambient() != w.dim())
        throw DimensionMismatch("subspace does not live in the given space");
}

void require_spans(const Subspace& l, const QMat& lbasis) {
    if (lbasis.cols() != l.ambient() || lbasis.rows() != l.dim())
        throw DimensionMismatch("given rows do not form a basis of the subspace");
    QMat cr = canonical_rowspace(lbasis);
    if (cr.rows() != l.dim() || !is_zero_matrix(QMat(cr - l.basis)))
        throw DimensionMismatch("given rows do not form a basis of the subspace");
}

void require_complement(const ParaHermitianSpace& w, const Subspace& l, const Subspace& s) {
    require_ambient(w, s);
    if (l.dim() + s.dim() != w.dim()) throw NotComplement();
    QMat stacked(w.dim(), w.dim());
    stacked.topRows(l.dim()) = l.basis;
    stacked.bottomRows(s.dim()) = s.basis;
    if (rank(stacked) != w.dim()) throw NotComplement();
}

// Rows of T turning the skew Gram matrix om into blockdiag(J,...,J,0):
// the first 2m rows pair up (T om T^t on them is the standard J), the
// remaining rows span the kernel.
QMat skew_normal_rows(const QMat& om) {
    Eigen::Index d = om.rows();
    auto pair = [&](const QVec& a, const QVec& b) -> Rq {
        return QMat(a.transpose() * om * b)(0, 0);
    };
    std::vector<QVec> pool;
    for (Eigen::Index i = 0; i < d; ++i) pool.push_back(QVec::Unit(d, i));
    std::vector<QVec> ordered;
    for (;;) {
        Eigen::Index pi = -1, pj = -1;
        for (Eigen::Index i = 0; i + 1 < static_cast<Eigen::Index>(pool.size()) && pi < 0; ++i)
            for (Eigen::Index j = i + 1; j < static_cast<Eigen::Index>(pool.size()); ++j) {
                if (pair(pool[i], pool[j]) != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
            }
        if (pi < 0) break;
        QVec e = pool[pi];
        Rq val = pair(e, pool[pj]);
        QVec f = QVec(pool[pj] / val);
        pool.erase(pool.begin() + pj);
        pool.erase(pool.begin() + pi);
        for (QVec& u : pool) {
            Rq a = pair(u, f);
            Rq b = pair(u, e);
            u = QVec(u - a * e + b * f);
        }
        ordered.push_back(e);
        ordered.push_back(f);
    }
    for (const QVec& u : pool) ordered.push_back(u);
    QMat t(d, d);
    for (Eigen::Index i = 0; i < d; ++i) t.row(i) = ordered[i].transpose();
    return t;
}

}  // namespace

ParaHermitianSpace::ParaHermitianSpace(int n_) : n(n_) {
    if (n < 1) throw DimensionMismatch("a para-Hermitian space needs n >= 1");
    g = QMat::Zero(2 * n, 2 * n);
    F = QMat::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        g(i, n + i) = g(n + i, i) = 1;
        F(i, i) = 1;
        F(n + i, n + i) = -1;
    }
    omega = F * g;
}

Subspace w_plus(const ParaHermitianSpace& w) {
    QMat rows = QMat::Zero(w.n, 2 * w.n);
    for (int i = 0; i < w.n; ++i) rows(i, i) = 1;
    return Subspace(rows);
}

Subspace w_minus(const ParaHermitianSpace& w) {
    QMat rows = QMat::Zero(w.n, 2 * w.n);
    for (int i = 0; i < w.n; ++i) rows(i, w.n + i) = 1;
    return Subspace(rows);
}

DiracCertificate is_dirac(const ParaHermitianSpace& w, const Subspace& l) {
    require_ambient(w, l);
    if (l.dim() != w.n)
        return {false, "dimension " + std::to_string(l.dim()) + " != " + std::to_string(w.n)};
    QMat gram = l.basis * w.g * l.basis.transpose();
    for (int i = 0; i < w.n; ++i)
        for (int j = 0; j < w.n; ++j)
            if (gram(i, j) != 0)
                return {false, "g(l_" + std::to_string(i + 1) + ", l_" + std::to_string(j + 1) +
                                   ") != 0"};
    return {true, ""};
}

QMat conjugated_basis(const ParaHermitianSpace& w, const Subspace& l, const Subspace& s,
                      const QMat& lbasis) {
    require_ambient(w, l);
    require_spans(l, lbasis);
    require_complement(w, l, s);
    QMat m = lbasis * w.g * s.basis.transpose();  // n x n, nondegenerate pairing
    return exact_inverse(QMat(m.transpose())) * s.basis;
}

Subspace isotropic_complement(const ParaHermitianSpace& w, const Subspace& l,
                              const Subspace& s, const QMat& lbasis) {
    QMat srows = conjugated_basis(w, l, s, lbasis);
    QMat gram = srows * w.g * srows.transpose();  // symmetric
    QMat u = srows - (gram / Rq(2)) * lbasis;
    return Subspace(u);
}

QMat complement_offset(const ParaHermitianSpace& w, const Subspace& l, const Subspace& lp,
                       const Subspace& lpp, const QMat& lbasis) {
    if (!is_dirac(w, l).ok || !is_dirac(w, lp).ok || !is_dirac(w, lpp).ok) throw NotDirac();
    QMat u = conjugated_basis(w, l, lp, lbasis);
    QMat v = conjugated_basis(w, l, lpp, lbasis);
    // theta_ij = g(v_i - u_i, u_j), since g(l_k, u_j) = delta_kj
    return (v - u) * w.g * u.transpose();
}

DiracInvariants invariants(const ParaHermitianSpace& w, const Subspace& l) {
    if (!is_dirac(w, l).ok) throw NotDirac();
    DiracInvariants out;
    QMat minus_cap = rowspace_intersection(l.basis, w_minus(w).basis);
    QMat plus_cap = rowspace_intersection(l.basis, w_plus(w).basis);
    out.k = static_cast<int>(minus_cap.rows());
    out.h = static_cast<int>(plus_cap.rows());
    QMat om = l.basis * w.omega * l.basis.transpose();
    out.r = rank(om);
    if (out.k + out.h != w.n - out.r) throw Error("invariant identity k + h = n - r failed");

    QMat ker = kernel_basis(om);  // coordinates in the rows of l.basis
    out.kernel = Subspace(QMat(ker.transpose() * l.basis));
    QMat direct(out.k + out.h, 2 * w.n);
    direct.topRows(out.h) = plus_cap;
    direct.bottomRows(out.k) = minus_cap;
    Subspace via_cap = Subspace(rowspace_intersection(l.basis, QMat(l.basis * w.F)));
    if (out.kernel != Subspace(direct) || out.kernel != via_cap)
        throw Error("kernel characterizations of omega|_L disagree");
    return out;
}

GraphData graph_data(const ParaHermitianSpace& w, const Subspace& l, Side side) {
    if (!is_dirac(w, l).ok) throw NotDirac();
    QMat proj =
        (QMat::Identity(2 * w.n, 2 * w.n) + (side == Side::Plus ? w.F : QMat(-w.F))) / Rq(2);
    QMat other = QMat::Identity(2 * w.n, 2 * w.n) - proj;
    GraphData out;
    out.part = Subspace(QMat(l.basis * proj));
    int d = out.part.dim();
    // a representative x_j in L of each canonical row of the projection
    QMat reps(d, 2 * w.n);
    QMat projected = l.basis * proj;  // n x 2n
    for (int j = 0; j < d; ++j) {
        QVec coeff = solve_exact(QMat(projected.transpose()), QVec(out.part.basis.row(j)));
        reps.row(j) = coeff.transpose() * l.basis;
    }
    // form(u_i, u_j) = g(F_{-side} x_i, u_j); well defined since the other
    // projection of L lies in the kernel
    out.form = reps * other * w.g * out.part.basis.transpose();
    return out;
}

Subspace reconstruct(const ParaHermitianSpace& w, const Subspace& lplus,
                     const QMat& omega_plus) {
    require_ambient(w, lplus);
    for (int i = 0; i < lplus.dim(); ++i)
        for (int j = 0; j < w.n; ++j)
            if (lplus.basis(i, w.n + j) != 0) throw NotInWPlus();
    int d = lplus.dim();
    if (omega_plus.rows() != d || omega_plus.cols() != d ||
        !is_zero_matrix(QMat(omega_plus + omega_plus.transpose())))
        throw DimensionMismatch("the form must be skew of the size of the subspace");
    QMat u = lplus.basis.leftCols(w.n);  // d x n, full row rank

    // unknowns (beta, gamma, t): x = beta + gamma with beta in W_+,
    // beta = u^t t, and gamma paired against each row by omega_plus
    QMat sys = QMat::Zero(w.n + d, 2 * w.n + d);
    sys.block(0, 0, w.n, w.n) = QMat::Identity(w.n, w.n);
    sys.block(0, 2 * w.n, w.n, d) = -u.transpose();
    sys.block(w.n, w.n, d, w.n) = u;
    sys.block(w.n, 2 * w.n, d, d) = -omega_plus.transpose();
    QMat ker = kernel_basis(sys);
    QMat rows(ker.cols(), 2 * w.n);
    for (Eigen::Index c = 0; c < ker.cols(); ++c)
        rows.row(c) = ker.col(c).head(2 * w.n).transpose();
    Subspace out(rows);
    if (!is_dirac(w, out).ok) throw Error("reconstructed subspace is not Dirac");
    return out;
}

QMat ph_transport(const ParaHermitianSpace& w, const Subspace& l, const Subspace& lp) {
    if (!(invariants(w, l) == invariants(w, lp))) throw InvariantMismatch();
    GraphData ga = graph_data(w, l, Side::Plus);
    GraphData gb = graph_data(w, lp, Side::Plus);
    int d = ga.part.dim();

    // bases of the + parts adapted to the skew normal form of the graph form
    QMat ra = skew_normal_rows(ga.form) * ga.part.basis.leftCols(w.n);
    QMat rb = skew_normal_rows(gb.form) * gb.part.basis.leftCols(w.n);
    auto complete = [&](const QMat& r) {
        QMat full(w.n, w.n);
        full.topRows(d) = r;
        int have = d;
        for (int i = 0; i < w.n && have < w.n; ++i) {
            full.row(have) = QVec::Unit(w.n, i).transpose();
            if (rank(QMat(full.topRows(have + 1))) == have + 1) ++have;
        }
        return full;
    };
    QMat ma = complete(ra), mb = complete(rb);
    QMat a = mb.transpose() * exact_inverse(QMat(ma.transpose()));
    QMat psi = QMat::Zero(2 * w.n, 2 * w.n);
    psi.topLeftCorner(w.n, w.n) = a;
    psi.bottomRightCorner(w.n, w.n) = exact_inverse(QMat(a.transpose()));
    if (Subspace(QMat(l.basis * psi.transpose())) != lp)
        throw Error("transport did not map the subspace as required");
    return psi;
}

}  // namespace ca
