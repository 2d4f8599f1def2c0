#include "ca/transitive.hpp"

namespace ca {

namespace {

Scalar half() { return Scalar(Rat(1, 2)); }

SMat dmat(const SMat& m, int var) {
    SMat out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).derivative(var);
    return out;
}

ESection unit_section(int rank, int a) {
    ESection e = ESection::Zero(rank);
    e(a) = Scalar(1);
    return e;
}

// Greedy deterministic choice of `want` independent columns of m.
SMat select_independent_columns(const SMat& m, int want) {
    SMat out(m.rows(), want);
    int got = 0, current_rank = 0;
    for (Eigen::Index j = 0; j < m.cols() && got < want; ++j) {
        SMat trial(m.rows(), got + 1);
        if (got > 0) trial.leftCols(got) = out.leftCols(got);
        trial.col(got) = m.col(j);
        if (rank(SMat(trial.transpose())) == current_rank + 1) {
            out.col(got) = m.col(j);
            ++got;
            ++current_rank;
        }
    }
    if (got != want) throw ShapeMismatch("could not extract an independent column set");
    return out;
}

}  // namespace

TransitiveData decompose(const PseudoEuclideanBundle& b, const SMat& rho) {
    int r = b.rank(), n = b.chart.dim();
    if (rho.rows() != n || rho.cols() != r) throw ShapeMismatch("anchor matrix shape mismatch");
    if (r < 2 * n) throw RankTooSmall();
    if (rank(rho) != n) throw AnchorNotSurjective();
    if (!is_zero_matrix(SMat(rho * b.gE_inv * rho.transpose()))) throw IsotropyFails();

    TransitiveData t;
    t.bundle = b;
    t.rho = rho;

    // im partial: the partials of the coordinate functions.
    t.D = half() * b.gE_inv * rho.transpose();

    // complement of ker rho spanned by the frame sections on the anchor's
    // pivot columns, then isotropized against im partial
    SMat q0 = SMat::Zero(r, n);
    std::vector<int> piv;
    {
        SMat work = rho;
        piv = rref_in_place(work);
    }
    for (int a = 0; a < n; ++a) q0(piv[a], a) = Scalar(1);
    SMat N0 = q0.transpose() * b.gE * t.D;           // neutral pairing, invertible
    SMat G0 = q0.transpose() * b.gE * q0;            // defect of isotropy
    t.Q = q0 - half() * t.D * exact_inverse(N0) * G0;

    t.sigma = t.Q * exact_inverse(SMat(rho * t.Q));

    // C: the part of ker rho that is g-orthogonal to P = Q + im partial
    SMat pb(r, 2 * n);
    pb.leftCols(n) = t.Q;
    pb.rightCols(n) = t.D;
    t.pP = pb * exact_inverse(SMat(pb.transpose() * b.gE * pb)) * pb.transpose() * b.gE;
    SMat id = SMat::Identity(r, r);
    t.pC = id - t.pP;
    if (t.c_rank() > 0) {
        SMat kb = kernel_basis(SMat(rho));
        t.C = select_independent_columns(SMat(t.pC * kb), t.c_rank());
    } else {
        t.C = SMat(r, 0);
    }

    t.pQ = t.sigma * rho;
    t.pK = id - t.pQ;
    t.pD = t.pP - t.pQ;
    return t;
}

SuitableConnection suitable_connection(const TransitiveData& t,
                                       const std::optional<std::vector<SMat>>& nabla_q,
                                       const std::optional<std::vector<SMat>>& nabla_c) {
    int n = t.n(), r = t.r(), rc = t.c_rank();
    const PseudoEuclideanBundle& b = t.bundle;

    SuitableConnection sc;
    sc.gamma_q = nabla_q ? *nabla_q : std::vector<SMat>(n, SMat::Zero(n, n));
    if (static_cast<int>(sc.gamma_q.size()) != n)
        throw InvalidComponentConnection("one Q Christoffel matrix per coordinate is required");
    for (const SMat& m : sc.gamma_q)
        if (m.rows() != n || m.cols() != n)
            throw InvalidComponentConnection("Q Christoffel matrix shape mismatch");

    SMat gc = t.C.transpose() * b.gE * t.C;
    SMat gc_inv = rc > 0 ? exact_inverse(gc) : SMat(0, 0);
    sc.gamma_c.clear();
    for (int i = 0; i < n; ++i) {
        if (nabla_c) {
            const SMat& m = (*nabla_c)[i];
            if (m.rows() != rc || m.cols() != rc)
                throw InvalidComponentConnection("C Christoffel matrix shape mismatch");
            if (rc > 0 &&
                !is_zero_matrix(SMat(dmat(gc, i) - m.transpose() * gc - gc * m)))
                throw InvalidComponentConnection("C connection is not metric for " +
                                                 b.chart.name(i));
            sc.gamma_c.push_back(m);
        } else {
            sc.gamma_c.push_back(rc > 0 ? SMat(half() * gc_inv * dmat(gc, i))
                                        : SMat::Zero(0, 0));
        }
    }
    if (nabla_c && static_cast<int>(nabla_c->size()) != n)
        throw InvalidComponentConnection("one C Christoffel matrix per coordinate is required");

    // the im-partial block is forced by duality with the Q block
    SMat N = t.Q.transpose() * b.gE * t.D;
    SMat N_inv = exact_inverse(N);
    sc.gamma_d.clear();
    for (int i = 0; i < n; ++i)
        sc.gamma_d.push_back(N_inv * (dmat(N, i) - sc.gamma_q[i].transpose() * N));

    // assemble in the bundle frame through the adapted frame (Q | D | C)
    SMat frame(r, r);
    frame.leftCols(n) = t.Q;
    frame.middleCols(n, n) = t.D;
    if (rc > 0) frame.rightCols(rc) = t.C;
    SMat frame_inv = exact_inverse(frame);
    std::vector<SMat> gamma;
    for (int i = 0; i < n; ++i) {
        SMat hat = SMat::Zero(r, r);
        hat.topLeftCorner(n, n) = sc.gamma_q[i];
        hat.block(n, n, n, n) = sc.gamma_d[i];
        if (rc > 0) hat.bottomRightCorner(rc, rc) = sc.gamma_c[i];
        gamma.push_back((frame * hat - dmat(frame, i)) * frame_inv);
    }
    sc.nabla = MetricConnection(b, std::move(gamma));
    return sc;
}

VectorField induced_connection(const TransitiveData& t, const SuitableConnection& sc,
                               const VectorField& x, const VectorField& y) {
    ESection sy = t.sigma * y.comp();
    return VectorField(t.bundle.chart, t.rho * covariant_derivative(sc.nabla, x, sy));
}

EThreeForm b1_form(const TransitiveData& t, const SuitableConnection& sc) {
    int r = t.r();
    EThreeForm out = EThreeForm::zero(r);
    for (int a = 0; a < r; ++a)
        for (int b = a + 1; b < r; ++b)
            for (int c = b + 1; c < r; ++c) {
                int idx[3] = {a, b, c};
                Scalar v(0);
                for (int k = 0; k < 3; ++k) {
                    ESection e1 = unit_section(r, idx[k]);
                    ESection e2 = unit_section(r, idx[(k + 1) % 3]);
                    ESection e3 = unit_section(r, idx[(k + 2) % 3]);
                    VectorField tor = rho_torsion(sc.nabla, t.rho, e1, e2);
                    v += t.bundle.pairing(ESection(t.sigma * tor.comp()), ESection(t.pD * e3));
                }
                out.at({a, b, c}) = v;
            }
    return out;
}

CourantStructure bracket1(const TransitiveData& t, const SuitableConnection& sc) {
    return bracket_with_beta(sc.nabla, t.rho, b1_form(t, sc)).structure;
}

void require_lambda(const TransitiveData& t, const EThreeForm& lam) {
    if (lam.rank() != t.r()) throw InvalidLambda("three-form rank mismatch");
    int r = t.r(), n = t.n();
    for (int a = 0; a < r; ++a)
        for (int b = a + 1; b < r; ++b) {
            ESection val =
                t.bundle.gE_inv * [&] {
                    SVec v(r);
                    for (int c = 0; c < r; ++c)
                        v(c) = lam.value(a, b, c);
                    return v;
                }();
            if (!is_zero_matrix(SMat(t.rho * val)))
                throw InvalidLambda("lambda is not valued in the kernel of the anchor");
            for (int i = 0; i < n; ++i)
                if (!lam(unit_section(r, a), unit_section(r, b), ESection(t.D.col(i))).is_zero())
                    throw InvalidLambda("lambda does not vanish on the image of partial");
        }
}

CourantStructure general_bracket(const TransitiveData& t, const SuitableConnection& sc,
                                 const EThreeForm& lam) {
    require_lambda(t, lam);
    CourantStructure base = bracket1(t, sc);
    auto rule = [base, lam](const ESection& e1, const ESection& e2) -> ESection {
        return base.apply(e1, e2) + lambda_map(base, lam, e1, e2);
    };
    return CourantStructure(base.chart(), base.gE(), base.rho(), Flavor::Skew, rule,
                            base.labels());
}

ESection cocycle_operator(const CourantStructure& s, const EThreeForm& lam, const ESection& e1,
                          const ESection& e2, const ESection& e3) {
    ESection out = partial_operator(s, lam(e1, e2, e3));
    const ESection* args[3] = {&e1, &e2, &e3};
    for (int k = 0; k < 3; ++k) {
        const ESection& a1 = *args[k];
        const ESection& a2 = *args[(k + 1) % 3];
        const ESection& a3 = *args[(k + 2) % 3];
        ESection l12 = lambda_map(s, lam, a1, a2);
        out -= lambda_map(s, lam, l12, a3) + lambda_map(s, lam, s.apply(a1, a2), a3) +
               s.apply(l12, a3);
    }
    return out;
}

namespace {

ESection curvature_on(const MetricConnection& nabla, const VectorField& x, const VectorField& y,
                      const ESection& e) {
    ESection out = ESection::Zero(e.size());
    int n = nabla.chart().dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            out += x[i] * y[j] * (curvature(nabla, i, j) * e);
        }
    return out;
}

}  // namespace

ComponentResiduals component_conditions(const TransitiveData& t, const SuitableConnection& sc,
                                        const EThreeForm& lam, const VectorField& x1,
                                        const VectorField& x2, const VectorField& x3,
                                        const SVec& c1, const SVec& c2, const SVec& c3) {
    require_lambda(t, lam);
    CourantStructure s1 = bracket1(t, sc);
    ESection q1 = t.sigma * x1.comp(), q2 = t.sigma * x2.comp(), q3 = t.sigma * x3.comp();

    ComponentResiduals out;
    out.qqq = cocycle_operator(s1, lam, q1, q2, q3);
    if (t.c_rank() == 0) return out;
    out.note = "mixed component reads the closing bracket against gamma as a [.,.]_1 bracket";

    ESection cs1 = t.C * c1, cs2 = t.C * c2, cs3 = t.C * c3;
    out.qqc = cocycle_operator(s1, lam, q1, q2, cs3) + curvature_on(sc.nabla, x1, x2, cs3);

    ESection g12 = gamma_op(sc.nabla, t.rho, cs1, cs2);
    ESection rhs = partial_operator(s1, t.bundle.pairing(q1, g12)) + s1.apply(q1, g12) -
                   gamma_op(sc.nabla, t.rho, covariant_derivative(sc.nabla, x1, cs1), cs2) -
                   gamma_op(sc.nabla, t.rho, cs1, covariant_derivative(sc.nabla, x1, cs2));
    out.qcc = cocycle_operator(s1, lam, q1, cs1, cs2) - rhs;

    ESection cyc = ESection::Zero(t.r());
    const ESection* cc[3] = {&cs1, &cs2, &cs3};
    for (int k = 0; k < 3; ++k)
        cyc += s1.apply(*cc[k], gamma_op(sc.nabla, t.rho, *cc[(k + 1) % 3], *cc[(k + 2) % 3]));
    out.ccc = cocycle_operator(s1, lam, cs1, cs2, cs3) - cyc;
    return out;
}

Report restricted_check(const TransitiveData& t, const SuitableConnection& sc,
                        const EThreeForm& lam) {
    require_lambda(t, lam);
    CourantStructure s1 = bracket1(t, sc);
    int n = t.n(), rc = t.c_rank();
    Report rep;
    bool minimal = rc == 0;

    auto lmap = [&](const ESection& a, const ESection& b) {
        return lambda_map(s1, lam, a, b);
    };
    auto in_colspace = [](const SMat& cols, const ESection& v) {
        return in_rowspace(SMat(cols.transpose()), SMat(v.transpose()));
    };

    if (!minimal) {
        ReportLine cq{"restricted", "lambda_vanishes_on_cq", true, ""};
        for (int j = 0; j < rc && cq.pass; ++j)
            for (int a = 0; a < n; ++a)
                if (!is_zero_matrix(
                        SMat(lmap(ESection(t.C.col(j)), ESection(t.Q.col(a)))))) {
                    cq.pass = false;
                    cq.witness = "lambda(c, q) != 0";
                    break;
                }
        rep.lines.push_back(cq);
    }

    ReportLine qq{"restricted", "lambda_qq_in_image", true, ""};
    for (int a = 0; a < n && qq.pass; ++a)
        for (int b = a + 1; b < n; ++b)
            if (!in_colspace(t.D, lmap(ESection(t.Q.col(a)), ESection(t.Q.col(b))))) {
                qq.pass = false;
                qq.witness = "lambda(q, q) escapes im partial";
                break;
            }
    rep.lines.push_back(qq);

    if (!minimal) {
        ReportLine cc{"restricted", "lambda_cc_in_c", true, ""};
        for (int a = 0; a < rc && cc.pass; ++a)
            for (int b = a + 1; b < rc; ++b)
                if (!in_colspace(t.C, lmap(ESection(t.C.col(a)), ESection(t.C.col(b))))) {
                    cc.pass = false;
                    cc.witness = "lambda(c, c) escapes C";
                    break;
                }
        rep.lines.push_back(cc);

        ReportLine flat{"restricted", "flat_c_connection", true, ""};
        SMat gc = t.C.transpose() * t.bundle.gE * t.C;
        MetricConnection conn_c(PseudoEuclideanBundle(t.bundle.chart, gc), sc.gamma_c);
        if (!is_flat(conn_c)) {
            flat.pass = false;
            flat.witness = "C block of the connection has curvature";
        }
        rep.lines.push_back(flat);
    }

    ReportLine coc_q{"restricted", "cocycle_q", true, ""};
    for (int a = 0; a < n && coc_q.pass; ++a)
        for (int b = a + 1; b < n && coc_q.pass; ++b)
            for (int c = b + 1; c < n; ++c) {
                ESection qa = t.sigma.col(a), qb = t.sigma.col(b), qc = t.sigma.col(c);
                const ESection* qs[3] = {&qa, &qb, &qc};
                ESection res = partial_operator(s1, lam(qa, qb, qc));
                for (int k = 0; k < 3; ++k) {
                    VectorField r1(t.bundle.chart, SVec(t.rho * *qs[k]));
                    VectorField r2(t.bundle.chart, SVec(t.rho * *qs[(k + 1) % 3]));
                    res -= lmap(ESection(t.sigma * lie_bracket(r1, r2).comp()),
                                *qs[(k + 2) % 3]) -
                           s1.apply(*qs[(k + 2) % 3], lmap(*qs[k], *qs[(k + 1) % 3]));
                }
                if (!is_zero_matrix(res)) {
                    coc_q.pass = false;
                    coc_q.witness = "Q-cocycle defect " + s1.section_str(res);
                    break;
                }
            }
    rep.lines.push_back(coc_q);

    if (!minimal) {
        ReportLine coc_c{"restricted", "cocycle_c", true, ""};
        for (int a = 0; a < rc && coc_c.pass; ++a)
            for (int b = a + 1; b < rc && coc_c.pass; ++b)
                for (int c = b + 1; c < rc; ++c) {
                    ESection ca = t.C.col(a), cb = t.C.col(b), cx = t.C.col(c);
                    const ESection* cs[3] = {&ca, &cb, &cx};
                    ESection res = partial_operator(s1, lam(ca, cb, cx));
                    for (int k = 0; k < 3; ++k)
                        res += gamma_op(sc.nabla, t.rho, lmap(*cs[k], *cs[(k + 1) % 3]),
                                        *cs[(k + 2) % 3]);
                    if (!is_zero_matrix(res)) {
                        coc_c.pass = false;
                        coc_c.witness = "C-cocycle defect " + s1.section_str(res);
                        break;
                    }
                }
        rep.lines.push_back(coc_c);

        ReportLine nl{"restricted", "nabla_lambda", true, ""};
        for (int i = 0; i < n && nl.pass; ++i)
            for (int a = 0; a < rc && nl.pass; ++a)
                for (int b = a + 1; b < rc; ++b) {
                    VectorField x = VectorField::basis(t.bundle.chart, i);
                    ESection ca = t.C.col(a), cb = t.C.col(b);
                    ESection res =
                        covariant_derivative(sc.nabla, x, lmap(ca, cb)) -
                        lmap(covariant_derivative(sc.nabla, x, ca), cb) -
                        lmap(ca, covariant_derivative(sc.nabla, x, cb));
                    if (!is_zero_matrix(res)) {
                        nl.pass = false;
                        nl.witness = "nabla lambda defect " + s1.section_str(res);
                        break;
                    }
                }
        rep.lines.push_back(nl);
    }

    ReportLine verdict{"restricted", "verdict", rep.all_pass(), ""};
    if (!verdict.pass) verdict.witness = "not a restricted Courant structure";
    rep.lines.push_back(verdict);
    return rep;
}

}  // namespace ca
