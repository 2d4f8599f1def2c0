#include "ca/connection.hpp"

namespace ca {

namespace {

SMat dmat(const SMat& m, int var) {
    SMat out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).derivative(var);
    return out;
}

SVec dvec(const SVec& v, int var) {
    SVec out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(i).derivative(var);
    return out;
}

ESection unit_section(int rank, int a) {
    ESection e = ESection::Zero(rank);
    e(a) = Scalar(1);
    return e;
}

Scalar half() { return Scalar(Rat(1, 2)); }

VectorField anchor_of(const Chart& chart, const SMat& rho, const ESection& e) {
    return VectorField(chart, rho * e);
}

}  // namespace

PseudoEuclideanBundle::PseudoEuclideanBundle(Chart chart_, SMat gE_,
                                             std::vector<std::string> labels_)
    : chart(std::move(chart_)), gE(std::move(gE_)), labels(std::move(labels_)) {
    if (gE.rows() != gE.cols()) throw ShapeMismatch("fiber metric must be square");
    if (!is_zero_matrix(SMat(gE - gE.transpose())))
        throw ShapeMismatch("fiber metric must be symmetric");
    gE_inv = exact_inverse(gE);
    if (labels.empty())
        for (int a = 0; a < rank(); ++a) labels.push_back("e" + std::to_string(a + 1));
}

Scalar PseudoEuclideanBundle::pairing(const ESection& e1, const ESection& e2) const {
    if (e1.size() != gE.rows() || e2.size() != gE.rows())
        throw ShapeMismatch("section length does not match the bundle rank");
    return (e1.transpose() * gE * e2)(0, 0);
}

MetricConnection::MetricConnection(PseudoEuclideanBundle bundle, std::vector<SMat> gamma)
    : bundle_(std::move(bundle)), gamma_(std::move(gamma)) {
    int n = bundle_.chart.dim();
    if (static_cast<int>(gamma_.size()) != n)
        throw InvalidComponentConnection("one Christoffel matrix per coordinate is required");
    for (int i = 0; i < n; ++i) {
        if (gamma_[i].rows() != bundle_.gE.rows() || gamma_[i].cols() != bundle_.gE.cols())
            throw InvalidComponentConnection("Christoffel matrix shape mismatch");
        SMat defect = dmat(bundle_.gE, i) - gamma_[i].transpose() * bundle_.gE -
                      bundle_.gE * gamma_[i];
        if (!is_zero_matrix(defect))
            throw InvalidComponentConnection("connection is not metric for " +
                                             bundle_.chart.name(i));
    }
}

MetricConnection default_metric_connection(const PseudoEuclideanBundle& b) {
    std::vector<SMat> gamma;
    for (int i = 0; i < b.chart.dim(); ++i)
        gamma.push_back(half() * b.gE_inv * dmat(b.gE, i));
    return MetricConnection(b, std::move(gamma));
}

ESection covariant_derivative(const MetricConnection& nabla, const VectorField& x,
                              const ESection& e) {
    require_same_chart(nabla.chart(), x.chart());
    if (e.size() != nabla.rank()) throw ShapeMismatch("section length does not match the rank");
    ESection out = ESection::Zero(e.size());
    for (int i = 0; i < nabla.chart().dim(); ++i)
        out += x[i] * (dvec(e, i) + nabla.gamma()[i] * e);
    return out;
}

VectorField rho_torsion(const MetricConnection& nabla, const SMat& rho, const ESection& e1,
                        const ESection& e2) {
    if (rho.cols() != nabla.rank() || rho.rows() != nabla.chart().dim())
        throw ShapeMismatch("anchor matrix shape mismatch");
    const Chart& chart = nabla.chart();
    VectorField x1 = anchor_of(chart, rho, e1), x2 = anchor_of(chart, rho, e2);
    ESection d = covariant_derivative(nabla, x1, e2) - covariant_derivative(nabla, x2, e1);
    return anchor_of(chart, rho, d) - lie_bracket(x1, x2);
}

ESection gamma_op(const MetricConnection& nabla, const SMat& rho, const ESection& e1,
                  const ESection& e2) {
    const PseudoEuclideanBundle& b = nabla.bundle();
    int r = b.rank();
    SVec v(r);
    for (int a = 0; a < r; ++a) {
        VectorField xa = anchor_of(b.chart, rho, unit_section(r, a));
        v(a) = half() * (b.pairing(e1, covariant_derivative(nabla, xa, e2)) -
                         b.pairing(e2, covariant_derivative(nabla, xa, e1)));
    }
    return b.gE_inv * v;
}

CourantStructure bracket0(const MetricConnection& nabla, const SMat& rho) {
    const PseudoEuclideanBundle& b = nabla.bundle();
    auto rule = [nabla, rho](const ESection& e1, const ESection& e2) -> ESection {
        const Chart& chart = nabla.chart();
        VectorField x1 = anchor_of(chart, rho, e1), x2 = anchor_of(chart, rho, e2);
        return covariant_derivative(nabla, x1, e2) - covariant_derivative(nabla, x2, e1) -
               gamma_op(nabla, rho, e1, e2);
    };
    return CourantStructure(b.chart, b.gE, rho, Flavor::Skew, rule, b.labels);
}

ESection beta_of(const PseudoEuclideanBundle& b, const EThreeForm& bform, const ESection& e1,
                 const ESection& e2) {
    int r = b.rank();
    SVec v(r);
    for (int a = 0; a < r; ++a) v(a) = bform(e1, e2, unit_section(r, a));
    return b.gE_inv * v;
}

BetaBracket bracket_with_beta(const MetricConnection& nabla, const SMat& rho,
                              const EThreeForm& bform) {
    const PseudoEuclideanBundle& b = nabla.bundle();
    if (bform.rank() != b.rank()) throw ShapeMismatch("three-form rank mismatch");
    CourantStructure base = bracket0(nabla, rho);
    auto rule = [nabla, rho, bform, base](const ESection& e1, const ESection& e2) -> ESection {
        return base.apply(e1, e2) - beta_of(nabla.bundle(), bform, e1, e2);
    };
    CourantStructure s(b.chart, b.gE, rho, Flavor::Skew, rule, b.labels);

    // The anchor property needs B(e1,e2,partial f) = (1/2) T(e1,e2) f; both
    // sides are function-linear, so frame pairs and coordinate functions
    // decide it.
    ReportLine line{"beta", "matches_torsion", true, ""};
    int r = b.rank(), n = b.chart.dim();
    for (int a = 0; a < r && line.pass; ++a)
        for (int c = a + 1; c < r && line.pass; ++c) {
            ESection ea = unit_section(r, a), ec = unit_section(r, c);
            VectorField t = rho_torsion(nabla, rho, ea, ec);
            for (int i = 0; i < n; ++i) {
                ESection pf = half() * b.gE_inv * rho.transpose().col(i);
                Scalar res = bform(ea, ec, pf) - half() * t[i];
                if (!res.is_zero()) {
                    line.pass = false;
                    line.witness = "B(" + b.labels[a] + "," + b.labels[c] + ",partial " +
                                   b.chart.name(i) + ") defect " + res.str(b.chart.names());
                    break;
                }
            }
        }
    return BetaBracket{std::move(s), std::move(line)};
}

SMat curvature(const MetricConnection& nabla, int i, int j) {
    const std::vector<SMat>& g = nabla.gamma();
    return dmat(g[j], i) - dmat(g[i], j) + g[i] * g[j] - g[j] * g[i];
}

bool is_flat(const MetricConnection& nabla) {
    for (int i = 0; i < nabla.chart().dim(); ++i)
        for (int j = i + 1; j < nabla.chart().dim(); ++j)
            if (!is_zero_matrix(curvature(nabla, i, j))) return false;
    return true;
}

namespace {

// R(X,Y) e with tensorial arguments.
ESection curvature_apply(const MetricConnection& nabla, const VectorField& x,
                         const VectorField& y, const ESection& e) {
    ESection out = ESection::Zero(e.size());
    int n = nabla.chart().dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            out += x[i] * y[j] * (curvature(nabla, i, j) * e);
        }
    return out;
}

// (nabla_X gamma)(e1,e2), differentiating gamma as if it were a tensor.
ESection gamma_cov_derivative(const MetricConnection& nabla, const SMat& rho,
                              const VectorField& x, const ESection& e1, const ESection& e2) {
    return covariant_derivative(nabla, x, gamma_op(nabla, rho, e1, e2)) -
           gamma_op(nabla, rho, covariant_derivative(nabla, x, e1), e2) -
           gamma_op(nabla, rho, e1, covariant_derivative(nabla, x, e2));
}

}  // namespace

ObstructionPair obstruction0(const MetricConnection& nabla, const SMat& rho,
                             const std::optional<EThreeForm>& bform, const ESection& e1,
                             const ESection& e2, const ESection& e3) {
    const PseudoEuclideanBundle& b = nabla.bundle();
    const Chart& chart = b.chart;
    int r = b.rank();
    CourantStructure base = bracket0(nabla, rho);
    auto full = [&](const ESection& a, const ESection& c) -> ESection {
        ESection out = base.apply(a, c);
        if (bform) out -= beta_of(b, *bform, a, c);
        return out;
    };

    // The decomposition below is only valid when the bracket has the anchor
    // property; isotropy plus the frame residuals decide that exactly.
    if (!base.anchor_isotropic()) throw PropertyIFails("anchor is not isotropic");
    for (int a = 0; a < r; ++a)
        for (int c = a + 1; c < r; ++c) {
            ESection ea = unit_section(r, a), ec = unit_section(r, c);
            VectorField defect =
                anchor_of(chart, rho, full(ea, ec)) -
                lie_bracket(anchor_of(chart, rho, ea), anchor_of(chart, rho, ec));
            if (!defect.is_zero())
                throw PropertyIFails("anchor mismatch on (" + b.labels[a] + "," +
                                     b.labels[c] + "): " + defect.str());
        }

    // Both defects are tensors, while the summands below are not: the
    // formulas are evaluated on frame triples and extended trilinearly.
    auto cyclic_on_frames = [&](int fa, int fb, int fc) -> std::pair<ESection, ESection> {
        int idx[3] = {fa, fb, fc};
        ESection out = ESection::Zero(r), extra = ESection::Zero(r);
        for (int k = 0; k < 3; ++k) {
            ESection a1 = unit_section(r, idx[k]);
            ESection a2 = unit_section(r, idx[(k + 1) % 3]);
            ESection a3 = unit_section(r, idx[(k + 2) % 3]);
            VectorField x1 = anchor_of(chart, rho, a1), x2 = anchor_of(chart, rho, a2),
                        x3 = anchor_of(chart, rho, a3);
            out += gamma_cov_derivative(nabla, rho, x3, a1, a2) +
                   gamma_op(nabla, rho, gamma_op(nabla, rho, a1, a2), a3) -
                   curvature_apply(nabla, x1, x2, a3);
            if (bform) {
                ESection b12 = beta_of(b, *bform, a1, a2);
                extra += beta_of(b, *bform, b12, a3) -
                         beta_of(b, *bform, base.apply(a1, a2), a3) - base.apply(b12, a3);
            }
        }
        return {out, extra};
    };

    ESection c0 = ESection::Zero(r), cfull = ESection::Zero(r);
    for (int fa = 0; fa < r; ++fa)
        for (int fb = 0; fb < r; ++fb)
            for (int fc = 0; fc < r; ++fc) {
                Scalar weight = e1(fa) * e2(fb) * e3(fc);
                if (weight.is_zero()) continue;
                auto [base0, extra] = cyclic_on_frames(fa, fb, fc);
                c0 += weight * base0;
                cfull += weight * (base0 + extra);
            }
    return ObstructionPair{c0, cfull};
}

CourantStructure whitney_sum(const CourantStructure& s, const MetricConnection& nablaC) {
    require_same_chart(s.chart(), nablaC.chart());
    const PseudoEuclideanBundle& cb = nablaC.bundle();
    int r = s.rank(), rc = cb.rank(), n = s.chart().dim();
    SMat gE = SMat::Zero(r + rc, r + rc);
    gE.topLeftCorner(r, r) = s.gE();
    gE.bottomRightCorner(rc, rc) = cb.gE;
    SMat rho = SMat::Zero(n, r + rc);
    rho.leftCols(r) = s.rho();
    std::vector<std::string> labels = s.labels();
    for (const std::string& l : cb.labels) labels.push_back(l);

    SMat gE_inv_s = s.gE_inv();
    SMat rho_s = s.rho();
    auto rule = [s, nablaC, gE_inv_s, rho_s, r, rc](const ESection& a1,
                                                   const ESection& a2) -> ESection {
        const Chart& chart = s.chart();
        ESection e1 = a1.head(r), e2 = a2.head(r);
        ESection c1 = a1.tail(rc), c2 = a2.tail(rc);
        VectorField x1 = anchor_of(chart, rho_s, e1), x2 = anchor_of(chart, rho_s, e2);
        // gamma0 through the E-metric; its values pair to zero with every
        // partial f, so the anchor kills them.
        SVec v(r);
        for (int a = 0; a < r; ++a) {
            VectorField xa = anchor_of(chart, rho_s, unit_section(r, a));
            v(a) = half() * (nablaC.bundle().pairing(c1, covariant_derivative(nablaC, xa, c2)) -
                             nablaC.bundle().pairing(c2, covariant_derivative(nablaC, xa, c1)));
        }
        ESection gamma0 = gE_inv_s * v;
        ESection out(r + rc);
        out.head(r) = s.apply(e1, e2) - gamma0;
        out.tail(rc) =
            covariant_derivative(nablaC, x1, c2) - covariant_derivative(nablaC, x2, c1);
        return out;
    };
    return CourantStructure(s.chart(), gE, rho, Flavor::Skew, rule, labels);
}

namespace {

void require_partition(const Chart& chart, const Foliation& fol) {
    std::vector<int> seen(chart.dim(), 0);
    for (int i : fol.leaf) {
        if (i < 0 || i >= chart.dim()) throw IndexOutOfRange("foliation index");
        ++seen[i];
    }
    for (int i : fol.transverse) {
        if (i < 0 || i >= chart.dim()) throw IndexOutOfRange("foliation index");
        ++seen[i];
    }
    for (int c : seen)
        if (c != 1) throw ShapeMismatch("foliation must split the coordinates");
}

}  // namespace

MetricConnection adapted_connection(const PseudoEuclideanBundle& b, const Foliation& fol) {
    require_partition(b.chart, fol);
    for (int i : fol.leaf)
        if (!is_zero_matrix(dmat(b.gE, i)))
            throw NotFoliatedMetric("fiber metric varies along " + b.chart.name(i));
    std::vector<SMat> gamma(b.chart.dim(), SMat::Zero(b.rank(), b.rank()));
    for (int i : fol.transverse) gamma[i] = half() * b.gE_inv * dmat(b.gE, i);
    return MetricConnection(b, std::move(gamma));
}

FoliatedBracket foliated_bracket(const PseudoEuclideanBundle& b, const Foliation& fol,
                                 const SMat& rho, const EThreeForm& bform) {
    require_partition(b.chart, fol);
    if (rho.rows() != b.chart.dim() || rho.cols() != b.rank())
        throw ShapeMismatch("anchor matrix shape mismatch");
    for (int i : fol.transverse)
        for (int a = 0; a < b.rank(); ++a)
            if (!rho(i, a).is_zero())
                throw AnchorNotLeafwise("anchor has a component along " + b.chart.name(i));
    {
        SMat leaf_rows(static_cast<int>(fol.leaf.size()), b.rank());
        for (size_t k = 0; k < fol.leaf.size(); ++k) leaf_rows.row(k) = rho.row(fol.leaf[k]);
        if (rank(leaf_rows) != static_cast<int>(fol.leaf.size()))
            throw AnchorNotLeafwise("anchor is not onto the leaf directions");
    }

    MetricConnection nabla = adapted_connection(b, fol);
    BetaBracket bb = bracket_with_beta(nabla, rho, bform);
    CourantStructure base = bracket0(nabla, rho);

    Report rep;
    int r = b.rank();
    ReportLine l1{"foliated", "anchor_condition", true, ""};
    for (int a = 0; a < r && l1.pass; ++a)
        for (int c = a + 1; c < r; ++c) {
            ESection ea = unit_section(r, a), ec = unit_section(r, c);
            VectorField res = anchor_of(b.chart, rho, beta_of(b, bform, ea, ec)) +
                              lie_bracket(anchor_of(b.chart, rho, ea),
                                          anchor_of(b.chart, rho, ec));
            if (!res.is_zero()) {
                l1.pass = false;
                l1.witness = "rho beta(" + b.labels[a] + "," + b.labels[c] + ") + [rho " +
                             b.labels[a] + ", rho " + b.labels[c] + "] = " + res.str();
                break;
            }
        }
    rep.lines.push_back(l1);

    ReportLine l2{"foliated", "cyclic_condition", true, ""};
    for (int a = 0; a < r && l2.pass; ++a)
        for (int c = a + 1; c < r && l2.pass; ++c)
            for (int d = c + 1; d < r; ++d) {
                ESection u[3] = {unit_section(r, a), unit_section(r, c), unit_section(r, d)};
                ESection res = ESection::Zero(r);
                for (int k = 0; k < 3; ++k) {
                    ESection bk = beta_of(b, bform, u[k], u[(k + 1) % 3]);
                    res += beta_of(b, bform, bk, u[(k + 2) % 3]) - base.apply(bk, u[(k + 2) % 3]);
                }
                if (!is_zero_matrix(res)) {
                    l2.pass = false;
                    l2.witness = "cyclic defect on (" + b.labels[a] + "," + b.labels[c] + "," +
                                 b.labels[d] + ")";
                    break;
                }
            }
    rep.lines.push_back(l2);

    return FoliatedBracket{std::move(bb.structure), std::move(rep)};
}

}  // namespace ca
