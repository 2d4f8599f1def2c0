#include "ca/generalized.hpp"

namespace ca {

namespace {

DifferentialForm one_form(const Chart& chart, const SVec& comps) {
    std::vector<Scalar> c(comps.data(), comps.data() + comps.size());
    return DifferentialForm(chart, 1, std::move(c));
}

SVec form_comps(const DifferentialForm& a) {
    SVec v(static_cast<int>(a.comp().size()));
    for (int i = 0; i < v.size(); ++i) v(i) = a.comp()[static_cast<size_t>(i)];
    return v;
}

Scalar half() { return Scalar(Rat(1, 2)); }

void require_poisson(const Bivector& p) {
    if (!is_poisson(p).ok) throw NotPoisson();
}

// Phi(X, Y, .) as a 1-form.
DifferentialForm contract2(const DifferentialForm& phi, const VectorField& x,
                           const VectorField& y) {
    return interior_product(y, interior_product(x, phi));
}

}  // namespace

// --- GeneralizedSection ----------------------------------------------------

GeneralizedSection::GeneralizedSection(VectorField x, DifferentialForm alpha)
    : vf(std::move(x)), form(std::move(alpha)) {
    require_same_chart(vf.chart(), form.chart());
    if (form.degree() != 1) throw ShapeMismatch("form part must have degree 1");
}

GeneralizedSection GeneralizedSection::zero(const Chart& chart) {
    return GeneralizedSection(VectorField::zero(chart), DifferentialForm(chart, 1));
}

GeneralizedSection operator+(const GeneralizedSection& a, const GeneralizedSection& b) {
    return GeneralizedSection(a.vf + b.vf, a.form + b.form);
}

GeneralizedSection operator-(const GeneralizedSection& a, const GeneralizedSection& b) {
    return GeneralizedSection(a.vf - b.vf, a.form - b.form);
}

GeneralizedSection operator*(const Scalar& f, const GeneralizedSection& e) {
    return GeneralizedSection(f * e.vf, f * e.form);
}

GeneralizedSection GeneralizedSection::operator-() const {
    return GeneralizedSection(-vf, -form);
}

bool operator==(const GeneralizedSection& a, const GeneralizedSection& b) {
    return a.vf == b.vf && a.form == b.form;
}

ESection GeneralizedSection::to_esection() const {
    int n = chart().dim();
    SVec e(2 * n);
    for (int i = 0; i < n; ++i) {
        e(i) = vf[i];
        e(n + i) = form.comp()[static_cast<size_t>(i)];
    }
    return e;
}

GeneralizedSection GeneralizedSection::from_esection(const Chart& chart, const ESection& e) {
    int n = chart.dim();
    if (e.size() != 2 * n) throw ShapeMismatch("section length must be twice the dimension");
    return GeneralizedSection(VectorField(chart, e.head(n)),
                              one_form(chart, e.tail(n)));
}

// --- pairings and brackets -------------------------------------------------

Scalar pairing(const GeneralizedSection& e1, const GeneralizedSection& e2, PairingKind which) {
    require_same_chart(e1.chart(), e2.chart());
    Scalar bx = e2.form({e1.vf});
    Scalar ay = e1.form({e2.vf});
    return which == PairingKind::G ? half() * (bx + ay) : half() * (bx - ay);
}

GeneralizedSection partial_of(const Chart& chart, const Scalar& f) {
    return GeneralizedSection(VectorField::zero(chart), differential(chart, f));
}

GeneralizedSection courant_bracket(const GeneralizedSection& e1, const GeneralizedSection& e2,
                                   const std::optional<DifferentialForm>& twist) {
    require_same_chart(e1.chart(), e2.chart());
    const Chart& chart = e1.chart();
    DifferentialForm form = lie_derivative(e1.vf, e2.form) - lie_derivative(e2.vf, e1.form) -
                            differential(chart, pairing(e1, e2, PairingKind::Omega));
    if (twist) {
        if (twist->degree() != 3) throw ShapeMismatch("twist must be a 3-form");
        require_same_chart(chart, twist->chart());
        form = form - contract2(*twist, e1.vf, e2.vf);
    }
    return GeneralizedSection(lie_bracket(e1.vf, e2.vf), form);
}

GeneralizedSection dorfman_product(const GeneralizedSection& e1, const GeneralizedSection& e2) {
    require_same_chart(e1.chart(), e2.chart());
    DifferentialForm form =
        lie_derivative(e1.vf, e2.form) - interior_product(e2.vf, exterior_derivative(e1.form));
    return GeneralizedSection(lie_bracket(e1.vf, e2.vf), form);
}

// --- cotangent Lie algebroid of a Poisson bivector -------------------------

DifferentialForm koszul_bracket(const DifferentialForm& a, const DifferentialForm& b,
                                const Bivector& p) {
    require_poisson(p);
    return lie_derivative(sharp(p, a), b) - lie_derivative(sharp(p, b), a) -
           differential(p.chart, p.pairing(a, b));
}

VectorField poisson_differential(const Bivector& p, const Scalar& f) {
    return VectorField(p.chart, p.comp * form_comps(differential(p.chart, f)));
}

Bivector poisson_differential(const Bivector& p, const VectorField& x) {
    require_same_chart(p.chart, x.chart());
    int n = p.chart.dim();
    SMat w(n, n);
    w.setConstant(Scalar(0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            DifferentialForm di = DifferentialForm::basis_one_form(p.chart, i);
            DifferentialForm dj = DifferentialForm::basis_one_form(p.chart, j);
            Scalar v = sharp(p, di).apply(x[j]) - sharp(p, dj).apply(x[i]) -
                       koszul_bracket(di, dj, p)({x});
            w(i, j) = v;
            w(j, i) = -v;
        }
    return Bivector(p.chart, w);
}

VectorField interior_product(const DifferentialForm& a, const Bivector& w) {
    require_same_chart(a.chart(), w.chart);
    return VectorField(w.chart, w.comp.transpose() * form_comps(a));
}

VectorField poisson_lie_derivative(const Bivector& p, const DifferentialForm& a,
                                   const VectorField& x) {
    Scalar ax = a({x});
    return interior_product(a, poisson_differential(p, x)) + poisson_differential(p, ax);
}

GeneralizedSection bialgebroid_bracket(const GeneralizedSection& e1,
                                       const GeneralizedSection& e2, const Bivector& p,
                                       Flavor flavor) {
    require_same_chart(e1.chart(), e2.chart());
    require_same_chart(e1.chart(), p.chart);
    require_poisson(p);
    const Chart& chart = e1.chart();
    const VectorField &a = e1.vf, &b = e2.vf;
    const DifferentialForm &as = e1.form, &bs = e2.form;

    if (flavor == Flavor::Product) {
        VectorField vec = lie_bracket(a, b) + poisson_lie_derivative(p, as, b) -
                          interior_product(bs, poisson_differential(p, a));
        DifferentialForm form = koszul_bracket(as, bs, p) + lie_derivative(a, bs) -
                                interior_product(b, exterior_derivative(as));
        return GeneralizedSection(vec, form);
    }
    Scalar w = pairing(e1, e2, PairingKind::Omega);
    VectorField vec = lie_bracket(a, b) + poisson_lie_derivative(p, as, b) -
                      poisson_lie_derivative(p, bs, a) + poisson_differential(p, w);
    DifferentialForm form = koszul_bracket(as, bs, p) + lie_derivative(a, bs) -
                            lie_derivative(b, as) - differential(chart, w);
    return GeneralizedSection(vec, form);
}

// --- para-Hermitian --------------------------------------------------------

ParaHermitianTM::ParaHermitianTM(MetricOnTM g_, EndomorphismField F_)
    : g(std::move(g_)), F(std::move(F_)) {
    require_same_chart(g.chart, F.chart);
    int n = g.chart.dim();
    SMat id(n, n);
    id.setIdentity();
    if (!is_zero_matrix(SMat(F.comp * F.comp - id)))
        throw InvalidParaHermitian("endomorphism does not square to the identity");
    if (!is_zero_matrix(SMat(F.comp.transpose() * g.g * F.comp + g.g)))
        throw InvalidParaHermitian("metric is not anti-invariant under the endomorphism");
    SMat om = omega();
    if (!is_zero_matrix(SMat(om + om.transpose())))
        throw InvalidParaHermitian("induced 2-form is not skew");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!nijenhuis(F, VectorField::basis(g.chart, i), VectorField::basis(g.chart, j))
                     .is_zero())
                throw InvalidParaHermitian("Nijenhuis tensor does not vanish");
}

SMat ParaHermitianTM::omega() const { return F.comp.transpose() * g.g; }

VectorField ParaHermitianTM::plus(const VectorField& x) const {
    return VectorField(g.chart, half() * (x.comp() + F.comp * x.comp()));
}

VectorField ParaHermitianTM::minus(const VectorField& x) const {
    return VectorField(g.chart, half() * (x.comp() - F.comp * x.comp()));
}

VectorField paraherm_bracket(const VectorField& x, const VectorField& y,
                             const ParaHermitianTM& s) {
    require_same_chart(x.chart(), s.g.chart);
    require_same_chart(y.chart(), s.g.chart);
    VectorField xp = s.plus(x), xm = s.minus(x);
    VectorField yp = s.plus(y), ym = s.minus(y);
    Scalar om = (x.comp().transpose() * s.omega() * y.comp())(0, 0);
    DifferentialForm corr = lie_derivative(xp, flat(s.g, ym)) - lie_derivative(yp, flat(s.g, xm)) -
                            half() * differential(s.g.chart, om);
    // The 1-form acts as a section of the dual of W+, so only its restriction
    // to W+ matters; composing with the projector before the musical map keeps
    // the correction inside W- and the anchor property intact.
    int n = s.g.chart.dim();
    SMat id(n, n);
    id.setIdentity();
    SMat fplus = half() * (id + s.F.comp);
    DifferentialForm restricted = one_form(s.g.chart, fplus.transpose() * form_comps(corr));
    return lie_bracket(xp, yp) + sharp(s.g, restricted);
}

// --- phi-anchored brackets on TM -------------------------------------------

namespace {

// Covariant derivatives of phi per coordinate: D_i = d_i phi + G_i phi - phi G_i.
std::vector<SMat> nabla_phi(const EndomorphismField& phi, const std::vector<SMat>& gamma) {
    int n = phi.chart.dim();
    std::vector<SMat> d;
    for (int i = 0; i < n; ++i) {
        SMat m(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) m(a, b) = phi.comp(a, b).derivative(i);
        d.push_back(SMat(m + gamma[static_cast<size_t>(i)] * phi.comp -
                         phi.comp * gamma[static_cast<size_t>(i)]));
    }
    return d;
}

SMat nabla_phi_along(const std::vector<SMat>& dphi, const VectorField& z) {
    SMat acc = dphi[0];
    acc.setConstant(Scalar(0));
    for (size_t i = 0; i < dphi.size(); ++i) acc += z[static_cast<int>(i)] * dphi[i];
    return acc;
}

}  // namespace

VectorField phi_torsion(const EndomorphismField& phi, const MetricOnTM& g, const VectorField& x,
                        const VectorField& y) {
    require_same_chart(phi.chart, g.chart);
    auto gamma = levi_civita(g);
    auto dphi = nabla_phi(phi, gamma);
    VectorField phix = phi.apply(x), phiy = phi.apply(y);
    return VectorField(g.chart, nabla_phi_along(dphi, phiy) * x.comp() -
                                    nabla_phi_along(dphi, phix) * y.comp());
}

VectorField phi_torsion_via_nijenhuis(const EndomorphismField& phi, const MetricOnTM& g,
                                      const VectorField& x, const VectorField& y) {
    auto gamma = levi_civita(g);
    auto dphi = nabla_phi(phi, gamma);
    return VectorField(g.chart, phi.comp * (nabla_phi_along(dphi, y) * x.comp()) -
                                    phi.comp * (nabla_phi_along(dphi, x) * y.comp())) -
           nijenhuis(phi, x, y);
}

VectorField phi_bracket(const VectorField& x, const VectorField& y, const EndomorphismField& phi,
                        const MetricOnTM& g, const DifferentialForm& b) {
    require_same_chart(x.chart(), g.chart);
    if (b.degree() != 3) throw ShapeMismatch("torsion potential must be a 3-form");
    const Chart& chart = g.chart;
    int n = chart.dim();
    auto gamma = levi_civita(g);

    auto beta = [&](const VectorField& u, const VectorField& v) {
        return sharp(g, contract2(b, u, v));
    };
    // beta must reproduce the phi-torsion through phi; both sides are
    // tensorial, so frame pairs decide the identity.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            VectorField bi = VectorField::basis(chart, i);
            VectorField bj = VectorField::basis(chart, j);
            if (!(phi.apply(beta(bi, bj)) == phi_torsion(phi, g, bi, bj)))
                throw BetaTorsionMismatch();
        }

    auto nab = [&](const VectorField& z, const VectorField& w) {
        return covariant_derivative_tm(gamma, z, w);
    };
    SVec v(n);
    for (int k = 0; k < n; ++k) {
        VectorField phik = phi.apply(VectorField::basis(chart, k));
        v(k) = half() * (g.pairing(x, nab(phik, y)) - g.pairing(nab(phik, x), y));
    }
    VectorField gam(chart, exact_inverse(g.g) * v);
    return nab(phi.apply(x), y) - nab(phi.apply(y), x) - gam - beta(x, y);
}

// --- assembled structures --------------------------------------------------

namespace {

std::vector<std::string> tm_tstarm_labels(const Chart& chart) {
    std::vector<std::string> labels;
    for (const auto& nm : chart.names()) labels.push_back("D" + nm);
    for (const auto& nm : chart.names()) labels.push_back("d" + nm);
    return labels;
}

SMat neutral_ge(int n) {
    SMat gE(2 * n, 2 * n);
    gE.setConstant(Scalar(0));
    for (int i = 0; i < n; ++i) {
        gE(i, n + i) = Scalar(Rat(1, 2));
        gE(n + i, i) = Scalar(Rat(1, 2));
    }
    return gE;
}

SMat projection_rho(int n, int r) {
    SMat rho(n, r);
    rho.setConstant(Scalar(0));
    for (int i = 0; i < n; ++i) rho(i, i) = Scalar(1);
    return rho;
}

}  // namespace

CourantStructure standard_structure(const Chart& chart, Flavor flavor) {
    int n = chart.dim();
    auto rule = [chart, flavor](const ESection& e1, const ESection& e2) -> ESection {
        GeneralizedSection a = GeneralizedSection::from_esection(chart, e1);
        GeneralizedSection b = GeneralizedSection::from_esection(chart, e2);
        GeneralizedSection r =
            flavor == Flavor::Skew ? courant_bracket(a, b) : dorfman_product(a, b);
        return r.to_esection();
    };
    return CourantStructure(chart, neutral_ge(n), projection_rho(n, 2 * n), flavor, rule,
                            tm_tstarm_labels(chart));
}

CourantStructure twisted_structure(const Chart& chart, const DifferentialForm& phi) {
    if (phi.degree() != 3) throw ShapeMismatch("twist must be a 3-form");
    require_same_chart(chart, phi.chart());
    int n = chart.dim();
    auto rule = [chart, phi](const ESection& e1, const ESection& e2) -> ESection {
        return courant_bracket(GeneralizedSection::from_esection(chart, e1),
                               GeneralizedSection::from_esection(chart, e2), phi)
            .to_esection();
    };
    return CourantStructure(chart, neutral_ge(n), projection_rho(n, 2 * n), Flavor::Skew, rule,
                            tm_tstarm_labels(chart));
}

CourantStructure bialgebroid_structure(const Bivector& p, Flavor flavor) {
    require_poisson(p);
    const Chart chart = p.chart;
    int n = chart.dim();
    SMat rho(n, 2 * n);
    rho.setConstant(Scalar(0));
    for (int i = 0; i < n; ++i) rho(i, i) = Scalar(1);
    rho.block(0, n, n, n) = p.comp.transpose();  // sharp_P action on the form part
    Bivector pc = p;
    auto rule = [chart, pc, flavor](const ESection& e1, const ESection& e2) -> ESection {
        return bialgebroid_bracket(GeneralizedSection::from_esection(chart, e1),
                                   GeneralizedSection::from_esection(chart, e2), pc, flavor)
            .to_esection();
    };
    return CourantStructure(chart, neutral_ge(n), rho, flavor, rule, tm_tstarm_labels(chart));
}

CourantStructure paraherm_structure(const ParaHermitianTM& s) {
    const Chart chart = s.g.chart;
    int n = chart.dim();
    SMat id(n, n);
    id.setIdentity();
    SMat rho = half() * (id + s.F.comp);
    ParaHermitianTM sc = s;
    auto rule = [chart, sc](const ESection& e1, const ESection& e2) -> ESection {
        return paraherm_bracket(VectorField(chart, e1), VectorField(chart, e2), sc).comp();
    };
    return CourantStructure(chart, s.g.g, rho, Flavor::Skew, rule, chart.names());
}

CourantStructure riemannian_triple(const MetricOnTM& G,
                                   const std::optional<DifferentialForm>& phi) {
    const Chart chart = G.chart;
    int n = chart.dim();
    if (phi) {
        if (phi->degree() != 3) throw ShapeMismatch("additional term must come from a 3-form");
        require_same_chart(chart, phi->chart());
    }
    SMat gE(3 * n, 3 * n);
    gE.setConstant(Scalar(0));
    gE.block(0, 0, 2 * n, 2 * n) = neutral_ge(n);
    gE.block(2 * n, 2 * n, n, n) = G.g;
    SMat rho = projection_rho(n, 3 * n);

    auto gamma = levi_civita(G);
    MetricOnTM Gc = G;
    auto rule = [chart, Gc, gamma, phi, n](const ESection& s1, const ESection& s2) -> ESection {
        GeneralizedSection e1 = GeneralizedSection::from_esection(chart, s1.head(2 * n));
        GeneralizedSection e2 = GeneralizedSection::from_esection(chart, s2.head(2 * n));
        VectorField y1(chart, s1.tail(n)), y2(chart, s2.tail(n));
        GeneralizedSection base = courant_bracket(e1, e2);

        // xi(Y1,Y2): the 1-form Z -> G(Y1, nabla_Z Y2) - G(nabla_Z Y1, Y2)
        SVec xi(n);
        for (int k = 0; k < n; ++k) {
            VectorField bk = VectorField::basis(chart, k);
            xi(k) = Gc.pairing(y1, covariant_derivative_tm(gamma, bk, y2)) -
                    Gc.pairing(covariant_derivative_tm(gamma, bk, y1), y2);
        }
        DifferentialForm form = base.form;
        std::vector<Scalar> xic(xi.data(), xi.data() + n);
        form = form - DifferentialForm(chart, 1, xic);

        VectorField cpart = covariant_derivative_tm(gamma, e1.vf, y2) -
                            covariant_derivative_tm(gamma, e2.vf, y1);
        if (phi) {
            form = form + Scalar(2) * (contract2(*phi, e1.vf, y2) - contract2(*phi, e2.vf, y1));
            cpart = cpart + sharp(Gc, contract2(*phi, e1.vf, e2.vf));
        }

        SVec out(3 * n);
        out.head(n) = base.vf.comp();
        for (int i = 0; i < n; ++i) out(n + i) = form.comp()[static_cast<size_t>(i)];
        out.tail(n) = cpart.comp();
        return out;
    };

    std::vector<std::string> labels = tm_tstarm_labels(chart);
    for (const auto& nm : chart.names()) labels.push_back("C" + nm);
    return CourantStructure(chart, gE, rho, Flavor::Skew, rule, labels);
}

}  // namespace ca
