// Acceptance suite: one pass/fail line per criterion, exact zero tolerance.
#include <chrono>
#include <iostream>
#include <string>

#include "ca/dirac.hpp"
#include "ca/generalized.hpp"
#include "ca/random.hpp"
#include "ca/transitive.hpp"

using namespace ca;

namespace {

int failures = 0;

void report(int num, const std::string& what, bool ok) {
    std::cout << "criterion " << num << " (" << what << "): " << (ok ? "PASS" : "FAIL")
              << std::endl;
    if (!ok) ++failures;
}

Chart chart_of(int n) {
    std::vector<std::string> names = {"x", "y", "z", "w"};
    names.resize(n);
    return Chart(names);
}

Scalar coord(const Chart& c, int i) { return Scalar::variable(i, c.dim()); }

bool section_zero(const ESection& e) {
    for (int i = 0; i < e.size(); ++i)
        if (!e(i).is_zero()) return false;
    return true;
}

const ReportLine* line_of(const Report& r, const std::string& suite, const std::string& id) {
    for (const auto& l : r.lines)
        if (l.suite == suite && l.identity == id) return &l;
    return nullptr;
}

bool line_pass(const Report& r, const std::string& suite, const std::string& id) {
    const ReportLine* l = line_of(r, suite, id);
    return l && l->pass;
}

bool suite_pass(const Report& r, const std::string& suite) {
    bool seen = false;
    for (const auto& l : r.lines)
        if (l.suite == suite) {
            seen = true;
            if (!l.pass) return false;
        }
    return seen;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- criteria ----------------------------------------------------------------

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (int n : {2, 3}) {
        CourantStructure s = standard_structure(chart_of(n), Flavor::Product);
        ok = ok && verify(s, Suite::Def11, {1, 2, 10}).all_pass();
        ok = ok && verify(s, Suite::Prop12, {2, 2, 10}).all_pass();
    }
    ok = ok && seconds_since(t0) < 60.0;
    report(1, "Dorfman product axioms, n in {2,3}", ok);
}

void criterion2() {
    bool ok = true;
    for (int n : {2, 3}) {
        CourantStructure s = standard_structure(chart_of(n), Flavor::Skew);
        ok = ok && verify(s, Suite::SkewIToV, {1, 2, 10}).all_pass();
        ok = ok && verify(s, Suite::JacobiIII, {2, 2, 10}).all_pass();
    }
    report(2, "skew bracket axioms with matched iii) right-hand side", ok);
}

void criterion3() {
    Chart c = chart_of(2);
    CourantStructure sp = standard_structure(c, Flavor::Product);
    CourantStructure sk = standard_structure(c, Flavor::Skew);
    Rng rng(7);
    bool ok = true;
    for (int t = 0; t < 50; ++t) {
        ESection e1 = rng.next_section(4, 2, 2), e2 = rng.next_section(4, 2, 2);
        ESection diff = sp.apply(e1, e2) - sk.apply(e1, e2) -
                        partial_operator(sk, sk.pairing(e1, e2));
        ok = ok && section_zero(diff);
    }
    report(3, "dorfman - courant - partial g vanishes on 50 pairs", ok);
}

void criterion4() {
    Chart c3 = chart_of(3);
    DifferentialForm closed(c3, 3);
    closed.at({0, 1, 2}) = Scalar(1);
    bool ok = verify(twisted_structure(c3, closed), Suite::All, {1, 2, 5}).all_pass();

    Chart c4 = chart_of(4);
    DifferentialForm open4(c4, 3);
    open4.at({0, 1, 2}) = coord(c4, 3);  // w dx^dy^dz, not closed
    Report r = verify(twisted_structure(c4, open4), Suite::All, {1, 2, 4});
    ok = ok && !line_pass(r, "jacobi_iii", "iii");
    ok = ok && line_pass(r, "skew_i_v", "i") && line_pass(r, "skew_i_v", "ii") &&
         line_pass(r, "skew_i_v", "iv") && line_pass(r, "skew_i_v", "v");
    ok = ok && suite_pass(r, "prop12");
    ok = ok && line_pass(r, "def11", "axiom1") && line_pass(r, "def11", "axiom2");
    report(4, "twist criterion: d Phi = 0 iff the jacobiator vanishes", ok);
}

void criterion5() {
    bool ok = true;
    // random bundles, n <= 2, r <= 4: suite v always holds for bracket0
    for (std::uint64_t seed : {17u, 18u, 19u}) {
        Chart c = chart_of(2);
        SMat g = SMat::Zero(4, 4);
        g(0, 0) = coord(c, 0) * coord(c, 0) + Scalar(1);
        g(1, 1) = Scalar(1);
        g(2, 2) = Scalar(2);
        g(3, 3) = coord(c, 1) * coord(c, 1) + Scalar(3);
        MetricConnection nabla = default_metric_connection(PseudoEuclideanBundle(c, g));
        Rng rng(seed);
        SMat rho(2, 4);
        for (int i = 0; i < 2; ++i)
            for (int a = 0; a < 4; ++a) rho(i, a) = rng.next_scalar(2, 1);
        Report r = verify(bracket0(nabla, rho), Suite::SkewIToV, {seed, 1, 3});
        ok = ok && line_pass(r, "skew_i_v", "v");
    }
    // zero rho-torsion and isotropic anchor: suite i holds as well
    Chart c1 = chart_of(1);
    SMat gn = SMat::Zero(2, 2);
    gn(0, 1) = gn(1, 0) = Scalar(1);
    SMat rho1 = SMat::Zero(1, 2);
    rho1(0, 0) = Scalar(1);
    MetricConnection flat = default_metric_connection(PseudoEuclideanBundle(c1, gn));
    Report r1 = verify(bracket0(flat, rho1), Suite::SkewIToV, {1, 2, 4});
    ok = ok && line_pass(r1, "skew_i_v", "i") && line_pass(r1, "skew_i_v", "v");
    report(5, "bracket0 satisfies v) always and i) with zero rho-torsion", ok);
}

void criterion6() {
    Chart c = chart_of(2);
    CourantStructure base = standard_structure(c);
    SMat g0 = SMat::Identity(2, 2);
    PseudoEuclideanBundle cb(c, g0, {"c1", "c2"});

    std::vector<SMat> gam(2, SMat::Zero(2, 2));
    gam[1](0, 1) = -coord(c, 0);
    gam[1](1, 0) = coord(c, 0);
    MetricConnection curved(cb, gam);
    CourantStructure w = whitney_sum(base, curved);
    Report r = verify(w, Suite::All, {1, 1, 3});
    bool ok = !suite_pass(r, "jacobi_iii") && suite_pass(r, "skew_i_v");

    // mixed-argument witness is exactly -R(rho e1, rho e2) c
    Rng rng(23);
    SMat rmat = curvature(curved, 0, 1);
    for (int t = 0; t < 3; ++t) {
        ESection a1 = ESection::Zero(6), a2 = ESection::Zero(6), a3 = ESection::Zero(6);
        for (int i = 0; i < 4; ++i) {
            a1(i) = rng.next_scalar(2, 1);
            a2(i) = rng.next_scalar(2, 1);
        }
        a3(4) = rng.next_scalar(2, 1);
        a3(5) = rng.next_scalar(2, 1);
        Obstructions obs = obstructions(w, a1, a2, a3);
        VectorField x1 = w.anchor(a1), x2 = w.anchor(a2);
        ESection expected = ESection::Zero(6);
        expected.tail(2) = -(x1[0] * x2[1] - x1[1] * x2[0]) * (rmat * ESection(a3.tail(2)));
        ok = ok && section_zero(obs.C - expected);
    }

    MetricConnection flat(cb, std::vector<SMat>(2, SMat::Zero(2, 2)));
    ok = ok && verify(whitney_sum(base, flat), Suite::All, {1, 1, 3}).all_pass();
    report(6, "Whitney sum is Courant iff the summand connection is flat", ok);
}

void criterion7() {
    Chart c = chart_of(2);
    CourantStructure s = standard_structure(c);
    PseudoEuclideanBundle b(c, s.gE(), s.labels());
    TransitiveData t = decompose(b, s.rho());
    SuitableConnection sc = suitable_connection(t);
    CourantStructure b1 = bracket1(t, sc);
    Rng rng(29);
    bool ok = b1_form(t, sc).is_zero();
    for (int k = 0; k < 50; ++k) {
        ESection e1 = rng.next_section(4, 2, 2), e2 = rng.next_section(4, 2, 2);
        ok = ok && section_zero(b1.apply(e1, e2) - s.apply(e1, e2));
    }
    report(7, "bracket1 equals the Courant bracket on standard data (50 pairs)", ok);
}

void criterion8() {
    Chart c = chart_of(2);
    bool ok = true;
    for (int which = 0; which < 2; ++which) {
        SMat pm = SMat::Zero(2, 2);
        pm(0, 1) = which == 0 ? Scalar(1) : coord(c, 0);
        pm(1, 0) = -pm(0, 1);
        CourantStructure s = bialgebroid_structure(Bivector(c, pm));
        PseudoEuclideanBundle b(c, s.gE(), s.labels());
        TransitiveData t = decompose(b, s.rho());
        SuitableConnection sc = suitable_connection(t);
        CourantStructure b1 = bracket1(t, sc);
        Rng rng(31 + which);
        for (int k = 0; k < 50; ++k) {
            ESection e1 = rng.next_section(4, 2, 2), e2 = rng.next_section(4, 2, 2);
            ok = ok && section_zero(b1.apply(e1, e2) - s.apply(e1, e2));
        }
    }
    report(8, "bracket1 equals the bialgebroid bracket on Poisson data (50 pairs)", ok);
}

// K-perp under gE has the same column space as im partial.
bool kperp_is_image(const PseudoEuclideanBundle& b, const SMat& rho, const TransitiveData& t) {
    SMat kb = kernel_basis(SMat(rho));
    SMat kperp = kernel_basis(SMat(kb.transpose() * b.gE));
    int n = static_cast<int>(rho.rows());
    if (rank(SMat(kperp)) != n || rank(SMat(t.D)) != n) return false;
    SMat joint(b.rank(), kperp.cols() + t.D.cols());
    joint.leftCols(kperp.cols()) = kperp;
    joint.rightCols(t.D.cols()) = t.D;
    return rank(SMat(joint.transpose())) == n;
}

void criterion9() {
    bool ok = true;
    Chart c = chart_of(2);

    // standard: Q = TM, im partial = T*M, no C factor
    CourantStructure s1 = standard_structure(c);
    PseudoEuclideanBundle b1(c, s1.gE(), s1.labels());
    TransitiveData t1 = decompose(b1, s1.rho());
    ok = ok && t1.c_rank() == 0;
    for (int a = 0; a < 2 && ok; ++a)
        for (int i = 0; i < 4; ++i) {
            ok = ok && t1.Q(i, a) == (i == a ? Scalar(1) : Scalar(0));
            ok = ok && t1.D(i, a) == (i == a + 2 ? Scalar(1) : Scalar(0));
        }
    ok = ok && kperp_is_image(b1, s1.rho(), t1);

    // Poisson anchor: Q = {X + 0}, kernel sections satisfy X + sharp_P a = 0
    SMat pm = SMat::Zero(2, 2);
    pm(0, 1) = coord(c, 0);
    pm(1, 0) = -coord(c, 0);
    CourantStructure s2 = bialgebroid_structure(Bivector(c, pm));
    PseudoEuclideanBundle b2(c, s2.gE(), s2.labels());
    TransitiveData t2 = decompose(b2, s2.rho());
    for (int a = 0; a < 2 && ok; ++a)
        for (int i = 0; i < 4; ++i) ok = ok && t2.Q(i, a) == (i == a ? Scalar(1) : Scalar(0));
    SMat kb = kernel_basis(SMat(s2.rho()));
    ok = ok && kb.cols() == 2;
    for (int j = 0; j < 2 && ok; ++j) {
        SVec xpart = kb.col(j).head(2), apart = kb.col(j).tail(2);
        ok = ok && is_zero_matrix(SMat(xpart + pm.transpose() * apart));
    }
    ok = ok && kperp_is_image(b2, s2.rho(), t2);

    // Riemannian triple: the metric factor splits off as C
    CourantStructure s3 = riemannian_triple(MetricOnTM::identity(c));
    PseudoEuclideanBundle b3(c, s3.gE(), s3.labels());
    TransitiveData t3 = decompose(b3, s3.rho());
    ok = ok && t3.c_rank() == 2;
    for (int a = 0; a < 2 && ok; ++a)
        for (int i = 0; i < 6; ++i) {
            ok = ok && t3.Q(i, a) == (i == a ? Scalar(1) : Scalar(0));
            ok = ok && t3.D(i, a) == (i == a + 2 ? Scalar(1) : Scalar(0));
            ok = ok && t3.C(i, a) == (i == a + 4 ? Scalar(1) : Scalar(0));
        }
    ok = ok && kperp_is_image(b3, s3.rho(), t3);

    report(9, "anchor splittings of the three model examples", ok);
}

Subspace random_dirac(Rng& rng, const ParaHermitianSpace& w) {
    int d = rng.next_int(0, w.n);
    QMat rows = QMat::Zero(std::max(d, 1), 2 * w.n);
    if (d == 0) {
        // L+ = 0: the reconstruction is W- itself
        rows = QMat::Zero(0, 2 * w.n);
    } else {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < w.n; ++j) rows(i, j) = Rq(rng.next_int(-3, 3));
        rows = canonical_rowspace(rows);
        d = static_cast<int>(rows.rows());
    }
    QMat om = QMat::Zero(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            om(i, j) = Rq(rng.next_int(-3, 3));
            om(j, i) = -om(i, j);
        }
    return reconstruct(w, Subspace(rows), om);
}

void criterion10() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    Rng rng(41);
    int samples = 0;
    while (samples < 102) {
        int n = 2 + samples % 3;  // n in {2,3,4}
        ParaHermitianSpace w(n);
        Subspace l = random_dirac(rng, w);
        ++samples;
        ok = ok && is_dirac(w, l).ok;
        DiracInvariants inv = invariants(w, l);
        ok = ok && inv.k + inv.h == n - inv.r;

        // graph_data / reconstruct round trip
        GraphData gd = graph_data(w, l, Side::Plus);
        ok = ok && reconstruct(w, gd.part, gd.form) == l;
        ok = ok && inv.k == n - gd.part.dim();

        // transport between matched pairs preserves the model data
        QMat a = QMat::Identity(n, n);
        a(0, n - 1) = Rq(rng.next_int(-2, 2));
        a(n - 1, 0) = Rq(rng.next_int(0, 1));
        if (rank(QMat(a)) < n) a = QMat::Identity(n, n);
        QMat psi0 = QMat::Zero(2 * n, 2 * n);
        psi0.topLeftCorner(n, n) = a;
        psi0.bottomRightCorner(n, n) = exact_inverse(QMat(a.transpose()));
        Subspace lp(QMat(l.basis * psi0.transpose()));
        QMat psi = ph_transport(w, l, lp);
        ok = ok && is_zero_matrix(QMat(psi.transpose() * w.g * psi - w.g));
        ok = ok && is_zero_matrix(QMat(psi * w.F - w.F * psi));
        ok = ok && Subspace(QMat(l.basis * psi.transpose())) == lp;
    }

    // complement offsets are skew and bijective on sampled theta
    for (int n : {2, 3}) {
        ParaHermitianSpace w(n);
        Subspace l = w_plus(w), lprime = w_minus(w);
        QMat lbasis = l.basis;
        for (int t = 0; t < 5; ++t) {
            QMat theta = QMat::Zero(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    theta(i, j) = Rq(rng.next_int(-3, 3));
                    theta(j, i) = -theta(i, j);
                }
            Subspace lpp(QMat(lprime.basis + theta * lbasis));
            ok = ok && is_dirac(w, lpp).ok;
            QMat back = complement_offset(w, l, lprime, lpp, lbasis);
            ok = ok && is_zero_matrix(QMat(back - theta));
            ok = ok && is_zero_matrix(QMat(back + back.transpose()));
        }
    }
    ok = ok && seconds_since(t0) < 30.0;
    report(10, "Dirac reconstruction, invariants, offsets and transport", ok);
}

void criterion11() {
    Chart c = chart_of(4);
    SMat g = SMat::Zero(4, 4);
    SMat f = SMat::Zero(4, 4);
    for (int i = 0; i < 2; ++i) {
        g(i, i + 2) = g(i + 2, i) = Scalar(1);
        f(i, i) = Scalar(1);
        f(i + 2, i + 2) = Scalar(-1);
    }
    CourantStructure s = paraherm_structure(ParaHermitianTM(MetricOnTM(c, g), EndomorphismField(c, f)));
    // the anchor is the projection on the +1 eigenspace of F
    SMat fplus = (SMat::Identity(4, 4) + f) * Scalar(Rat(1, 2));
    bool ok = is_zero_matrix(SMat(s.rho() - fplus));
    Report r = verify(s, Suite::SkewIToV, {1, 2, 5});
    Report r3 = verify(s, Suite::JacobiIII, {2, 2, 5});
    ok = ok && line_pass(r, "skew_i_v", "i") && line_pass(r, "skew_i_v", "iv") &&
         line_pass(r, "skew_i_v", "v") && line_pass(r3, "jacobi_iii", "iii");
    report(11, "constant para-Hermitian bracket on R^4 with anchor F+", ok);
}

void criterion12() {
    Chart c = chart_of(2);
    MetricOnTM id = MetricOnTM::identity(c);
    Rng rng(43);
    bool ok = true;
    for (int t = 0; t < 20; ++t) {
        SMat pm(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) pm(i, j) = rng.next_scalar(2, 2);
        EndomorphismField phi(c, pm);
        VectorField x = rng.next_vector_field(c, 2), y = rng.next_vector_field(c, 2);
        ok = ok && phi_torsion(phi, id, x, y) == phi_torsion_via_nijenhuis(phi, id, x, y);
    }
    report(12, "phi-torsion identity on 20 random samples", ok);
}

void criterion13() {
    Chart c = chart_of(2);
    SMat g = SMat::Zero(4, 4);
    for (int i = 0; i < 2; ++i) g(i, i + 2) = g(i + 2, i) = Scalar(Rat(1, 2));
    PseudoEuclideanBundle b(c, g);
    Foliation fol{{0}, {1}};
    MetricConnection nabla = adapted_connection(b, fol);
    SMat rho = SMat::Zero(2, 4);
    rho(0, 0) = Scalar(1);
    rho(0, 1) = coord(c, 0);

    bool ok = true;
    // nabla_X e = 0 for leafwise X and projectable (frame) sections e
    Rng rng(47);
    for (int t = 0; t < 5; ++t) {
        VectorField x = Scalar(rng.next_scalar(2, 2)) * VectorField::basis(c, 0);
        for (int a = 0; a < 4; ++a)
            ok = ok && section_zero(covariant_derivative(nabla, x, ESection(ESection::Unit(4, a))));
    }
    // T(e1,e2) = -[rho e1, rho e2] on frame sections
    CourantStructure helper = standard_structure(c);  // only for anchors below
    (void)helper;
    for (int a = 0; a < 4; ++a)
        for (int b2 = a + 1; b2 < 4; ++b2) {
            ESection e1 = ESection::Unit(4, a), e2 = ESection::Unit(4, b2);
            VectorField x1(c, SVec(rho * e1)), x2(c, SVec(rho * e2));
            ok = ok && rho_torsion(nabla, rho, e1, e2) == -lie_bracket(x1, x2);
        }
    // the compensating 3-form makes the two residual conditions vanish
    EThreeForm bf = EThreeForm::zero(4);
    bf.at({0, 1, 2}) = Scalar(Rat(-1, 2));
    FoliatedBracket fb = foliated_bracket(b, fol, rho, bf);
    ok = ok && fb.conditions.all_pass();
    ok = ok && verify(fb.structure, Suite::All, {1, 2, 3}).all_pass();
    report(13, "foliated mode: adapted connection, torsion and residuals", ok);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    criterion12();
    criterion13();
    if (failures != 0) {
        std::cout << failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all 13 criteria passed" << std::endl;
    return 0;
}
