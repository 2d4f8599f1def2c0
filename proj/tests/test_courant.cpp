#include "doctest.h"

#include "ca/courant.hpp"
#include "ca/generalized.hpp"
#include "ca/random.hpp"

using namespace ca;

namespace {
Chart xy() { return Chart({"x", "y"}); }
Chart xyzw() { return Chart({"x", "y", "z", "w"}); }

Scalar coord(const Chart& c, int i) { return Scalar::variable(i, c.dim()); }

// Bundle of Lie algebras: zero anchor, identity metric, cross-product rule.
CourantStructure so3_structure(const Chart& c) {
    SMat gE(3, 3);
    gE.setIdentity();
    SMat rho(c.dim(), 3);
    rho.setConstant(Scalar(0));
    auto rule = [](const ESection& a, const ESection& b) -> ESection {
        SVec r(3);
        r(0) = a(1) * b(2) - a(2) * b(1);
        r(1) = a(2) * b(0) - a(0) * b(2);
        r(2) = a(0) * b(1) - a(1) * b(0);
        return r;
    };
    return CourantStructure(c, gE, rho, Flavor::Skew, rule);
}

bool section_zero(const ESection& e) {
    for (int i = 0; i < e.size(); ++i)
        if (!e(i).is_zero()) return false;
    return true;
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
}  // namespace

TEST_CASE("partial operator") {
    Chart c = xy();
    CourantStructure s = standard_structure(c);
    Scalar f = coord(c, 0) * coord(c, 1);
    ESection pf = partial_operator(s, f);
    CHECK(pf(0).is_zero());
    CHECK(pf(1).is_zero());
    CHECK(pf(2) == coord(c, 1));
    CHECK(pf(3) == coord(c, 0));
    CHECK(partial_of(c, f).to_esection() == pf);

    // g(partial f, e) = (1/2)(rho e)f on random sections
    Rng rng(1);
    for (int trial = 0; trial < 5; ++trial) {
        ESection e = rng.next_section(4, 2, 2);
        CHECK(s.pairing(pf, e) == Scalar(Rat(1, 2)) * s.anchor(e).apply(f));
    }

    // zero anchor kills partial
    CHECK(section_zero(partial_operator(so3_structure(c), f)));
}

TEST_CASE("flavor conversion") {
    Chart c = xy();
    CourantStructure skew = standard_structure(c, Flavor::Skew);
    CourantStructure prod = convert(skew, Flavor::Product);
    CourantStructure dorf = standard_structure(c, Flavor::Product);
    CourantStructure back = convert(prod, Flavor::Skew);
    Rng rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        ESection a = rng.next_section(4, 2, 2);
        ESection b = rng.next_section(4, 2, 2);
        CHECK(section_zero(prod.apply(a, b) - dorf.apply(a, b)));
        CHECK(section_zero(back.apply(a, b) - skew.apply(a, b)));
        // symmetric part of the product is partial g(a,b)
        ESection sym = Scalar(Rat(1, 2)) * (prod.apply(a, b) + prod.apply(b, a));
        CHECK(section_zero(sym - partial_operator(prod, prod.pairing(a, b))));
    }
}

TEST_CASE("verify: standard structure passes everything") {
    CourantStructure s = standard_structure(xy());
    Report r = verify(s, Suite::All, {1, 2, 4});
    INFO(r.str());
    CHECK(r.all_pass());
}

TEST_CASE("verify: twisted structure and the closedness criterion") {
    // closed volume twist on three coordinates passes the full battery
    Chart c3({"x", "y", "z"});
    DifferentialForm vol = wedge(wedge(DifferentialForm::basis_one_form(c3, 0),
                                       DifferentialForm::basis_one_form(c3, 1)),
                                 DifferentialForm::basis_one_form(c3, 2));
    Report closed = verify(twisted_structure(c3, vol), Suite::All, {1, 1, 3});
    INFO(closed.str());
    CHECK(closed.all_pass());

    // non-closed w dx^dy^dz on four coordinates fails exactly the jacobiator
    Chart c4 = xyzw();
    DifferentialForm phi = coord(c4, 3) * wedge(wedge(DifferentialForm::basis_one_form(c4, 0),
                                                      DifferentialForm::basis_one_form(c4, 1)),
                                                DifferentialForm::basis_one_form(c4, 2));
    CourantStructure tw = twisted_structure(c4, phi);
    Report r = verify(tw, Suite::All, {1, 1, 3});
    INFO(r.str());
    // exactly the jacobiator family fails: iii and its product form, axiom 3
    CHECK(!suite_pass(r, "jacobi_iii"));
    CHECK(suite_pass(r, "skew_i_v"));
    CHECK(suite_pass(r, "prop12"));
    for (const auto& l : r.lines)
        if (l.suite == "def11") CHECK(l.pass == (l.identity != "axiom3"));
}

TEST_CASE("verify: bundle of Lie algebras with invariant metric") {
    Report r = verify(so3_structure(xy()), Suite::All, {1, 2, 4});
    INFO(r.str());
    CHECK(r.all_pass());
}

TEST_CASE("verify: bialgebroid and para-hermitian structures") {
    Chart c = xy();
    SMat pm(2, 2);
    pm.setConstant(Scalar(0));
    pm(0, 1) = coord(c, 0);
    pm(1, 0) = -coord(c, 0);
    Report rb = verify(bialgebroid_structure(Bivector(c, pm)), Suite::All, {1, 1, 3});
    INFO(rb.str());
    CHECK(rb.all_pass());

    // constant neutral para-hermitian data on four coordinates
    Chart c4 = xyzw();
    SMat g(4, 4), f(4, 4);
    g.setConstant(Scalar(0));
    f.setConstant(Scalar(0));
    for (int i = 0; i < 2; ++i) {
        g(i, 2 + i) = Scalar(1);
        g(2 + i, i) = Scalar(1);
        f(i, i) = Scalar(1);
        f(2 + i, 2 + i) = Scalar(-1);
    }
    ParaHermitianTM ph(MetricOnTM(c4, g), EndomorphismField(c4, f));
    CourantStructure sp = paraherm_structure(ph);
    Report rp = verify(sp, Suite::SkewIToV, {1, 1, 3});
    INFO(rp.str());
    CHECK(rp.all_pass());
    Report rj = verify(sp, Suite::JacobiIII, {1, 1, 3});
    INFO(rj.str());
    CHECK(rj.all_pass());
}

TEST_CASE("obstruction tensors") {
    Chart c = xy();
    CourantStructure s = standard_structure(c);
    Rng rng(4);
    for (int trial = 0; trial < 3; ++trial) {
        ESection e1 = rng.next_section(4, 2, 2);
        ESection e2 = rng.next_section(4, 2, 2);
        ESection e3 = rng.next_section(4, 2, 2);
        Obstructions ob = obstructions(s, e1, e2, e3);
        CHECK(section_zero(ob.L));
        CHECK(section_zero(ob.C));
        // the jacobiator itself equals the exact term, so J - C's correction
        // is everything: J coincides with (1/3) partial of the cyclic sum
        ESection exact = ob.J - ob.C;
        CHECK(section_zero(ob.J - exact));
    }

    // non-closed twist: C no longer vanishes
    Chart c4 = xyzw();
    DifferentialForm phi = coord(c4, 3) * wedge(wedge(DifferentialForm::basis_one_form(c4, 0),
                                                      DifferentialForm::basis_one_form(c4, 1)),
                                                DifferentialForm::basis_one_form(c4, 2));
    CourantStructure tw = twisted_structure(c4, phi);
    ESection a = SVec::Zero(8), b = SVec::Zero(8), d = SVec::Zero(8);
    a(0) = Scalar(1);
    b(1) = Scalar(1);
    d(2) = Scalar(1);
    CHECK(!section_zero(obstructions(tw, a, b, d).C));
}

TEST_CASE("structural identities of the obstruction calculus") {
    // arbitrary pre-Courant-style data: a lambda-modified standard bracket
    Chart c = xy();
    CourantStructure s = standard_structure(c);
    CourantStructure prod = convert(s, Flavor::Product);
    Rng rng(6);
    for (int trial = 0; trial < 3; ++trial) {
        ESection e1 = rng.next_section(4, 2, 1);
        ESection e2 = rng.next_section(4, 2, 1);
        ESection e = rng.next_section(4, 2, 1);
        // L(e1,e2,e) + L(e2,e1,e) = -2 (partial g(e1,e2)) * e
        ESection lhs = obstructions(s, e1, e2, e).L + obstructions(s, e2, e1, e).L;
        ESection rhs = Scalar(-2) * prod.apply(partial_operator(prod, prod.pairing(e1, e2)), e);
        CHECK(section_zero(lhs - rhs));
    }
}

TEST_CASE("lambda modification") {
    Chart c({"x", "y", "z"});
    int n = 3;
    CourantStructure s = standard_structure(c);
    DifferentialForm vol = wedge(wedge(DifferentialForm::basis_one_form(c, 0),
                                       DifferentialForm::basis_one_form(c, 1)),
                                 DifferentialForm::basis_one_form(c, 2));
    // Lambda living on the tangent indices with Lambda = -(1/2) Phi
    EThreeForm lam = EThreeForm::zero(2 * n);
    lam.at({0, 1, 2}) = Scalar(Rat(-1, 2));
    CourantStructure mod = modify_with_lambda(s, lam);
    CourantStructure tw = twisted_structure(c, vol);
    Rng rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        ESection a = rng.next_section(2 * n, n, 2);
        ESection b = rng.next_section(2 * n, n, 2);
        CHECK(section_zero(mod.apply(a, b) - tw.apply(a, b)));
    }

    // zero three-form leaves the rule unchanged
    CourantStructure same = modify_with_lambda(s, EThreeForm::zero(2 * n));
    ESection a = rng.next_section(2 * n, n, 2);
    ESection b = rng.next_section(2 * n, n, 2);
    CHECK(section_zero(same.apply(a, b) - s.apply(a, b)));

    // a three-form touching the covector frame indices hits im partial
    EThreeForm bad = EThreeForm::zero(2 * n);
    bad.at({0, 1, n}) = Scalar(1);
    CHECK_THROWS_AS(modify_with_lambda(s, bad), LambdaNotAnchorKilling);
}

TEST_CASE("cocycle defect") {
    Chart c({"x", "y", "z"});
    int n = 3;
    CourantStructure s = standard_structure(c);
    Rng rng(10);
    ESection e1 = rng.next_section(2 * n, n, 1);
    ESection e2 = rng.next_section(2 * n, n, 1);
    ESection e3 = rng.next_section(2 * n, n, 1);

    CHECK(section_zero(cocycle_defect(s, EThreeForm::zero(2 * n), e1, e2, e3)));

    // closed Phi: defect vanishes, and the modified structure is Courant
    EThreeForm lam = EThreeForm::zero(2 * n);
    lam.at({0, 1, 2}) = Scalar(Rat(-1, 2));
    CHECK(section_zero(cocycle_defect(s, lam, e1, e2, e3)));
    CHECK(verify(modify_with_lambda(s, lam), Suite::JacobiIII, {1, 1, 3}).all_pass());

    // non-closed Phi on four coordinates: defect appears
    Chart c4 = xyzw();
    CourantStructure s4 = standard_structure(c4);
    EThreeForm lam4 = EThreeForm::zero(8);
    lam4.at({0, 1, 2}) = Scalar(Rat(-1, 2)) * coord(c4, 3);
    ESection a = SVec::Zero(8), b = SVec::Zero(8), d = SVec::Zero(8);
    a(0) = Scalar(1);
    b(1) = Scalar(1);
    d(2) = Scalar(1);
    CHECK(!section_zero(cocycle_defect(s4, lam4, a, b, d)));
    CHECK(!verify(modify_with_lambda(s4, lam4), Suite::JacobiIII, {1, 1, 3}).all_pass());
}

TEST_CASE("report format") {
    Report r;
    r.lines.push_back({"skew_i_v", "i", true, ""});
    r.lines.push_back({"jacobi_iii", "iii", false, "(x, 0)"});
    CHECK(r.str() == "skew_i_v/i PASS\njacobi_iii/iii FAIL [witness: (x, 0)]\n");
    CHECK(!r.all_pass());
}
