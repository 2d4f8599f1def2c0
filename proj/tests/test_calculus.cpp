#include "doctest.h"

#include "ca/calculus.hpp"
#include "ca/random.hpp"

using namespace ca;

namespace {
Chart xy() { return Chart({"x", "y"}); }
Chart xyz() { return Chart({"x", "y", "z"}); }
Chart xyzw() { return Chart({"x", "y", "z", "w"}); }

Scalar coord(const Chart& c, int i) { return Scalar::variable(i, c.dim()); }
}  // namespace

TEST_CASE("lie_bracket on oracle pairs") {
    Chart c = xy();
    VectorField dx = VectorField::basis(c, 0);
    VectorField dy = VectorField::basis(c, 1);
    CHECK(lie_bracket(dx, dy).is_zero());
    // [∂x, x∂x] = ∂x
    CHECK(lie_bracket(dx, coord(c, 0) * dx) == dx);
    // [x∂y, y∂x] = x∂x − y∂y
    VectorField lhs = lie_bracket(coord(c, 0) * dy, coord(c, 1) * dx);
    CHECK(lhs == coord(c, 0) * dx - coord(c, 1) * dy);
}

TEST_CASE("lie_bracket Jacobi identity on random fields") {
    Chart c = xy();
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        VectorField x = rng.next_vector_field(c, 2);
        VectorField y = rng.next_vector_field(c, 2);
        VectorField z = rng.next_vector_field(c, 2);
        VectorField jac = lie_bracket(x, lie_bracket(y, z)) +
                          lie_bracket(y, lie_bracket(z, x)) +
                          lie_bracket(z, lie_bracket(x, y));
        CHECK(jac.is_zero());
    }
}

TEST_CASE("exterior_derivative oracles") {
    Chart c = xy();
    Scalar x = coord(c, 0), y = coord(c, 1);
    // d(xy) = y dx + x dy
    DifferentialForm d0 = exterior_derivative(DifferentialForm::function(c, x * y));
    CHECK(d0.at({0}) == y);
    CHECK(d0.at({1}) == x);
    // d(y dx) = dy∧dx = −dx∧dy
    DifferentialForm ydx = y * DifferentialForm::basis_one_form(c, 0);
    CHECK(exterior_derivative(ydx).at({0, 1}) == -Scalar(1));

    // n = 4: d(w dx∧dy∧dz) = dw∧dx∧dy∧dz = −dx∧dy∧dz∧dw
    Chart c4 = xyzw();
    DifferentialForm phi = coord(c4, 3) * wedge(wedge(DifferentialForm::basis_one_form(c4, 0),
                                                      DifferentialForm::basis_one_form(c4, 1)),
                                                DifferentialForm::basis_one_form(c4, 2));
    DifferentialForm dphi = exterior_derivative(phi);
    CHECK(!dphi.is_zero());
    CHECK(dphi.at({0, 1, 2, 3}) == -Scalar(1));

    CHECK_THROWS_AS(exterior_derivative(dphi), DegreeOverflow);
}

TEST_CASE("d after d vanishes on random low-degree forms") {
    Chart c = xyzw();
    Rng rng(5);
    for (int deg = 0; deg <= 2; ++deg) {
        for (int trial = 0; trial < 5; ++trial) {
            DifferentialForm w = rng.next_form(c, deg, 2);
            CHECK(exterior_derivative(exterior_derivative(w)).is_zero());
        }
    }
}

TEST_CASE("interior_product oracles") {
    Chart c = xyz();
    VectorField dx = VectorField::basis(c, 0);
    VectorField dy = VectorField::basis(c, 1);
    DifferentialForm dxdy = wedge(DifferentialForm::basis_one_form(c, 0),
                                  DifferentialForm::basis_one_form(c, 1));
    // i(∂x)(dx∧dy) = dy
    CHECK(interior_product(dx, dxdy) == DifferentialForm::basis_one_form(c, 1));
    // i(∂y)(y dx) = 0
    DifferentialForm ydx = coord(c, 1) * DifferentialForm::basis_one_form(c, 0);
    CHECK(interior_product(dy, ydx).is_zero());
    // i(∂y)i(∂x)(dx∧dy∧dz) = dz
    DifferentialForm vol = wedge(dxdy, DifferentialForm::basis_one_form(c, 2));
    CHECK(interior_product(dy, interior_product(dx, vol)) ==
          DifferentialForm::basis_one_form(c, 2));
    // i(X)i(X)ω = 0
    Rng rng(9);
    VectorField x = rng.next_vector_field(c, 2);
    CHECK(interior_product(x, interior_product(x, vol)).is_zero());

    CHECK_THROWS_AS(interior_product(dx, DifferentialForm::function(c, coord(c, 0))),
                    DegreeUnderflow);
}

TEST_CASE("lie_derivative oracles") {
    Chart c = xy();
    VectorField dx = VectorField::basis(c, 0);
    DifferentialForm ydx = coord(c, 1) * DifferentialForm::basis_one_form(c, 0);
    CHECK(lie_derivative(dx, ydx).is_zero());
    DifferentialForm xdy = coord(c, 0) * DifferentialForm::basis_one_form(c, 1);
    CHECK(lie_derivative(dx, xdy) == DifferentialForm::basis_one_form(c, 1));
    // on functions: L_X f = X(f)
    DifferentialForm f = DifferentialForm::function(c, coord(c, 0) * coord(c, 0));
    CHECK(lie_derivative(dx, f).at({}) == Scalar(2) * coord(c, 0));
}

TEST_CASE("lie_derivative commutes with d and is a wedge derivation") {
    Chart c = xyz();
    Rng rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        VectorField x = rng.next_vector_field(c, 2);
        DifferentialForm a = rng.next_form(c, 1, 2);
        DifferentialForm b = rng.next_form(c, 1, 2);
        CHECK(lie_derivative(x, exterior_derivative(a)) ==
              exterior_derivative(lie_derivative(x, a)));
        CHECK(lie_derivative(x, wedge(a, b)) ==
              wedge(lie_derivative(x, a), b) + wedge(a, lie_derivative(x, b)));
    }
}

TEST_CASE("wedge is graded-commutative and associative") {
    Chart c = xyzw();
    Rng rng(17);
    DifferentialForm a = rng.next_form(c, 1, 1);
    DifferentialForm b = rng.next_form(c, 2, 1);
    DifferentialForm f = rng.next_form(c, 1, 1);
    CHECK(wedge(a, b) == wedge(b, a));              // 1·2 even
    CHECK(wedge(a, f) == -wedge(f, a));             // 1·1 odd
    CHECK(wedge(wedge(a, f), b).degree() == 4);
    CHECK(wedge(a, wedge(f, b)) == wedge(wedge(a, f), b));
}

TEST_CASE("musical maps") {
    Chart c = xy();
    // g = antidiag(1,1): flat(∂y) = dx
    SMat anti(2, 2);
    anti.setConstant(Scalar(0));
    anti(0, 1) = Scalar(1);
    anti(1, 0) = Scalar(1);
    MetricOnTM g(c, anti);
    CHECK(flat(g, VectorField::basis(c, 1)) == DifferentialForm::basis_one_form(c, 0));

    // P = ∂x∧∂y: sharp(dx) = ∂y
    SMat pm(2, 2);
    pm.setConstant(Scalar(0));
    pm(0, 1) = Scalar(1);
    pm(1, 0) = Scalar(-1);
    Bivector p(c, pm);
    CHECK(sharp(p, DifferentialForm::basis_one_form(c, 0)) == VectorField::basis(c, 1));

    // sharp_g(flat_g(X)) = X for any metric
    MetricOnTM id = MetricOnTM::identity(c);
    VectorField dx = VectorField::basis(c, 0);
    CHECK(sharp(id, flat(id, dx)) == dx);
    Rng rng(21);
    VectorField x = rng.next_vector_field(c, 2);
    CHECK(sharp(g, flat(g, x)) == x);
}

TEST_CASE("levi_civita Christoffel matrices") {
    Chart c = xy();
    // identity metric: all Gamma = 0
    auto gamma0 = levi_civita(MetricOnTM::identity(c));
    for (const auto& m : gamma0) CHECK(is_zero_matrix(m));

    // g = diag(1, x^2+1): Gamma^y_{xy} = x/(x^2+1)
    Scalar x = coord(c, 0);
    SMat gm(2, 2);
    gm.setConstant(Scalar(0));
    gm(0, 0) = Scalar(1);
    gm(1, 1) = x * x + Scalar(1);
    MetricOnTM g(c, gm);
    auto gamma = levi_civita(g);
    CHECK(gamma[0](1, 1) == x / (x * x + Scalar(1)));

    // metric identity: d_i g = Gamma_i^T g + g Gamma_i
    for (int i = 0; i < 2; ++i) {
        SMat dg(2, 2);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) dg(a, b) = gm(a, b).derivative(i);
        SMat resid = dg - gamma[i].transpose() * gm - gm * gamma[i];
        CHECK(is_zero_matrix(resid));
    }

    CHECK_THROWS_AS(levi_civita(MetricOnTM(c, [&] {
                        SMat s(2, 2);
                        s.setConstant(Scalar(0));
                        s(0, 0) = x;
                        s(0, 1) = x;
                        s(1, 0) = x;
                        s(1, 1) = x;
                        return s;
                    }())),
                    SingularMetric);
}

TEST_CASE("nijenhuis tensor") {
    Chart c = xy();
    Rng rng(33);
    // constant F, constant fields -> 0
    SMat fm(2, 2);
    fm.setConstant(Scalar(0));
    fm(0, 0) = Scalar(1);
    fm(1, 1) = Scalar(-1);
    EndomorphismField F(c, fm);
    VectorField dx = VectorField::basis(c, 0);
    VectorField dy = VectorField::basis(c, 1);
    CHECK(nijenhuis(F, dx, dy).is_zero());
    // F = diag(1,-1), X = ∂x, Y = x∂y
    CHECK(nijenhuis(F, dx, coord(c, 0) * dy).is_zero());
    // skew and tensorial in each slot
    for (int trial = 0; trial < 5; ++trial) {
        VectorField x = rng.next_vector_field(c, 2);
        VectorField y = rng.next_vector_field(c, 2);
        Scalar f = rng.next_scalar(2, 2);
        CHECK(nijenhuis(F, x, y) == -nijenhuis(F, y, x));
        CHECK(nijenhuis(F, x, f * y) == f * nijenhuis(F, x, y));
        CHECK(nijenhuis(F, f * x, y) == f * nijenhuis(F, x, y));
    }
}

TEST_CASE("is_poisson") {
    Chart c = xy();
    SMat pm(2, 2);
    pm.setConstant(Scalar(0));
    pm(0, 1) = coord(c, 0);  // P = x ∂x∧∂y, Poisson in dimension 2
    pm(1, 0) = -coord(c, 0);
    CHECK(is_poisson(Bivector(c, pm)).ok);

    Chart c3 = xyz();
    SMat q(3, 3);
    q.setConstant(Scalar(0));
    // P = x ∂x∧∂y + ∂x∧∂z is not Poisson: cyclic sum at (x,y,z) is -1
    q(0, 1) = coord(c3, 0);
    q(1, 0) = -coord(c3, 0);
    q(0, 2) = Scalar(1);
    q(2, 0) = Scalar(-1);
    PoissonCheck chk = is_poisson(Bivector(c3, q));
    CHECK(!chk.ok);
    CHECK(!chk.residual.is_zero());

    // constant bivectors in any dimension are Poisson
    SMat r(3, 3);
    r.setConstant(Scalar(0));
    r(0, 1) = Scalar(2);
    r(1, 0) = Scalar(-2);
    r(1, 2) = Scalar(1);
    r(2, 1) = Scalar(-1);
    CHECK(is_poisson(Bivector(c3, r)).ok);
}

TEST_CASE("form evaluation on vector-field arguments") {
    Chart c = xyz();
    DifferentialForm vol = wedge(wedge(DifferentialForm::basis_one_form(c, 0),
                                       DifferentialForm::basis_one_form(c, 1)),
                                 DifferentialForm::basis_one_form(c, 2));
    std::vector<VectorField> args = {VectorField::basis(c, 0), VectorField::basis(c, 1),
                                     VectorField::basis(c, 2)};
    CHECK(vol(args) == Scalar(1));
    std::swap(args[0], args[1]);
    CHECK(vol(args) == Scalar(-1));
}
