#include "doctest.h"

#include "ca/matrix.hpp"
#include "ca/random.hpp"
#include "ca/scalar.hpp"

using namespace ca;

namespace {
// chart (x, y): variable 0 = x, variable 1 = y
Scalar X() { return Scalar::variable(0, 2); }
Scalar Y() { return Scalar::variable(1, 2); }
}  // namespace

TEST_CASE("field arithmetic on simple inputs") {
    CHECK(X() * X() == Scalar(Poly::variable(0, 2) * Poly::variable(0, 2)));
    CHECK((Scalar(1) / X()) * X() == Scalar(1));
    CHECK_THROWS_AS(Scalar(1) / Scalar(0), DivisionByZero);
}

TEST_CASE("canonicalization cancels common factors") {
    // (x^2 - 1)/(x - 1) reduces to x + 1; oracle: gcd is x - 1 by hand
    Poly x = Poly::variable(0, 1);
    Poly num = x * x - Poly::constant(Rat(1), 1);
    Poly den = x - Poly::constant(Rat(1), 1);
    Scalar s(num, den);
    CHECK(s == Scalar(x + Poly::constant(Rat(1), 1)));
    CHECK(s.den().is_constant());
}

TEST_CASE("denominator is monic under graded-lex") {
    Poly x = Poly::variable(0, 1);
    Scalar s(Poly::constant(Rat(1), 1), x.scaled(Rat(2)));
    CHECK(s.den().leading_coeff() == 1);
    CHECK(s.num().leading_coeff() == Rat(1, 2));
}

TEST_CASE("derivatives: power, reciprocal, quotient rule") {
    // d/dx (x^2 y) = 2 x y
    Scalar f = X() * X() * Y();
    CHECK(f.derivative(0) == Scalar(2) * X() * Y());
    // d/dx (1/x) = -1/x^2
    Scalar g = Scalar(1) / X();
    CHECK(g.derivative(0) == -(Scalar(1) / (X() * X())));
    // d/dy (x/(y+1)) = -x/(y+1)^2, quotient rule by hand
    Scalar h = X() / (Y() + Scalar(1));
    CHECK(h.derivative(1) == -(X() / ((Y() + Scalar(1)) * (Y() + Scalar(1)))));
}

TEST_CASE("field axioms hold exactly on randomized inputs") {
    Rng rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        Scalar a = rng.next_scalar(2, 2);
        Scalar b = rng.next_scalar(2, 2);
        Scalar c = rng.next_scalar(2, 2);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + (-a) == Scalar(0));
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("rational functions with nontrivial denominators reduce") {
    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        Scalar a = rng.next_scalar(2, 2);
        Scalar d = rng.next_scalar(2, 1);
        if (d.is_zero()) continue;
        Scalar q = a / d;
        CHECK(q * d == a);
    }
}

TEST_CASE("exact matrix inverse over the scalar field") {
    SMat m(2, 2);
    m(0, 0) = Scalar(1);
    m(0, 1) = X();
    m(1, 0) = Scalar(0);
    m(1, 1) = Y() + Scalar(1);
    SMat inv = exact_inverse(m);
    SMat id = m * inv;
    CHECK(id(0, 0) == Scalar(1));
    CHECK(id(0, 1) == Scalar(0));
    CHECK(id(1, 1) == Scalar(1));

    SMat sing(2, 2);
    sing(0, 0) = X();
    sing(0, 1) = X();
    sing(1, 0) = Y();
    sing(1, 1) = Y();
    CHECK_THROWS_AS(exact_inverse(sing), SingularMetric);
}

TEST_CASE("canonical printing uses graded-lex order") {
    Scalar f = Y() + X() * X() + Scalar(3) * X();
    CHECK(f.str({"x", "y"}) == "x^2 + 3*x + y");
}

TEST_CASE("seeded generator is reproducible") {
    Rng a(1), b(1);
    for (int i = 0; i < 5; ++i) CHECK(a.next_poly(2, 2) == b.next_poly(2, 2));
    Rng c(1);
    Poly p = c.next_poly(2, 0);
    CHECK(p.total_degree() <= 0);
}
