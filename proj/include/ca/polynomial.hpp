#pragma once

#include <map>
#include <string>
#include <vector>

#include "ca/rational.hpp"

namespace ca {

// Exponent vector; entry i is the power of variable i.
using Mono = std::vector<unsigned>;

// Graded lexicographic order, descending (larger monomial first in the term map).
struct GradedLexGreater {
    bool operator()(const Mono& a, const Mono& b) const;
};

// Multivariate polynomial with exact rational coefficients.  The number of
// variables is part of the value; mixed-arity operations extend the shorter
// exponent vectors with zeros.
class Poly {
public:
    using TermMap = std::map<Mono, Rat, GradedLexGreater>;

    Poly() = default;  // zero
    static Poly constant(const Rat& c, int nvars = 0);
    static Poly variable(int var, int nvars);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_value() const;  // requires is_constant()
    int total_degree() const;    // -1 for the zero polynomial
    int degree_in(int var) const;
    bool depends_on(int var) const { return degree_in(var) > 0; }
    const TermMap& terms() const { return terms_; }

    // Leading term under graded-lex.
    const Mono& leading_mono() const;
    const Rat& leading_coeff() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly operator-() const;
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b);

    Poly scaled(const Rat& c) const;
    Poly derivative(int var) const;

    // Substitutes rational values for all variables.
    Rat evaluate(const std::vector<Rat>& point) const;

    std::string str(const std::vector<std::string>& names) const;

    void set_term(const Mono& m, const Rat& c);  // overwrites; drops zeros
    void extend_vars(int nvars);

private:
    int nvars_ = 0;
    TermMap terms_;
};

// Exact multivariate division; throws Error when the division is not exact.
Poly exact_div(const Poly& a, const Poly& b);

// GCD over the rationals, normalized to leading (graded-lex) coefficient 1.
Poly poly_gcd(const Poly& a, const Poly& b);

Poly poly_pow(const Poly& a, unsigned k);

}  // namespace ca
