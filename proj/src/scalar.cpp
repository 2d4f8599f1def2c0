#include "ca/scalar.hpp"

#include "ca/errors.hpp"

namespace ca {

Scalar::Scalar(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZero();
    canonicalize();
}

void Scalar::canonicalize() {
    if (num_.is_zero()) {
        num_ = Poly();
        den_ = Poly::constant(Rat(1));
        return;
    }
    Poly g = poly_gcd(num_, den_);
    if (!(g.is_constant() && g.constant_value() == 1)) {
        num_ = exact_div(num_, g);
        den_ = exact_div(den_, g);
    }
    Rat lc = den_.leading_coeff();
    if (lc != 1) {
        Rat inv = Rat(1) / lc;
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    return Scalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    return Scalar(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    return Scalar(a.num_ * b.num_, a.den_ * b.den_);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw DivisionByZero();
    return Scalar(a.num_ * b.den_, a.den_ * b.num_);
}

Scalar Scalar::derivative(int var) const {
    // Quotient rule; canonicalization in the constructor reduces the result.
    Poly n = num_.derivative(var) * den_ - num_ * den_.derivative(var);
    return Scalar(std::move(n), den_ * den_);
}

Rat Scalar::evaluate(const std::vector<Rat>& point) const {
    Rat d = den_.evaluate(point);
    if (d == 0) throw DivisionByZero();
    return num_.evaluate(point) / d;
}

std::string Scalar::str(const std::vector<std::string>& names) const {
    if (den_.is_constant() && den_.constant_value() == 1) return num_.str(names);
    std::string n = num_.str(names);
    std::string d = den_.str(names);
    if (num_.terms().size() > 1) n = "(" + n + ")";
    if (den_.terms().size() > 1) d = "(" + d + ")";
    return n + "/" + d;
}

}  // namespace ca
