#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ca/polynomial.hpp"

namespace ca {

// Element of the fraction field of Poly.  Canonical form: gcd(num, den) = 1,
// denominator monic under graded-lex, zero stored as 0/1.
class Scalar {
public:
    Scalar() : num_(), den_(Poly::constant(Rat(1))) {}
    Scalar(int v) : Scalar(Rat(v)) {}  // NOLINT: implicit for Eigen literals
    explicit Scalar(const Rat& v) : num_(Poly::constant(v)), den_(Poly::constant(Rat(1))) {}
    explicit Scalar(Poly p) : num_(std::move(p)), den_(Poly::constant(Rat(1))) {}
    Scalar(Poly num, Poly den);  // canonicalizes

    static Scalar variable(int var, int nvars) { return Scalar(Poly::variable(var, nvars)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rat constant_value() const { return num_.constant_value() / den_.constant_value(); }

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    friend bool operator==(const Scalar& a, const Scalar& b) { return (a - b).is_zero(); }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar derivative(int var) const;

    // Evaluates at a rational point; throws DivisionByZero where the
    // denominator vanishes.
    Rat evaluate(const std::vector<Rat>& point) const;

    std::string str(const std::vector<std::string>& names) const;
    std::string str() const { return str({}); }

private:
    Poly num_, den_;
    void canonicalize();
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

inline Scalar pow(const Scalar& a, unsigned k) {
    Scalar acc(1);
    for (unsigned i = 0; i < k; ++i) acc *= a;
    return acc;
}

}  // namespace ca

namespace Eigen {

template <>
struct NumTraits<ca::Scalar> {
    using Real = ca::Scalar;
    using NonInteger = ca::Scalar;
    using Literal = ca::Scalar;
    using Nested = ca::Scalar;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 16,
        AddCost = 64,
        MulCost = 64
    };
    static ca::Scalar epsilon() { return ca::Scalar(); }
    static ca::Scalar dummy_precision() { return ca::Scalar(); }
    static int digits10() { return 0; }
};

template <>
struct NumTraits<ca::Rat> {
    using Real = ca::Rat;
    using NonInteger = ca::Rat;
    using Literal = ca::Rat;
    using Nested = ca::Rat;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 16,
        MulCost = 16
    };
    static ca::Rat epsilon() { return ca::Rat(0); }
    static ca::Rat dummy_precision() { return ca::Rat(0); }
    static int digits10() { return 0; }
};

}  // namespace Eigen
