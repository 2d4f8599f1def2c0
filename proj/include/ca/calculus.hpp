#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ca/chart.hpp"
#include "ca/matrix.hpp"

namespace ca {

// Strictly increasing k-subsets of {0..n-1} in lexicographic order; these
// index the components of a degree-k form.
std::vector<std::vector<int>> increasing_multi_indices(int n, int k);
int multi_index_rank(int n, const std::vector<int>& idx);
long binomial(int n, int k);

class VectorField {
public:
    VectorField() = default;
    VectorField(Chart chart, SVec components);
    static VectorField zero(const Chart& chart);
    static VectorField basis(const Chart& chart, int i);  // coordinate field

    const Chart& chart() const { return chart_; }
    const SVec& comp() const { return comp_; }
    Scalar& operator[](int i) { return comp_(i); }
    const Scalar& operator[](int i) const { return comp_(i); }

    // Directional derivative X(f).
    Scalar apply(const Scalar& f) const;

    bool is_zero() const;
    friend VectorField operator+(const VectorField& a, const VectorField& b);
    friend VectorField operator-(const VectorField& a, const VectorField& b);
    friend VectorField operator*(const Scalar& f, const VectorField& x);
    VectorField operator-() const;
    friend bool operator==(const VectorField& a, const VectorField& b);

    std::string str() const;

private:
    Chart chart_;
    SVec comp_;
};

class DifferentialForm {
public:
    DifferentialForm() = default;
    DifferentialForm(Chart chart, int degree);  // zero form of given degree
    DifferentialForm(Chart chart, int degree, std::vector<Scalar> components);
    static DifferentialForm function(const Chart& chart, Scalar f);
    static DifferentialForm basis_one_form(const Chart& chart, int i);  // dx^i

    const Chart& chart() const { return chart_; }
    int degree() const { return degree_; }
    const std::vector<Scalar>& comp() const { return comp_; }
    Scalar& at(const std::vector<int>& idx);
    const Scalar& at(const std::vector<int>& idx) const;
    Scalar& operator[](int flat) { return comp_[flat]; }
    const Scalar& operator[](int flat) const { return comp_[flat]; }

    bool is_zero() const;
    // Value on vector-field arguments, one per degree.
    Scalar operator()(const std::vector<VectorField>& args) const;

    friend DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b);
    friend DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b);
    friend DifferentialForm operator*(const Scalar& f, const DifferentialForm& w);
    DifferentialForm operator-() const;
    friend bool operator==(const DifferentialForm& a, const DifferentialForm& b);

    std::string str() const;

private:
    Chart chart_;
    int degree_ = 0;
    std::vector<Scalar> comp_;
};

struct Bivector {
    Chart chart;
    SMat comp;  // skew matrix P^{ij}

    Bivector() = default;
    Bivector(Chart chart_, SMat comp_);
    // Pairing P(alpha, beta) = P^{ij} alpha_i beta_j.
    Scalar pairing(const DifferentialForm& alpha, const DifferentialForm& beta) const;
};

struct MetricOnTM {
    Chart chart;
    SMat g;  // symmetric, invertible

    MetricOnTM() = default;
    MetricOnTM(Chart chart_, SMat g_);
    static MetricOnTM identity(const Chart& chart);
    Scalar pairing(const VectorField& x, const VectorField& y) const;
};

struct EndomorphismField {
    Chart chart;
    SMat comp;  // acts on components by matrix-vector product

    EndomorphismField() = default;
    EndomorphismField(Chart chart_, SMat comp_);
    VectorField apply(const VectorField& x) const;
};

// --- Cartan calculus -------------------------------------------------------

VectorField lie_bracket(const VectorField& x, const VectorField& y);
DifferentialForm exterior_derivative(const DifferentialForm& w);
DifferentialForm interior_product(const VectorField& x, const DifferentialForm& w);
DifferentialForm lie_derivative(const VectorField& x, const DifferentialForm& w);
DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);

DifferentialForm differential(const Chart& chart, const Scalar& f);  // df as a 1-form

// Musical maps.
DifferentialForm flat(const MetricOnTM& g, const VectorField& x);
VectorField sharp(const MetricOnTM& g, const DifferentialForm& alpha);
// Convention beta(sharp_P(alpha)) = P(alpha, beta).
VectorField sharp(const Bivector& p, const DifferentialForm& alpha);

// Christoffel matrices of the Levi-Civita connection: Gamma[i](k,j) = G^k_{ij}.
std::vector<SMat> levi_civita(const MetricOnTM& g);
// nabla_X Y for Christoffel matrices as above.
VectorField covariant_derivative_tm(const std::vector<SMat>& gamma, const VectorField& x,
                                    const VectorField& y);

VectorField nijenhuis(const EndomorphismField& f, const VectorField& x, const VectorField& y);

struct PoissonCheck {
    bool ok = true;
    std::array<int, 3> where{0, 0, 0};
    Scalar residual;  // cyclic-sum defect at `where` when !ok
};
PoissonCheck is_poisson(const Bivector& p);

}  // namespace ca
