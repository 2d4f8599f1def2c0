#include "ca/calculus.hpp"

#include <algorithm>
#include <sstream>

namespace ca {

Chart::Chart(std::vector<std::string> coord_names) : names_(std::move(coord_names)) {
    if (names_.empty()) throw Error("chart needs at least one coordinate");
    for (size_t i = 0; i < names_.size(); ++i) {
        if (names_[i].empty()) throw Error("empty coordinate name");
        for (size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j]) throw Error("duplicate coordinate name: " + names_[i]);
    }
}

int Chart::index_of(const std::string& name) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    return -1;
}

long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

std::vector<std::vector<int>> increasing_multi_indices(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k == 0) {
        out.push_back({});
        return out;
    }
    if (k > n) return out;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        out.push_back(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

int multi_index_rank(int n, const std::vector<int>& idx) {
    auto all = increasing_multi_indices(n, static_cast<int>(idx.size()));
    for (size_t i = 0; i < all.size(); ++i)
        if (all[i] == idx) return static_cast<int>(i);
    throw IndexOutOfRange("multi-index is not strictly increasing in range");
}

// --- VectorField -----------------------------------------------------------

VectorField::VectorField(Chart chart, SVec components)
    : chart_(std::move(chart)), comp_(std::move(components)) {
    if (comp_.size() != chart_.dim()) throw ShapeMismatch("vector field component count");
}

VectorField VectorField::zero(const Chart& chart) {
    SVec v(chart.dim());
    v.setZero();
    return VectorField(chart, v);
}

VectorField VectorField::basis(const Chart& chart, int i) {
    VectorField x = zero(chart);
    x[i] = Scalar(1);
    return x;
}

Scalar VectorField::apply(const Scalar& f) const {
    Scalar acc;
    for (int i = 0; i < chart_.dim(); ++i) acc += comp_(i) * f.derivative(i);
    return acc;
}

bool VectorField::is_zero() const {
    for (int i = 0; i < comp_.size(); ++i)
        if (!comp_(i).is_zero()) return false;
    return true;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
    require_same_chart(a.chart_, b.chart_);
    return VectorField(a.chart_, a.comp_ + b.comp_);
}

VectorField operator-(const VectorField& a, const VectorField& b) {
    require_same_chart(a.chart_, b.chart_);
    return VectorField(a.chart_, a.comp_ - b.comp_);
}

VectorField operator*(const Scalar& f, const VectorField& x) {
    return VectorField(x.chart_, f * x.comp_);
}

VectorField VectorField::operator-() const { return VectorField(chart_, -comp_); }

bool operator==(const VectorField& a, const VectorField& b) { return (a - b).is_zero(); }

std::string VectorField::str() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < chart_.dim(); ++i) {
        if (comp_(i).is_zero()) continue;
        if (!first) os << " + ";
        os << "(" << comp_(i).str(chart_.names()) << ") d/d" << chart_.name(i);
        first = false;
    }
    return first ? "0" : os.str();
}

// --- DifferentialForm ------------------------------------------------------

DifferentialForm::DifferentialForm(Chart chart, int degree)
    : chart_(std::move(chart)), degree_(degree) {
    if (degree < 0 || degree > chart_.degree_cap()) throw DegreeOverflow();
    comp_.assign(static_cast<size_t>(binomial(chart_.dim(), degree)), Scalar());
}

DifferentialForm::DifferentialForm(Chart chart, int degree, std::vector<Scalar> components)
    : DifferentialForm(std::move(chart), degree) {
    if (components.size() != comp_.size()) throw ShapeMismatch("form component count");
    comp_ = std::move(components);
}

DifferentialForm DifferentialForm::function(const Chart& chart, Scalar f) {
    DifferentialForm w(chart, 0);
    w.comp_[0] = std::move(f);
    return w;
}

DifferentialForm DifferentialForm::basis_one_form(const Chart& chart, int i) {
    DifferentialForm w(chart, 1);
    w.comp_.at(i) = Scalar(1);
    return w;
}

Scalar& DifferentialForm::at(const std::vector<int>& idx) {
    return comp_[multi_index_rank(chart_.dim(), idx)];
}

const Scalar& DifferentialForm::at(const std::vector<int>& idx) const {
    return comp_[multi_index_rank(chart_.dim(), idx)];
}

bool DifferentialForm::is_zero() const {
    for (const auto& c : comp_)
        if (!c.is_zero()) return false;
    return true;
}

Scalar DifferentialForm::operator()(const std::vector<VectorField>& args) const {
    if (static_cast<int>(args.size()) != degree_) throw ShapeMismatch("form arity");
    DifferentialForm w = *this;
    for (const auto& x : args) w = interior_product(x, w);
    return w.comp_[0];
}

DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b) {
    require_same_chart(a.chart_, b.chart_);
    if (a.degree_ != b.degree_) throw ShapeMismatch("form degrees differ");
    DifferentialForm w = a;
    for (size_t i = 0; i < w.comp_.size(); ++i) w.comp_[i] += b.comp_[i];
    return w;
}

DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b) {
    return a + (-b);
}

DifferentialForm operator*(const Scalar& f, const DifferentialForm& w) {
    DifferentialForm out = w;
    for (auto& c : out.comp_) c *= f;
    return out;
}

DifferentialForm DifferentialForm::operator-() const {
    DifferentialForm w = *this;
    for (auto& c : w.comp_) c = -c;
    return w;
}

bool operator==(const DifferentialForm& a, const DifferentialForm& b) {
    return (a - b).is_zero();
}

std::string DifferentialForm::str() const {
    auto idxs = increasing_multi_indices(chart_.dim(), degree_);
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < idxs.size(); ++k) {
        if (comp_[k].is_zero()) continue;
        if (!first) os << " + ";
        os << "(" << comp_[k].str(chart_.names()) << ")";
        for (int i : idxs[k]) os << " d" << chart_.name(i);
        first = false;
    }
    return first ? "0" : os.str();
}

// --- tensors ---------------------------------------------------------------

Bivector::Bivector(Chart chart_, SMat comp_) : chart(std::move(chart_)), comp(std::move(comp_)) {
    int n = chart.dim();
    if (comp.rows() != n || comp.cols() != n) throw ShapeMismatch("bivector matrix shape");
    if (!is_zero_matrix(SMat(comp + comp.transpose()))) throw Error("bivector matrix must be skew");
}

Scalar Bivector::pairing(const DifferentialForm& alpha, const DifferentialForm& beta) const {
    if (alpha.degree() != 1 || beta.degree() != 1) throw ShapeMismatch("bivector pairing arity");
    Scalar acc;
    int n = chart.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc += comp(i, j) * alpha[i] * beta[j];
    return acc;
}

MetricOnTM::MetricOnTM(Chart chart_, SMat g_) : chart(std::move(chart_)), g(std::move(g_)) {
    int n = chart.dim();
    if (g.rows() != n || g.cols() != n) throw ShapeMismatch("metric matrix shape");
    if (!is_zero_matrix(SMat(g - g.transpose()))) throw Error("metric matrix must be symmetric");
}

MetricOnTM MetricOnTM::identity(const Chart& chart) {
    SMat g(chart.dim(), chart.dim());
    g.setZero();
    for (int i = 0; i < chart.dim(); ++i) g(i, i) = Scalar(1);
    return MetricOnTM(chart, g);
}

Scalar MetricOnTM::pairing(const VectorField& x, const VectorField& y) const {
    return (x.comp().transpose() * g * y.comp())(0, 0);
}

EndomorphismField::EndomorphismField(Chart chart_, SMat comp_)
    : chart(std::move(chart_)), comp(std::move(comp_)) {
    int n = chart.dim();
    if (comp.rows() != n || comp.cols() != n) throw ShapeMismatch("endomorphism matrix shape");
}

VectorField EndomorphismField::apply(const VectorField& x) const {
    require_same_chart(chart, x.chart());
    return VectorField(chart, comp * x.comp());
}

// --- Cartan calculus -------------------------------------------------------

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
    require_same_chart(x.chart(), y.chart());
    const Chart& chart = x.chart();
    SVec out(chart.dim());
    for (int i = 0; i < chart.dim(); ++i) {
        Scalar acc;
        for (int s = 0; s < chart.dim(); ++s)
            acc += x[s] * y[i].derivative(s) - y[s] * x[i].derivative(s);
        out(i) = acc;
    }
    return VectorField(chart, out);
}

DifferentialForm exterior_derivative(const DifferentialForm& w) {
    const Chart& chart = w.chart();
    int n = chart.dim();
    if (w.degree() >= chart.degree_cap())
        throw DegreeOverflow("exterior derivative exceeds the degree cap");
    DifferentialForm out(chart, w.degree() + 1);
    auto idxs = increasing_multi_indices(n, w.degree());
    for (size_t k = 0; k < idxs.size(); ++k) {
        const auto& I = idxs[k];
        for (int j = 0; j < n; ++j) {
            if (std::find(I.begin(), I.end(), j) != I.end()) continue;
            std::vector<int> J = I;
            int pos = 0;
            while (pos < static_cast<int>(J.size()) && J[pos] < j) ++pos;
            J.insert(J.begin() + pos, j);
            Scalar term = w[static_cast<int>(k)].derivative(j);
            if (pos % 2 == 1) term = -term;
            out.at(J) += term;
        }
    }
    return out;
}

DifferentialForm interior_product(const VectorField& x, const DifferentialForm& w) {
    require_same_chart(x.chart(), w.chart());
    if (w.degree() == 0) throw DegreeUnderflow();
    const Chart& chart = w.chart();
    DifferentialForm out(chart, w.degree() - 1);
    auto idxs = increasing_multi_indices(chart.dim(), w.degree());
    for (size_t k = 0; k < idxs.size(); ++k) {
        const auto& I = idxs[k];
        for (size_t a = 0; a < I.size(); ++a) {
            std::vector<int> J = I;
            J.erase(J.begin() + a);
            Scalar term = x[I[a]] * w[static_cast<int>(k)];
            if (a % 2 == 1) term = -term;
            out.at(J) += term;
        }
    }
    return out;
}

DifferentialForm lie_derivative(const VectorField& x, const DifferentialForm& w) {
    require_same_chart(x.chart(), w.chart());
    const Chart& chart = w.chart();
    if (w.degree() == 0)
        return DifferentialForm::function(chart, x.apply(w[0]));
    if (w.degree() < chart.degree_cap())
        return interior_product(x, exterior_derivative(w)) +
               exterior_derivative(interior_product(x, w));
    if (w.degree() == chart.dim())  // top degree: d w = 0
        return exterior_derivative(interior_product(x, w));
    throw DegreeOverflow("Lie derivative at the degree cap below top degree");
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
    require_same_chart(a.chart(), b.chart());
    const Chart& chart = a.chart();
    int deg = a.degree() + b.degree();
    if (deg > chart.degree_cap()) throw DegreeOverflow("wedge exceeds the degree cap");
    DifferentialForm out(chart, deg);
    auto ia = increasing_multi_indices(chart.dim(), a.degree());
    auto ib = increasing_multi_indices(chart.dim(), b.degree());
    for (size_t p = 0; p < ia.size(); ++p) {
        if (a[static_cast<int>(p)].is_zero()) continue;
        for (size_t q = 0; q < ib.size(); ++q) {
            if (b[static_cast<int>(q)].is_zero()) continue;
            std::vector<int> merged = ia[p];
            merged.insert(merged.end(), ib[q].begin(), ib[q].end());
            // sort and count inversions; repeated index kills the term
            int inversions = 0;
            bool repeated = false;
            for (size_t i = 0; i < merged.size() && !repeated; ++i)
                for (size_t j = i + 1; j < merged.size(); ++j) {
                    if (merged[i] == merged[j]) {
                        repeated = true;
                        break;
                    }
                    if (merged[i] > merged[j]) ++inversions;
                }
            if (repeated) continue;
            std::sort(merged.begin(), merged.end());
            Scalar term = a[static_cast<int>(p)] * b[static_cast<int>(q)];
            if (inversions % 2 == 1) term = -term;
            out.at(merged) += term;
        }
    }
    return out;
}

DifferentialForm differential(const Chart& chart, const Scalar& f) {
    DifferentialForm out(chart, 1);
    for (int i = 0; i < chart.dim(); ++i) out[i] = f.derivative(i);
    return out;
}

DifferentialForm flat(const MetricOnTM& g, const VectorField& x) {
    require_same_chart(g.chart, x.chart());
    DifferentialForm out(g.chart, 1);
    SVec v = g.g * x.comp();
    for (int i = 0; i < g.chart.dim(); ++i) out[i] = v(i);
    return out;
}

VectorField sharp(const MetricOnTM& g, const DifferentialForm& alpha) {
    require_same_chart(g.chart, alpha.chart());
    if (alpha.degree() != 1) throw ShapeMismatch("sharp needs a 1-form");
    SVec a(g.chart.dim());
    for (int i = 0; i < g.chart.dim(); ++i) a(i) = alpha[i];
    return VectorField(g.chart, exact_inverse(g.g) * a);
}

VectorField sharp(const Bivector& p, const DifferentialForm& alpha) {
    require_same_chart(p.chart, alpha.chart());
    if (alpha.degree() != 1) throw ShapeMismatch("sharp needs a 1-form");
    SVec a(p.chart.dim());
    for (int i = 0; i < p.chart.dim(); ++i) a(i) = alpha[i];
    return VectorField(p.chart, p.comp.transpose() * a);
}

std::vector<SMat> levi_civita(const MetricOnTM& g) {
    int n = g.chart.dim();
    SMat ginv = exact_inverse(g.g);
    std::vector<SMat> gamma(n, SMat(n, n));
    Scalar half(Rat(1, 2));
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            for (int j = 0; j < n; ++j) {
                Scalar acc;
                for (int l = 0; l < n; ++l) {
                    acc += ginv(k, l) * (g.g(j, l).derivative(i) + g.g(i, l).derivative(j) -
                                         g.g(i, j).derivative(l));
                }
                gamma[i](k, j) = half * acc;
            }
        }
    }
    return gamma;
}

VectorField covariant_derivative_tm(const std::vector<SMat>& gamma, const VectorField& x,
                                    const VectorField& y) {
    const Chart& chart = x.chart();
    int n = chart.dim();
    SVec out(n);
    out.setZero();
    for (int i = 0; i < n; ++i) {
        SVec dy(n);
        for (int k = 0; k < n; ++k) dy(k) = y[k].derivative(i);
        out += x[i] * (dy + gamma[i] * y.comp());
    }
    return VectorField(chart, out);
}

VectorField nijenhuis(const EndomorphismField& f, const VectorField& x, const VectorField& y) {
    VectorField fx = f.apply(x), fy = f.apply(y);
    VectorField t = lie_bracket(fx, fy) - f.apply(lie_bracket(fx, y)) -
                    f.apply(lie_bracket(x, fy)) + f.apply(f.apply(lie_bracket(x, y)));
    return t;
}

PoissonCheck is_poisson(const Bivector& p) {
    int n = p.chart.dim();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int k = j + 1; k < n; ++k) {
                Scalar acc;
                const std::array<std::array<int, 3>, 3> cyc{{{i, j, k}, {j, k, i}, {k, i, j}}};
                for (const auto& c : cyc)
                    for (int s = 0; s < n; ++s)
                        acc += p.comp(c[0], s) * p.comp(c[1], c[2]).derivative(s);
                if (!acc.is_zero()) return PoissonCheck{false, {i, j, k}, acc};
            }
        }
    }
    return PoissonCheck{};
}

}  // namespace ca
