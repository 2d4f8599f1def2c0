#include "ca/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ca/errors.hpp"

namespace ca {

namespace {

unsigned total(const Mono& m) { return std::accumulate(m.begin(), m.end(), 0u); }

unsigned expo(const Mono& m, size_t i) { return i < m.size() ? m[i] : 0u; }

}  // namespace

bool GradedLexGreater::operator()(const Mono& a, const Mono& b) const {
    unsigned ta = total(a), tb = total(b);
    if (ta != tb) return ta > tb;
    size_t n = std::max(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        unsigned ea = expo(a, i), eb = expo(b, i);
        if (ea != eb) return ea > eb;
    }
    return false;
}

Poly Poly::constant(const Rat& c, int nvars) {
    Poly p;
    p.nvars_ = nvars;
    if (c != 0) p.terms_.emplace(Mono(nvars, 0u), c);
    return p;
}

Poly Poly::variable(int var, int nvars) {
    if (var < 0 || var >= nvars) throw IndexOutOfRange("variable index out of range");
    Poly p;
    p.nvars_ = nvars;
    Mono m(nvars, 0u);
    m[var] = 1;
    p.terms_.emplace(std::move(m), Rat(1));
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total(terms_.begin()->first) == 0);
}

Rat Poly::constant_value() const {
    if (terms_.empty()) return Rat(0);
    if (!is_constant()) throw Error("polynomial is not constant");
    return terms_.begin()->second;
}

int Poly::total_degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(total(terms_.begin()->first));
}

int Poly::degree_in(int var) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max<int>(d, expo(m, var));
    return d;
}

const Mono& Poly::leading_mono() const {
    if (terms_.empty()) throw Error("zero polynomial has no leading term");
    return terms_.begin()->first;
}

const Rat& Poly::leading_coeff() const {
    if (terms_.empty()) throw Error("zero polynomial has no leading term");
    return terms_.begin()->second;
}

void Poly::extend_vars(int nvars) {
    if (nvars <= nvars_) return;
    TermMap out;
    for (const auto& [m, c] : terms_) {
        Mono mm = m;
        mm.resize(nvars, 0u);
        out.emplace(std::move(mm), c);
    }
    terms_ = std::move(out);
    nvars_ = nvars;
}

void Poly::set_term(const Mono& m, const Rat& c) {
    if (c == 0) {
        terms_.erase(m);
    } else {
        terms_[m] = c;
    }
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.nvars_ > nvars_) extend_vars(o.nvars_);
    for (const auto& [m, c] : o.terms_) {
        Mono mm = m;
        mm.resize(nvars_, 0u);
        auto it = terms_.find(mm);
        if (it == terms_.end()) {
            terms_.emplace(std::move(mm), c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly Poly::operator-() const {
    Poly p;
    p.nvars_ = nvars_;
    for (const auto& [m, c] : terms_) p.terms_.emplace(m, Rat(-c));
    return p;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly p;
    p.nvars_ = std::max(a.nvars_, b.nvars_);
    for (const auto& [ma, ca_] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Mono m(p.nvars_, 0u);
            for (size_t i = 0; i < m.size(); ++i) m[i] = expo(ma, i) + expo(mb, i);
            Rat c = ca_ * cb;
            auto it = p.terms_.find(m);
            if (it == p.terms_.end()) {
                p.terms_.emplace(std::move(m), std::move(c));
            } else {
                it->second += c;
                if (it->second == 0) p.terms_.erase(it);
            }
        }
    }
    return p;
}

bool operator==(const Poly& a, const Poly& b) {
    Poly d = a;
    d -= b;
    return d.is_zero();
}

Poly Poly::scaled(const Rat& c) const {
    Poly p;
    p.nvars_ = nvars_;
    if (c == 0) return p;
    for (const auto& [m, v] : terms_) p.terms_.emplace(m, Rat(v * c));
    return p;
}

Poly Poly::derivative(int var) const {
    if (var < 0) throw IndexOutOfRange("derivative variable out of range");
    Poly p;
    p.nvars_ = nvars_;
    if (var >= nvars_) return p;  // constant with respect to an absent variable
    for (const auto& [m, c] : terms_) {
        unsigned e = expo(m, var);
        if (e == 0) continue;
        Mono mm = m;
        mm[var] = e - 1;
        p.terms_.emplace(std::move(mm), Rat(c * e));
    }
    return p;
}

Rat Poly::evaluate(const std::vector<Rat>& point) const {
    if (static_cast<int>(point.size()) < nvars_) throw ShapeMismatch("evaluation point too short");
    Rat acc(0);
    for (const auto& [m, c] : terms_) {
        Rat t = c;
        for (size_t i = 0; i < m.size(); ++i) {
            for (unsigned k = 0; k < m[i]; ++k) t *= point[i];
        }
        acc += t;
    }
    return acc;
}

std::string Poly::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rat a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        std::vector<std::string> factors;
        if (a != 1 || total(m) == 0) factors.push_back(a.str());
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            std::string f = i < names.size() ? names[i] : "v" + std::to_string(i);
            if (m[i] > 1) f += "^" + std::to_string(m[i]);
            factors.push_back(std::move(f));
        }
        for (size_t i = 0; i < factors.size(); ++i) {
            if (i) os << "*";
            os << factors[i];
        }
    }
    return os.str();
}

namespace {

bool mono_divides(const Mono& a, const Mono& b) {
    // a | b
    for (size_t i = 0; i < a.size(); ++i)
        if (expo(a, i) > expo(b, i)) return false;
    return true;
}

}  // namespace

Poly exact_div(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DivisionByZero();
    Poly rem = a;
    rem.extend_vars(b.nvars());
    Poly quo = Poly::constant(Rat(0), rem.nvars());
    Poly bb = b;
    bb.extend_vars(rem.nvars());
    while (!rem.is_zero()) {
        const Mono& lm = rem.leading_mono();
        if (!mono_divides(bb.leading_mono(), lm)) throw Error("division is not exact");
        Mono q(rem.nvars(), 0u);
        const Mono& bm = bb.leading_mono();
        for (size_t i = 0; i < q.size(); ++i) q[i] = expo(lm, i) - expo(bm, i);
        Rat qc = rem.leading_coeff() / bb.leading_coeff();
        Poly t = Poly::constant(Rat(0), rem.nvars());
        t.set_term(q, qc);
        quo += t;
        rem -= t * bb;
    }
    return quo;
}

namespace {

// p viewed as a univariate polynomial in variable v with Poly coefficients.
std::vector<Poly> univariate_coeffs(const Poly& p, int v) {
    std::vector<Poly> out(static_cast<size_t>(p.degree_in(v)) + 1, Poly::constant(Rat(0), p.nvars()));
    for (const auto& [m, c] : p.terms()) {
        unsigned e = v < static_cast<int>(m.size()) ? m[v] : 0u;
        Mono mm = m;
        if (v < static_cast<int>(mm.size())) mm[v] = 0;
        Poly t = Poly::constant(Rat(0), p.nvars());
        t.set_term(mm, c);
        out[e] += t;
    }
    return out;
}

Poly from_univariate(const std::vector<Poly>& coeffs, int v, int nvars) {
    Poly acc = Poly::constant(Rat(0), nvars);
    Poly x = Poly::variable(v, nvars);
    Poly xe = Poly::constant(Rat(1), nvars);
    for (size_t e = 0; e < coeffs.size(); ++e) {
        acc += coeffs[e] * xe;
        xe = xe * x;
    }
    return acc;
}

Poly gcd_impl(Poly a, Poly b);

Poly content_in(const Poly& p, int v) {
    auto cs = univariate_coeffs(p, v);
    Poly g = Poly::constant(Rat(0), p.nvars());
    for (const auto& c : cs) g = gcd_impl(g, c);
    return g;
}

// Pseudo-remainder of a by b with respect to variable v.
Poly prem(Poly a, const Poly& b, int v) {
    int db = b.degree_in(v);
    auto bc = univariate_coeffs(b, v);
    const Poly& lb = bc.back();
    while (!a.is_zero() && a.degree_in(v) >= db) {
        int da = a.degree_in(v);
        auto ac = univariate_coeffs(a, v);
        Poly la = ac.back();
        Poly shift = Poly::constant(Rat(1), a.nvars());
        for (int k = 0; k < da - db; ++k) shift = shift * Poly::variable(v, a.nvars());
        a = lb * a - la * shift * b;
    }
    return a;
}

Poly primitive_part(const Poly& p, int v) {
    if (p.is_zero()) return p;
    Poly c = content_in(p, v);
    return exact_div(p, c);
}

Poly gcd_impl(Poly a, Poly b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int nv = std::max(a.nvars(), b.nvars());
    a.extend_vars(nv);
    b.extend_vars(nv);
    if (a.is_constant() || b.is_constant()) return Poly::constant(Rat(1), nv);
    int v = nv - 1;
    while (v >= 0 && !a.depends_on(v) && !b.depends_on(v)) --v;
    if (v < 0) return Poly::constant(Rat(1), nv);
    if (!a.depends_on(v)) return gcd_impl(a, content_in(b, v));
    if (!b.depends_on(v)) return gcd_impl(content_in(a, v), b);

    Poly ca_ = content_in(a, v);
    Poly cb = content_in(b, v);
    Poly cg = gcd_impl(ca_, cb);
    Poly pa = exact_div(a, ca_);
    Poly pb = exact_div(b, cb);
    if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
    for (;;) {
        Poly r = prem(pa, pb, v);
        if (r.is_zero()) return cg * primitive_part(pb, v);
        if (!r.depends_on(v)) return cg;
        pa = pb;
        pb = primitive_part(r, v);
    }
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    Poly g = gcd_impl(a, b);
    if (g.is_zero()) return g;
    return g.scaled(Rat(1) / g.leading_coeff());
}

Poly poly_pow(const Poly& a, unsigned k) {
    Poly acc = Poly::constant(Rat(1), a.nvars());
    for (unsigned i = 0; i < k; ++i) acc = acc * a;
    return acc;
}

}  // namespace ca
