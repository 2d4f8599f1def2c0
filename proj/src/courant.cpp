#include "ca/courant.hpp"

#include <algorithm>
#include <sstream>

#include "ca/random.hpp"

namespace ca {

// --- EThreeForm ------------------------------------------------------------

EThreeForm::EThreeForm(int rank, std::vector<Scalar> components)
    : rank_(rank), comp_(std::move(components)) {
    if (static_cast<long>(comp_.size()) != binomial(rank, 3))
        throw ShapeMismatch("three-form component count does not match the rank");
}

EThreeForm EThreeForm::zero(int rank) {
    return EThreeForm(rank, std::vector<Scalar>(static_cast<size_t>(binomial(rank, 3))));
}

Scalar& EThreeForm::at(const std::vector<int>& idx) {
    return comp_[static_cast<size_t>(multi_index_rank(rank_, idx))];
}

Scalar EThreeForm::value(int a, int b, int c) const {
    if (a == b || b == c || a == c) return Scalar(0);
    std::vector<int> idx = {a, b, c};
    int sign = 1;
    // sort three entries, counting swaps
    for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i + 1 < 3; ++i)
            if (idx[i] > idx[i + 1]) {
                std::swap(idx[i], idx[i + 1]);
                sign = -sign;
            }
    Scalar v = comp_[static_cast<size_t>(multi_index_rank(rank_, idx))];
    return sign > 0 ? v : -v;
}

Scalar EThreeForm::operator()(const ESection& e1, const ESection& e2, const ESection& e3) const {
    Scalar acc(0);
    auto idxs = increasing_multi_indices(rank_, 3);
    for (size_t t = 0; t < idxs.size(); ++t) {
        const Scalar& coef = comp_[t];
        if (coef.is_zero()) continue;
        int a = idxs[t][0], b = idxs[t][1], c = idxs[t][2];
        // determinant of the 3x3 minor of (e1,e2,e3) at rows a,b,c
        Scalar det = e1(a) * (e2(b) * e3(c) - e2(c) * e3(b)) -
                     e1(b) * (e2(a) * e3(c) - e2(c) * e3(a)) +
                     e1(c) * (e2(a) * e3(b) - e2(b) * e3(a));
        acc += coef * det;
    }
    return acc;
}

bool EThreeForm::is_zero() const {
    return std::all_of(comp_.begin(), comp_.end(), [](const Scalar& s) { return s.is_zero(); });
}

EThreeForm operator+(const EThreeForm& a, const EThreeForm& b) {
    if (a.rank_ != b.rank_) throw ShapeMismatch();
    EThreeForm r = a;
    for (size_t i = 0; i < r.comp_.size(); ++i) r.comp_[i] += b.comp_[i];
    return r;
}

EThreeForm operator-(const EThreeForm& a, const EThreeForm& b) {
    if (a.rank_ != b.rank_) throw ShapeMismatch();
    EThreeForm r = a;
    for (size_t i = 0; i < r.comp_.size(); ++i) r.comp_[i] -= b.comp_[i];
    return r;
}

// --- CourantStructure ------------------------------------------------------

CourantStructure::CourantStructure(Chart chart, SMat gE, SMat rho, Flavor flavor,
                                   std::function<ESection(const ESection&, const ESection&)> rule,
                                   std::vector<std::string> labels)
    : chart_(std::move(chart)),
      gE_(std::move(gE)),
      rho_(std::move(rho)),
      flavor_(flavor),
      rule_(std::move(rule)),
      labels_(std::move(labels)) {
    if (gE_.rows() != gE_.cols()) throw ShapeMismatch("fiber metric must be square");
    for (int i = 0; i < gE_.rows(); ++i)
        for (int j = 0; j < i; ++j)
            if (gE_(i, j) != gE_(j, i)) throw ShapeMismatch("fiber metric must be symmetric");
    if (rho_.rows() != chart_.dim() || rho_.cols() != gE_.rows())
        throw ShapeMismatch("anchor matrix shape must be dim x rank");
    gE_inv_ = exact_inverse(gE_);
    if (labels_.empty())
        for (int i = 0; i < rank(); ++i) labels_.push_back("e" + std::to_string(i + 1));
}

Scalar CourantStructure::pairing(const ESection& e1, const ESection& e2) const {
    return (e1.transpose() * gE_ * e2)(0, 0);
}

VectorField CourantStructure::anchor(const ESection& e) const {
    return VectorField(chart_, rho_ * e);
}

bool CourantStructure::anchor_isotropic() const {
    SMat m = rho_ * gE_inv_ * rho_.transpose();
    return is_zero_matrix(m);
}

std::string CourantStructure::section_str(const ESection& e) const {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < e.size(); ++i) {
        if (i) os << ", ";
        os << e(i).str(chart_.names());
    }
    os << ")";
    return os.str();
}

// --- operations ------------------------------------------------------------

namespace {

SVec gradient(const Chart& chart, const Scalar& f) {
    SVec df(chart.dim());
    for (int i = 0; i < chart.dim(); ++i) df(i) = f.derivative(i);
    return df;
}

Scalar half() { return Scalar(Rat(1, 2)); }

}  // namespace

ESection partial_operator(const CourantStructure& s, const Scalar& f) {
    return half() * (s.gE_inv() * (s.rho().transpose() * gradient(s.chart(), f)));
}

CourantStructure convert(const CourantStructure& s, Flavor target) {
    if (s.flavor() == target) return s;
    CourantStructure base = s;
    Scalar sign = target == Flavor::Product ? Scalar(1) : Scalar(-1);
    auto rule = [base, sign](const ESection& e1, const ESection& e2) -> ESection {
        return base.apply(e1, e2) + sign * partial_operator(base, base.pairing(e1, e2));
    };
    return CourantStructure(s.chart(), s.gE(), s.rho(), target, rule, s.labels());
}

bool Report::all_pass() const {
    return std::all_of(lines.begin(), lines.end(), [](const ReportLine& l) { return l.pass; });
}

std::string Report::str() const {
    std::ostringstream os;
    for (const auto& l : lines) {
        os << l.suite << "/" << l.identity << " " << (l.pass ? "PASS" : "FAIL");
        if (!l.pass) os << " [witness: " << l.witness << "]";
        os << "\n";
    }
    return os.str();
}

namespace {

bool section_zero(const ESection& e) {
    for (int i = 0; i < e.size(); ++i)
        if (!e(i).is_zero()) return false;
    return true;
}

struct Checker {
    const CourantStructure& skew;
    const CourantStructure& prod;
    const VerifyOptions& opt;
    Report& report;

    void record(const std::string& suite, const std::string& identity, bool pass,
                const std::string& witness) {
        for (auto& l : report.lines)
            if (l.suite == suite && l.identity == identity) {
                if (l.pass && !pass) {
                    l.pass = false;
                    l.witness = witness;
                }
                return;
            }
        report.lines.push_back({suite, identity, pass, pass ? std::string() : witness});
    }

    void check_section(const std::string& suite, const std::string& id, const ESection& resid) {
        record(suite, id, section_zero(resid), skew.section_str(resid));
    }
    void check_scalar(const std::string& suite, const std::string& id, const Scalar& resid) {
        record(suite, id, resid.is_zero(), resid.str(skew.chart().names()));
    }
    void check_vf(const std::string& suite, const std::string& id, const VectorField& resid) {
        record(suite, id, resid.is_zero(), resid.str());
    }
};

}  // namespace

Report verify(const CourantStructure& s, Suite suite, const VerifyOptions& opt) {
    CourantStructure skew = convert(s, Flavor::Skew);
    CourantStructure prod = convert(s, Flavor::Product);
    const Chart& chart = s.chart();
    int n = chart.dim();
    int r = s.rank();

    Report report;
    Checker ck{skew, prod, opt, report};

    bool want_def11 = suite == Suite::Def11 || suite == Suite::All;
    bool want_prop12 = suite == Suite::Prop12 || suite == Suite::All;
    bool want_skew = suite == Suite::SkewIToV || suite == Suite::All;
    bool want_iii = suite == Suite::JacobiIII || suite == Suite::All;

    if (want_skew) {
        SMat iso = s.rho() * s.gE_inv() * s.rho().transpose();
        bool pass = is_zero_matrix(iso);
        std::string w;
        if (!pass) {
            for (int i = 0; i < iso.rows() && w.empty(); ++i)
                for (int j = 0; j < iso.cols() && w.empty(); ++j)
                    if (!iso(i, j).is_zero()) w = iso(i, j).str(chart.names());
        }
        ck.record("skew_i_v", "ii", pass, w);
    }

    Rng rng(opt.seed);
    for (int trial = 0; trial < opt.trials; ++trial) {
        ESection e = rng.next_section(r, n, opt.degree);
        ESection e1 = rng.next_section(r, n, opt.degree);
        ESection e2 = rng.next_section(r, n, opt.degree);
        ESection e3 = rng.next_section(r, n, opt.degree);
        Scalar f = rng.next_scalar(n, opt.degree);

        if (want_def11) {
            Scalar a1 = prod.anchor(e).apply(prod.pairing(e1, e2)) -
                        prod.pairing(prod.apply(e, e1), e2) - prod.pairing(e1, prod.apply(e, e2));
            ck.check_scalar("def11", "axiom1", a1);
            ck.check_section("def11", "axiom2",
                             prod.apply(e, e) - partial_operator(prod, prod.pairing(e, e)));
            ck.check_section("def11", "axiom3",
                             prod.apply(e1, prod.apply(e2, e3)) -
                                 prod.apply(prod.apply(e1, e2), e3) -
                                 prod.apply(e2, prod.apply(e1, e3)));
        }

        if (want_prop12) {
            VectorField r1 = prod.anchor(e1);
            VectorField r2 = prod.anchor(e2);
            ck.check_section("prop12", "a",
                             prod.apply(e1, f * e2) - f * prod.apply(e1, e2) -
                                 r1.apply(f) * e2);
            ck.check_section("prop12", "b",
                             prod.apply(f * e1, e2) - f * prod.apply(e1, e2) +
                                 r2.apply(f) * e1 -
                                 Scalar(2) * prod.pairing(e1, e2) * partial_operator(prod, f));
            ESection pf = partial_operator(prod, f);
            ck.check_section("prop12", "c1", prod.apply(pf, e));
            ck.check_section("prop12", "c2",
                             prod.apply(e, pf) -
                                 partial_operator(prod, prod.anchor(e).apply(f)));
            ck.check_vf("prop12", "d",
                        prod.anchor(prod.apply(e1, e2)) - lie_bracket(r1, r2));
            ck.check_vf("prop12", "e", prod.anchor(pf));
            ck.check_section("prop12", "cptantisim",
                             skew.apply(e, pf) -
                                 half() * partial_operator(skew, skew.anchor(e).apply(f)));
        }

        if (want_skew) {
            ck.check_vf("skew_i_v", "i",
                        skew.anchor(skew.apply(e1, e2)) -
                            lie_bracket(skew.anchor(e1), skew.anchor(e2)));
            ck.check_section("skew_i_v", "iv",
                             skew.apply(e1, f * e2) - f * skew.apply(e1, e2) -
                                 skew.anchor(e1).apply(f) * e2 +
                                 skew.pairing(e1, e2) * partial_operator(skew, f));
            Scalar v = skew.anchor(e).apply(skew.pairing(e1, e2)) -
                       skew.pairing(skew.apply(e, e1) +
                                        partial_operator(skew, skew.pairing(e, e1)),
                                    e2) -
                       skew.pairing(e1, skew.apply(e, e2) +
                                            partial_operator(skew, skew.pairing(e, e2)));
            ck.check_scalar("skew_i_v", "v", v);
        }

        if (want_iii) {
            ESection jac = skew.apply(skew.apply(e1, e2), e3) +
                           skew.apply(skew.apply(e2, e3), e1) +
                           skew.apply(skew.apply(e3, e1), e2);
            Scalar cyc = skew.pairing(skew.apply(e1, e2), e3) +
                         skew.pairing(skew.apply(e2, e3), e1) +
                         skew.pairing(skew.apply(e3, e1), e2);
            ck.check_section("jacobi_iii", "iii",
                             jac - Scalar(Rat(1, 3)) * partial_operator(skew, cyc));
        }
    }
    return report;
}

Obstructions obstructions(const CourantStructure& s, const ESection& e1, const ESection& e2,
                          const ESection& e3) {
    CourantStructure prod = convert(s, Flavor::Product);
    CourantStructure skew = convert(s, Flavor::Skew);
    Obstructions out;
    out.L = prod.apply(e1, prod.apply(e2, e3)) - prod.apply(prod.apply(e1, e2), e3) -
            prod.apply(e2, prod.apply(e1, e3));
    out.J = skew.apply(skew.apply(e1, e2), e3) + skew.apply(skew.apply(e2, e3), e1) +
            skew.apply(skew.apply(e3, e1), e2);
    Scalar cyc = skew.pairing(skew.apply(e1, e2), e3) + skew.pairing(skew.apply(e2, e3), e1) +
                 skew.pairing(skew.apply(e3, e1), e2);
    out.C = out.J - Scalar(Rat(1, 3)) * partial_operator(skew, cyc);
    return out;
}

ESection lambda_map(const CourantStructure& s, const EThreeForm& lam, const ESection& e1,
                    const ESection& e2) {
    int r = s.rank();
    SVec v(r);
    for (int c = 0; c < r; ++c) {
        Scalar acc(0);
        for (int a = 0; a < r; ++a) {
            if (e1(a).is_zero()) continue;
            for (int b = 0; b < r; ++b) {
                Scalar lv = lam.value(a, b, c);
                if (!lv.is_zero()) acc += e1(a) * e2(b) * lv;
            }
        }
        v(c) = acc;
    }
    return s.gE_inv() * v;
}

namespace {

void require_anchor_killing(const CourantStructure& s, const EThreeForm& lam) {
    int r = s.rank();
    // Lambda(e1, e2, partial f) = 0 for all f; it suffices to test the
    // coordinate functions against frame section pairs, by function-linearity.
    for (int i = 0; i < s.chart().dim(); ++i) {
        ESection pf = partial_operator(s, Scalar::variable(i, s.chart().dim()));
        for (int a = 0; a < r; ++a)
            for (int b = a + 1; b < r; ++b) {
                ESection ea = SVec::Zero(r), eb = SVec::Zero(r);
                ea(a) = Scalar(1);
                eb(b) = Scalar(1);
                if (!lam(ea, eb, pf).is_zero()) throw LambdaNotAnchorKilling();
            }
    }
}

}  // namespace

CourantStructure modify_with_lambda(const CourantStructure& s, const EThreeForm& lam) {
    if (lam.rank() != s.rank()) throw ShapeMismatch("three-form rank mismatch");
    CourantStructure skew = convert(s, Flavor::Skew);
    require_anchor_killing(skew, lam);
    auto rule = [skew, lam](const ESection& e1, const ESection& e2) -> ESection {
        return skew.apply(e1, e2) + lambda_map(skew, lam, e1, e2);
    };
    return CourantStructure(skew.chart(), skew.gE(), skew.rho(), Flavor::Skew, rule,
                            skew.labels());
}

ESection cocycle_defect(const CourantStructure& s, const EThreeForm& lam, const ESection& e1,
                        const ESection& e2, const ESection& e3) {
    CourantStructure skew = convert(s, Flavor::Skew);
    require_anchor_killing(skew, lam);

    auto lmap = [&](const ESection& a, const ESection& b) { return lambda_map(skew, lam, a, b); };
    auto br = [&](const ESection& a, const ESection& b) { return skew.apply(a, b); };

    ESection cyc = SVec::Zero(skew.rank());
    const ESection* es[3] = {&e1, &e2, &e3};
    for (int t = 0; t < 3; ++t) {
        const ESection &a = *es[t], &b = *es[(t + 1) % 3], &c = *es[(t + 2) % 3];
        ESection lab = lmap(a, b);
        cyc += lmap(lab, c) + lmap(br(a, b), c) + br(lab, c);
    }
    ESection dlam = partial_operator(skew, lam(e1, e2, e3)) - cyc;

    ESection jac = br(br(e1, e2), e3) + br(br(e2, e3), e1) + br(br(e3, e1), e2);
    Scalar csum = skew.pairing(br(e1, e2), e3) + skew.pairing(br(e2, e3), e1) +
                  skew.pairing(br(e3, e1), e2);
    ESection target = jac - Scalar(Rat(1, 3)) * partial_operator(skew, csum);
    return dlam - target;
}

}  // namespace ca
