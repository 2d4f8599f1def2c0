#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ca/calculus.hpp"
#include "ca/chart.hpp"
#include "ca/matrix.hpp"

namespace ca {

// A section of the trivial bundle E over the chart, in the fixed frame.
using ESection = SVec;

enum class Flavor { Skew, Product };

// Totally skew trilinear form on E, stored on increasing index triples.
class EThreeForm {
public:
    EThreeForm() = default;
    EThreeForm(int rank, std::vector<Scalar> components);  // C(rank,3) entries
    static EThreeForm zero(int rank);

    int rank() const { return rank_; }
    const std::vector<Scalar>& comp() const { return comp_; }
    Scalar& at(const std::vector<int>& idx);
    // Component with arbitrary index order (signed), zero on repeats.
    Scalar value(int a, int b, int c) const;
    // Trilinear evaluation on sections.
    Scalar operator()(const ESection& e1, const ESection& e2, const ESection& e3) const;
    bool is_zero() const;

    friend EThreeForm operator+(const EThreeForm& a, const EThreeForm& b);
    friend EThreeForm operator-(const EThreeForm& a, const EThreeForm& b);

private:
    int rank_ = 0;
    std::vector<Scalar> comp_;
};

// Bracket-or-product structure (E, g, rho, rule) on a trivial bundle over the
// chart.  The rule is a bilinear operation on sections; the flavor records
// whether it is skew-symmetric or a (Dorfman-style) product.
class CourantStructure {
public:
    CourantStructure() = default;
    CourantStructure(Chart chart, SMat gE, SMat rho, Flavor flavor,
                     std::function<ESection(const ESection&, const ESection&)> rule,
                     std::vector<std::string> labels = {});

    const Chart& chart() const { return chart_; }
    int rank() const { return static_cast<int>(gE_.rows()); }
    const SMat& gE() const { return gE_; }
    const SMat& gE_inv() const { return gE_inv_; }
    const SMat& rho() const { return rho_; }
    Flavor flavor() const { return flavor_; }
    const std::vector<std::string>& labels() const { return labels_; }

    ESection apply(const ESection& e1, const ESection& e2) const { return rule_(e1, e2); }
    Scalar pairing(const ESection& e1, const ESection& e2) const;
    VectorField anchor(const ESection& e) const;
    // Anchor-isotropy matrix identity rho gE^{-1} trho = 0.
    bool anchor_isotropic() const;

    std::string section_str(const ESection& e) const;

private:
    Chart chart_;
    SMat gE_, gE_inv_, rho_;
    Flavor flavor_ = Flavor::Skew;
    std::function<ESection(const ESection&, const ESection&)> rule_;
    std::vector<std::string> labels_;
};

// partial f = (1/2) gE^{-1} trho (df).
ESection partial_operator(const CourantStructure& s, const Scalar& f);

// Switches flavor by adding or removing the symmetric part partial g(e1,e2).
CourantStructure convert(const CourantStructure& s, Flavor target);

struct ReportLine {
    std::string suite;
    std::string identity;
    bool pass = true;
    std::string witness;  // canonical expression, present iff !pass
};

struct Report {
    std::vector<ReportLine> lines;
    bool all_pass() const;
    std::string str() const;  // one "<suite>/<identity> PASS|FAIL" line each
};

enum class Suite { Def11, Prop12, SkewIToV, JacobiIII, All };

struct VerifyOptions {
    std::uint64_t seed = 1;
    int degree = 2;
    int trials = 10;
};

Report verify(const CourantStructure& s, Suite suite, const VerifyOptions& opt = {});

struct Obstructions {
    ESection L;  // associator defect of the product
    ESection J;  // jacobiator of the skew bracket
    ESection C;  // J minus its exact part
};
Obstructions obstructions(const CourantStructure& s, const ESection& e1, const ESection& e2,
                          const ESection& e3);

// lambda map induced by an EThreeForm through gE.
ESection lambda_map(const CourantStructure& s, const EThreeForm& lam, const ESection& e1,
                    const ESection& e2);

// New skew bracket [e1,e2] + lambda(e1,e2); requires rho o lambda = 0.
CourantStructure modify_with_lambda(const CourantStructure& s, const EThreeForm& lam);

// (partial_[] Lambda)(e1,e2,e3) minus the right-hand side that characterizes
// when the modified bracket is Courant.
ESection cocycle_defect(const CourantStructure& s, const EThreeForm& lam, const ESection& e1,
                        const ESection& e2, const ESection& e3);

}  // namespace ca
