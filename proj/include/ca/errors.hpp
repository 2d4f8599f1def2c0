#pragma once

#include <stdexcept>
#include <string>

namespace ca {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};

struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& what = "index out of range") : Error(what) {}
};

struct ChartMismatch : Error {
    ChartMismatch() : Error("operands live over different charts") {}
};

struct DegreeOverflow : Error {
    explicit DegreeOverflow(const std::string& what = "form degree above supported cap") : Error(what) {}
};

struct DegreeUnderflow : Error {
    DegreeUnderflow() : Error("interior product of a degree-0 form") {}
};

struct SingularMetric : Error {
    explicit SingularMetric(const std::string& what = "matrix is singular") : Error(what) {}
};

struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& what = "incompatible shapes") : Error(what) {}
};

struct NotPoisson : Error {
    NotPoisson() : Error("bivector does not satisfy the Jacobi condition") {}
};

struct InvalidParaHermitian : Error {
    explicit InvalidParaHermitian(const std::string& what) : Error(what) {}
};

struct BetaTorsionMismatch : Error {
    BetaTorsionMismatch() : Error("phi(beta(X,Y)) does not reproduce the phi-torsion") {}
};

struct FlavorMismatch : Error {
    explicit FlavorMismatch(const std::string& what) : Error(what) {}
};

struct LambdaNotAnchorKilling : Error {
    LambdaNotAnchorKilling() : Error("three-form does not annihilate the image of the partial operator") {}
};

struct PropertyIFails : Error {
    explicit PropertyIFails(
        const std::string& what = "anchor compatibility (property i) fails for the assembled bracket")
        : Error(what) {}
};

struct NotFoliatedMetric : Error {
    explicit NotFoliatedMetric(
        const std::string& what = "fiber metric entries depend on leaf coordinates")
        : Error(what) {}
};

struct AnchorNotLeafwise : Error {
    explicit AnchorNotLeafwise(
        const std::string& what = "anchor image is not contained in the leafwise directions")
        : Error(what) {}
};

struct AnchorNotSurjective : Error {
    AnchorNotSurjective() : Error("anchor matrix does not have full row rank") {}
};

struct RankTooSmall : Error {
    RankTooSmall() : Error("bundle rank below twice the chart dimension") {}
};

struct IsotropyFails : Error {
    IsotropyFails() : Error("anchor-isotropy identity rho g^-1 rho^t = 0 fails") {}
};

struct InvalidComponentConnection : Error {
    explicit InvalidComponentConnection(const std::string& what) : Error(what) {}
};

struct InvalidLambda : Error {
    explicit InvalidLambda(const std::string& what) : Error(what) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what = "vector length does not match the space") : Error(what) {}
};

struct NotComplement : Error {
    NotComplement() : Error("subspaces are not complementary") {}
};

struct NotDirac : Error {
    NotDirac() : Error("subspace is not maximal isotropic") {}
};

struct NotInWPlus : Error {
    NotInWPlus() : Error("subspace is not contained in the +1 eigenspace") {}
};

struct InvariantMismatch : Error {
    InvariantMismatch() : Error("Dirac subspaces have different invariants") {}
};

struct ParseError : Error {
    int line, col;
    std::string msg;
    ParseError(int line_, int col_, const std::string& what)
        : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(col_) + ": " + what),
          line(line_), col(col_), msg(what) {}
};

}  // namespace ca
