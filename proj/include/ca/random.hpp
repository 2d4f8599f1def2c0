#pragma once

#include <cstdint>

#include "ca/calculus.hpp"

namespace ca {

// Deterministic 64-bit mixing generator (splitmix64).  Fixed here so verifier
// reports are reproducible across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    // Uniform integer in [lo, hi].
    int next_int(int lo, int hi);

    // Polynomial with integer coefficients in [-3, 3] and total degree <= deg.
    Poly next_poly(int nvars, int deg);
    Scalar next_scalar(int nvars, int deg) { return Scalar(next_poly(nvars, deg)); }
    SVec next_section(int rank, int nvars, int deg);
    VectorField next_vector_field(const Chart& chart, int deg);
    DifferentialForm next_form(const Chart& chart, int degree, int deg);

private:
    std::uint64_t state_;
};

}  // namespace ca
