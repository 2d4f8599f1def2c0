#include "ca/random.hpp"
#include <functional>

namespace ca {

std::uint64_t Rng::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

int Rng::next_int(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
}

Poly Rng::next_poly(int nvars, int deg) {
    Poly p = Poly::constant(Rat(0), nvars);
    Mono m(nvars, 0u);
    // all exponent vectors of total degree <= deg, in a fixed order
    std::function<void(int, int)> rec = [&](int var, int remaining) {
        if (var == nvars) {
            int c = next_int(-3, 3);
            if (c != 0) {
                Poly t = Poly::constant(Rat(0), nvars);
                t.set_term(m, Rat(c));
                p += t;
            }
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            m[var] = static_cast<unsigned>(e);
            rec(var + 1, remaining - e);
        }
        m[var] = 0;
    };
    rec(0, deg);
    return p;
}

SVec Rng::next_section(int rank, int nvars, int deg) {
    SVec v(rank);
    for (int i = 0; i < rank; ++i) v(i) = next_scalar(nvars, deg);
    return v;
}

VectorField Rng::next_vector_field(const Chart& chart, int deg) {
    return VectorField(chart, next_section(chart.dim(), chart.dim(), deg));
}

DifferentialForm Rng::next_form(const Chart& chart, int degree, int deg) {
    DifferentialForm w(chart, degree);
    for (long k = 0; k < binomial(chart.dim(), degree); ++k)
        w[static_cast<int>(k)] = next_scalar(chart.dim(), deg);
    return w;
}

}  // namespace ca
