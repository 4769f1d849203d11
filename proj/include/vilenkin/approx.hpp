#pragma once

// (C,-alpha) means of quadratic partial sums, L^p norms and the dyadic
// moduli of continuity on G_m x G_m.

#include "vilenkin/transform.hpp"

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace vilenkin {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// "1", "2", "inf" (also "infinity"); throws InvalidParameter otherwise or for p < 1.
double parse_exponent(std::string_view token);
std::string exponent_token(double p);

// ((1/M_N^2) sum |f|^p)^(1/p), or the maximum over cells for p = inf.
double lp_norm(const SampledFunction2D& f, double p);
double lp_norm(std::span<const Complex> values, double p);

// Multipliers of sigma_n^{-alpha} in the spectral domain: coefficient (k1, k2)
// with max(k1, k2) = mx < n is scaled by w[mx] = A_{n-1-mx}^{-alpha} / A_{n-1}^{-alpha}.
struct CesaroWeights {
    std::size_t n = 0;
    double alpha = 0.0;
    std::vector<double> w;
};

CesaroWeights cesaro_weights(std::size_t n, double alpha);

// sigma_n^{-alpha}(f) for 1 <= n <= M_N, alpha in (0, 1).
SampledFunction2D cesaro_mean(const SpectralGrid2D& spectrum, std::size_t n, double alpha);
// sigma_n^{-alpha}(f) - f, synthesized directly from (w - 1) so that the
// difference is exactly zero when only f^(0,0) is nonzero.
SampledFunction2D cesaro_deviation(const SpectralGrid2D& spectrum, std::size_t n, double alpha);

enum class ModulusKind {
    omega1,   // sup_{u in I_n} ||f(.+u, .) - f||_p
    omega2,   // sup_{v in I_n} ||f(., .+v) - f||_p
    omega12,  // mixed second difference over I_n x I_m
    total,    // sup_{(u,v) in I_n x I_n} ||f(.+u, .+v) - f||_p
};

std::string to_string(ModulusKind kind);

struct ModulusReport {
    ModulusKind kind = ModulusKind::omega1;
    int level = 0;
    // Second level, only meaningful for omega12.
    int level2 = 0;
    double p = 1.0;
    double value = 0.0;
};

// Exact supremum: f is constant on level-N cells, so the sup over I_n is a
// maximum over the M_N / M_n shifts t * M_n.
ModulusReport modulus(const SampledFunction2D& f, ModulusKind kind, int level, double p);
ModulusReport modulus(const SampledFunction2D& f, ModulusKind kind, int level, int level2, double p);

// omega1 and omega2 of f at every level 0..N for several exponents at once.
// omega1[level][i] is the modulus for exponents[i].
struct PartialModuli {
    std::vector<double> exponents;
    std::vector<std::vector<double>> omega1;
    std::vector<std::vector<double>> omega2;
};

PartialModuli partial_moduli(const SampledFunction2D& f, std::span<const double> exponents);

} // namespace vilenkin
