#pragma once

// Both sides of the approximation inequalities as exact finite sums.
//
// Every report carries lhs, the right-hand side without its unknown
// constant, and their ratio, which is the empirical constant for that
// parameter tuple.

#include "vilenkin/approx.hpp"
#include "vilenkin/kernels.hpp"
#include "vilenkin/transform.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vilenkin {

enum class Claim {
    theorem1,
    theorem2,
    lemma1,
    // one-variable branch of the Lemma 1 report
    lemma0,
    lemma4,
    lemma5,
    eq23,
};

std::string to_string(Claim claim);
Claim parse_claim(std::string_view token);
// The six claims swept by default (lemma0 rides along with lemma1 on request).
std::span<const Claim> default_claims();

struct RatioReport {
    Claim claim = Claim::theorem1;
    std::string family;
    std::optional<std::uint64_t> seed;
    std::optional<double> alpha;
    std::optional<double> p;
    std::optional<std::size_t> k;
    std::optional<std::size_t> n;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    // Non-empty when the tuple could not be evaluated.
    std::string error;
};

// lhs / rhs, with 0/0 = 0 and x/0 = inf.
double report_ratio(double lhs, double rhs);

// n = n_{k_1} M_{k_1} + ... + n_{k_s} M_{k_s} with k_1 > ... > k_s.
struct TailDecomposition {
    std::size_t n = 0;
    std::vector<int> levels;
    std::vector<int> digits;
    // tails[i] = n_{k_{i+1}} M_{k_{i+1}} + ... ; tails[0] = n.
    std::vector<std::size_t> tails;

    std::size_t size() const noexcept { return levels.size(); }
};

TailDecomposition tail_decompose(const GroupContext& ctx, std::size_t n);

// Seeded test corpus of cylinder functions at level <= N.
struct FunctionFamily {
    enum class Kind { character, cylinder, random_poly, random_cell };

    Kind kind = Kind::character;
    // character(a, b)
    std::size_t a = 0;
    std::size_t b = 0;
    // cylinder(level): indicator of I_level x I_level
    int level = 0;
    // random_poly(degree, seed): coefficients on k1, k2 < degree
    std::size_t degree = 0;
    std::uint64_t seed = 0;

    static FunctionFamily character(std::size_t a, std::size_t b);
    static FunctionFamily cylinder(int level);
    static FunctionFamily random_poly(std::size_t degree, std::uint64_t seed);
    static FunctionFamily random_cell(std::uint64_t seed);

    // "character(1,1)", "cylinder(2)", "random_poly(4,7)", "random_cell(3)".
    static FunctionFamily parse(std::string_view text);

    // Label without the seed, e.g. "random_poly(4)".
    std::string label() const;
    std::optional<std::uint64_t> seed_value() const;
    bool constant() const noexcept { return kind == Kind::character && a == 0 && b == 0; }

    SampledFunction2D generate(const GroupContext& ctx) const;
};

// The standard corpus: characters, cylinder indicators, 20 random polynomials
// and a few random cell functions.
std::vector<FunctionFamily> default_corpus(const GroupContext& ctx);

// A function with its spectrum and partial moduli for a set of exponents,
// shared by every theorem report on it.
class FunctionAnalysis {
public:
    FunctionAnalysis(SampledFunction2D f, std::span<const double> exponents);

    const GroupContext& context() const noexcept { return f_.ctx; }
    const SampledFunction2D& function() const noexcept { return f_; }
    const SpectralGrid2D& spectrum() const noexcept { return spectrum_; }
    const PartialModuli& moduli() const noexcept { return moduli_; }
    std::span<const double> exponents() const noexcept { return moduli_.exponents; }

private:
    SampledFunction2D f_;
    SpectralGrid2D spectrum_;
    PartialModuli moduli_;
};

// Theorem 1 at level k (1 <= k, M_k <= M_N): one report per exponent of
// the analysis. lhs = ||sigma_{M_k}^{-alpha} f - f||_p.
std::vector<RatioReport> theorem1_reports(const FunctionAnalysis& fa, double alpha, int k);
RatioReport theorem1_report(const SampledFunction2D& f, double alpha, int k, double p);

// Theorem 2 at index n, M_k <= n < M_{k+1}, 2 <= n < M_N, k >= 1.
std::vector<RatioReport> theorem2_reports(const FunctionAnalysis& fa, double alpha, std::size_t n);
RatioReport theorem2_report(const SampledFunction2D& f, double alpha, std::size_t n, double p);

// Natural log, clamped to 1 below n = 3.
double log_factor(std::size_t n);

// (1/M_N^2) sum_{u,v} |sum_{i=1}^{len} c_i D_i(u) D_i(v)|, coeffs[i-1] = c_i.
double kernel_integral_2d(const DirichletTable& d, std::span<const double> coeffs);
// (1/M_N) sum_u |sum_{i=1}^{len} c_i D_i(u)|.
double kernel_integral_1d(const DirichletTable& d, std::span<const double> coeffs);

struct Lemma1Reports {
    RatioReport two_d;
    RatioReport one_d;
};

// Coefficients alpha_1..alpha_n, n <= M_N.
Lemma1Reports lemma1_report(const DirichletTable& d, std::span<const double> coeffs);
Lemma1Reports lemma1_report(const GroupContext& ctx, std::span<const double> coeffs);

// II(p) = integral |sum_{i=1}^{M_k} A_{p-i}^{-alpha-1} D_i(u) D_i(v)| for p >= M_k.
double lemma4_integral(const DirichletTable& d, double alpha, int k, std::size_t p);

struct Lemma4Result {
    RatioReport report;
    std::vector<std::size_t> ps;
    std::vector<double> values;
};

Lemma4Result lemma4_report(const DirichletTable& d, double alpha, int k, std::span<const std::size_t> ps);
Lemma4Result lemma4_report(const GroupContext& ctx, double alpha, int k, std::span<const std::size_t> ps);

// III(n) = integral |sum_{i=1}^{n} A_{n-i}^{-alpha-1} D_i(u) D_i(v)|, 1 <= n < M_N.
double lemma5_integral(const DirichletTable& d, double alpha, std::size_t n);

struct Lemma5Result {
    RatioReport report;
    TailDecomposition tails;
};

Lemma5Result lemma5_report(const DirichletTable& d, double alpha, std::size_t n);
Lemma5Result lemma5_report(const GroupContext& ctx, double alpha, std::size_t n);

// |sum_{i=1}^{n} A_{n-i}^{-alpha-1} D_i(u)| |u|^{1-alpha} per cell (0 at u = 0).
std::vector<double> eq23_profile(const DirichletTable& d, double alpha, std::size_t n);
RatioReport eq23_report(const DirichletTable& d, double alpha, std::size_t n);
RatioReport eq23_report(const GroupContext& ctx, double alpha, std::size_t n);

} // namespace vilenkin
