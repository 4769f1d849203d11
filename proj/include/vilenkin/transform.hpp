#pragma once

// Fast Vilenkin transform and rectangular / marginal partial sums.
//
// Analysis is measure weighted, f^(k) = (1/M_N) sum_x f(x) conj(psi_k(x)),
// synthesis is unweighted, f(x) = sum_k f^(k) psi_k(x). Since psi_k(x)
// factors over digits, the transform is a tensor product of length-m_k DFTs
// applied in place with stride M_k; cells and coefficients share the
// mixed-radix numbering so no reordering pass is needed.
//
// 2D grids are row-major: entry (x, y) lives at x * M_N + y, with x the
// first variable.

#include "vilenkin/group.hpp"
#include "vilenkin/kernels.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace vilenkin {

inline constexpr std::size_t kMaxCells1D = 4096;
inline constexpr std::size_t kMaxCells2D = 1024;

struct SampledFunction1D {
    GroupContext ctx;
    std::vector<Complex> values;

    SampledFunction1D(GroupContext context, std::vector<Complex> samples);
    static SampledFunction1D zeros(const GroupContext& ctx);
};

struct SpectralGrid1D {
    GroupContext ctx;
    std::vector<Complex> coefficients;

    SpectralGrid1D(GroupContext context, std::vector<Complex> coeffs);
};

struct SampledFunction2D {
    GroupContext ctx;
    std::vector<Complex> values;

    SampledFunction2D(GroupContext context, std::vector<Complex> samples);
    static SampledFunction2D zeros(const GroupContext& ctx);

    std::size_t side() const noexcept { return ctx.size(); }
    Complex& operator()(std::size_t x, std::size_t y) { return values[x * ctx.size() + y]; }
    const Complex& operator()(std::size_t x, std::size_t y) const { return values[x * ctx.size() + y]; }
};

struct SpectralGrid2D {
    GroupContext ctx;
    std::vector<Complex> coefficients;

    SpectralGrid2D(GroupContext context, std::vector<Complex> coeffs);

    std::size_t side() const noexcept { return ctx.size(); }
    Complex& operator()(std::size_t k1, std::size_t k2) { return coefficients[k1 * ctx.size() + k2]; }
    const Complex& operator()(std::size_t k1, std::size_t k2) const { return coefficients[k1 * ctx.size() + k2]; }
};

// Per-stage twiddle tables for one context. Cheap to build, immutable, safe
// to share between threads.
class VilenkinTransform {
public:
    explicit VilenkinTransform(const GroupContext& ctx);

    const GroupContext& context() const noexcept { return ctx_; }

    // In place over the M_N entries data[0], data[stride], ...
    void forward(std::span<Complex> data, std::size_t stride = 1) const;
    void inverse(std::span<Complex> data, std::size_t stride = 1) const;

    // Both axes of an M_N x M_N row-major grid.
    void forward_2d(std::span<Complex> grid) const;
    void inverse_2d(std::span<Complex> grid) const;

private:
    void run(std::span<Complex> data, std::size_t stride, bool inverse) const;

    GroupContext ctx_;
    // twiddles_[k][t] = exp(2 pi i t / m_k)
    std::vector<std::vector<Complex>> twiddles_;
};

SpectralGrid1D fvt_forward(const SampledFunction1D& f);
SampledFunction1D fvt_inverse(const SpectralGrid1D& spectrum);
SpectralGrid2D fvt_forward(const SampledFunction2D& f);
SampledFunction2D fvt_inverse(const SpectralGrid2D& spectrum);

// S_{n1,n2} f: synthesis of the coefficients with k1 < n1 and k2 < n2.
SampledFunction2D partial_sum_rect(const SpectralGrid2D& spectrum, std::size_t n1, std::size_t n2);

// S_n^(1) (axis 1) or S_n^(2) (axis 2): truncation along one variable only.
SampledFunction2D marginal_partial_sum(const SpectralGrid2D& spectrum, int axis, std::size_t n);

} // namespace vilenkin
