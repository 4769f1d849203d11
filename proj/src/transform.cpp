#include "vilenkin/transform.hpp"

#include "vilenkin/errors.hpp"

#include <array>
#include <cmath>
#include <string>

namespace vilenkin {

namespace {

void require_finite(std::span<const Complex> values, const char* what)
{
    for (const Complex& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw InvalidParameter(std::string(what) + ": non-finite value");
}

void require_length(std::size_t actual, std::size_t expected, const char* what)
{
    if (actual != expected)
        throw InvalidParameter(std::string(what) + ": length " + std::to_string(actual) + " does not match " +
                               std::to_string(expected));
}

void require_side(const GroupContext& ctx, std::size_t cap, const char* what)
{
    if (ctx.size() > cap)
        throw ResolutionExceeded(std::string(what) + ": M_N = " + std::to_string(ctx.size()) +
                                 " exceeds the resolution cap " + std::to_string(cap));
}

} // namespace

SampledFunction1D::SampledFunction1D(GroupContext context, std::vector<Complex> samples)
    : ctx(std::move(context)), values(std::move(samples))
{
    require_length(values.size(), ctx.size(), "SampledFunction1D");
    require_finite(values, "SampledFunction1D");
}

SampledFunction1D SampledFunction1D::zeros(const GroupContext& ctx)
{
    return SampledFunction1D(ctx, std::vector<Complex>(ctx.size()));
}

SpectralGrid1D::SpectralGrid1D(GroupContext context, std::vector<Complex> coeffs)
    : ctx(std::move(context)), coefficients(std::move(coeffs))
{
    require_length(coefficients.size(), ctx.size(), "SpectralGrid1D");
    require_finite(coefficients, "SpectralGrid1D");
}

SampledFunction2D::SampledFunction2D(GroupContext context, std::vector<Complex> samples)
    : ctx(std::move(context)), values(std::move(samples))
{
    require_side(ctx, kMaxCells2D, "SampledFunction2D");
    require_length(values.size(), ctx.size() * ctx.size(), "SampledFunction2D");
    require_finite(values, "SampledFunction2D");
}

SampledFunction2D SampledFunction2D::zeros(const GroupContext& ctx)
{
    return SampledFunction2D(ctx, std::vector<Complex>(ctx.size() * ctx.size()));
}

SpectralGrid2D::SpectralGrid2D(GroupContext context, std::vector<Complex> coeffs)
    : ctx(std::move(context)), coefficients(std::move(coeffs))
{
    require_side(ctx, kMaxCells2D, "SpectralGrid2D");
    require_length(coefficients.size(), ctx.size() * ctx.size(), "SpectralGrid2D");
    require_finite(coefficients, "SpectralGrid2D");
}

VilenkinTransform::VilenkinTransform(const GroupContext& ctx) : ctx_(ctx)
{
    require_side(ctx, kMaxCells1D, "VilenkinTransform");
    for (int k = 0; k < ctx.level(); ++k) {
        const auto m = static_cast<std::size_t>(ctx.radix(k));
        std::vector<Complex> roots(m);
        for (std::size_t t = 0; t < m; ++t)
            roots[t] = unit_root(t, m);
        twiddles_.push_back(std::move(roots));
    }
}

void VilenkinTransform::run(std::span<Complex> data, std::size_t stride, bool inverse) const
{
    const std::size_t total = ctx_.size();
    if (stride == 0 || data.size() < (total - 1) * stride + 1)
        throw InvalidParameter("VilenkinTransform: buffer too short for M_N samples");

    std::vector<Complex> gathered;
    std::vector<Complex> out;
    for (int k = 0; k < ctx_.level(); ++k) {
        const auto m = static_cast<std::size_t>(ctx_.radix(k));
        const std::size_t step = ctx_.scale(k);
        const std::size_t block = ctx_.scale(k + 1);
        const auto& roots = twiddles_[static_cast<std::size_t>(k)];
        gathered.resize(m);
        out.resize(m);
        for (std::size_t base = 0; base < total; base += block) {
            for (std::size_t r = 0; r < step; ++r) {
                const std::size_t first = base + r;
                for (std::size_t j = 0; j < m; ++j)
                    gathered[j] = data[(first + j * step) * stride];
                // Terms j and m - j carry conjugate twiddles; pairing them
                // makes equal inputs cancel exactly for m in {2, 3, 4}.
                for (std::size_t l = 0; l < m; ++l) {
                    Complex acc = gathered[0];
                    for (std::size_t j = 1; 2 * j < m; ++j) {
                        const Complex w = roots[(j * l) % m];
                        const double im = inverse ? w.imag() : -w.imag();
                        const Complex s = gathered[j] + gathered[m - j];
                        const Complex d = gathered[j] - gathered[m - j];
                        acc += s * w.real() + Complex(-d.imag() * im, d.real() * im);
                    }
                    if (m % 2 == 0)
                        acc += gathered[m / 2] * roots[(m / 2 * l) % m].real();
                    out[l] = acc;
                }
                for (std::size_t l = 0; l < m; ++l)
                    data[(first + l * step) * stride] = out[l];
            }
        }
    }
    if (!inverse) {
        const double scale = 1.0 / static_cast<double>(total);
        for (std::size_t i = 0; i < total; ++i)
            data[i * stride] *= scale;
    }
}

void VilenkinTransform::forward(std::span<Complex> data, std::size_t stride) const
{
    run(data, stride, false);
}

void VilenkinTransform::inverse(std::span<Complex> data, std::size_t stride) const
{
    run(data, stride, true);
}

void VilenkinTransform::forward_2d(std::span<Complex> grid) const
{
    const std::size_t side = ctx_.size();
    require_side(ctx_, kMaxCells2D, "forward_2d");
    require_length(grid.size(), side * side, "forward_2d");
    for (std::size_t x = 0; x < side; ++x)
        run(grid.subspan(x * side, side), 1, false);
    for (std::size_t y = 0; y < side; ++y)
        run(grid.subspan(y), side, false);
}

void VilenkinTransform::inverse_2d(std::span<Complex> grid) const
{
    const std::size_t side = ctx_.size();
    require_side(ctx_, kMaxCells2D, "inverse_2d");
    require_length(grid.size(), side * side, "inverse_2d");
    for (std::size_t x = 0; x < side; ++x)
        run(grid.subspan(x * side, side), 1, true);
    for (std::size_t y = 0; y < side; ++y)
        run(grid.subspan(y), side, true);
}

SpectralGrid1D fvt_forward(const SampledFunction1D& f)
{
    std::vector<Complex> data = f.values;
    VilenkinTransform(f.ctx).forward(data);
    return SpectralGrid1D(f.ctx, std::move(data));
}

SampledFunction1D fvt_inverse(const SpectralGrid1D& spectrum)
{
    std::vector<Complex> data = spectrum.coefficients;
    VilenkinTransform(spectrum.ctx).inverse(data);
    return SampledFunction1D(spectrum.ctx, std::move(data));
}

SpectralGrid2D fvt_forward(const SampledFunction2D& f)
{
    std::vector<Complex> data = f.values;
    VilenkinTransform(f.ctx).forward_2d(data);
    return SpectralGrid2D(f.ctx, std::move(data));
}

SampledFunction2D fvt_inverse(const SpectralGrid2D& spectrum)
{
    std::vector<Complex> data = spectrum.coefficients;
    VilenkinTransform(spectrum.ctx).inverse_2d(data);
    return SampledFunction2D(spectrum.ctx, std::move(data));
}

SampledFunction2D partial_sum_rect(const SpectralGrid2D& spectrum, std::size_t n1, std::size_t n2)
{
    const std::size_t side = spectrum.side();
    if (n1 > side || n2 > side)
        throw ResolutionExceeded("partial sum index exceeds M_N");
    std::vector<Complex> data(side * side);
    for (std::size_t k1 = 0; k1 < n1; ++k1)
        for (std::size_t k2 = 0; k2 < n2; ++k2)
            data[k1 * side + k2] = spectrum(k1, k2);
    VilenkinTransform(spectrum.ctx).inverse_2d(data);
    return SampledFunction2D(spectrum.ctx, std::move(data));
}

SampledFunction2D marginal_partial_sum(const SpectralGrid2D& spectrum, int axis, std::size_t n)
{
    if (axis != 1 && axis != 2)
        throw InvalidParameter("marginal partial sum axis must be 1 or 2");
    const std::size_t side = spectrum.side();
    return axis == 1 ? partial_sum_rect(spectrum, n, side) : partial_sum_rect(spectrum, side, n);
}

} // namespace vilenkin
