#include "vilenkin/approx.hpp"

#include "vilenkin/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>

namespace vilenkin {

namespace {

void require_exponent(double p)
{
    if (std::isnan(p) || p < 1.0)
        throw InvalidParameter("L^p exponent must satisfy p >= 1");
}

void require_alpha(double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InvalidParameter("alpha must lie in (0, 1)");
}

void require_level(const GroupContext& ctx, int level)
{
    if (level < 0 || level > ctx.level())
        throw ResolutionExceeded("modulus level " + std::to_string(level) + " is beyond level " +
                                 std::to_string(ctx.level()));
}

// Running sums for several exponents over one difference function.
class NormAccumulator {
public:
    explicit NormAccumulator(std::span<const double> exponents)
        : exponents_(exponents), sums_(exponents.size(), 0.0)
    {
    }

    void add(Complex d)
    {
        const double a = std::abs(d);
        ++count_;
        for (std::size_t i = 0; i < exponents_.size(); ++i) {
            const double p = exponents_[i];
            if (std::isinf(p))
                sums_[i] = std::max(sums_[i], a);
            else if (p == 1.0)
                sums_[i] += a;
            else if (p == 2.0)
                sums_[i] += a * a;
            else
                sums_[i] += std::pow(a, p);
        }
    }

    double norm(std::size_t i) const
    {
        const double p = exponents_[i];
        if (std::isinf(p))
            return sums_[i];
        const double mean = sums_[i] / static_cast<double>(count_);
        if (p == 1.0)
            return mean;
        if (p == 2.0)
            return std::sqrt(mean);
        return std::pow(mean, 1.0 / p);
    }

private:
    std::span<const double> exponents_;
    std::vector<double> sums_;
    std::size_t count_ = 0;
};

// Shift representatives of I_level: the cells t * M_level.
std::vector<std::size_t> interval_shifts(const GroupContext& ctx, int level)
{
    std::vector<std::size_t> shifts;
    for (std::size_t s = 0; s < ctx.size(); s += ctx.scale(level))
        shifts.push_back(s);
    return shifts;
}

std::vector<std::vector<std::size_t>> translations(const GroupContext& ctx, std::span<const std::size_t> shifts)
{
    std::vector<std::vector<std::size_t>> tables;
    tables.reserve(shifts.size());
    for (std::size_t s : shifts)
        tables.push_back(translation_table(ctx, s));
    return tables;
}

SampledFunction2D synthesize_weighted(const SpectralGrid2D& spectrum, std::span<const double> by_max,
                                      double beyond)
{
    const std::size_t side = spectrum.side();
    std::vector<Complex> data(side * side);
    for (std::size_t k1 = 0; k1 < side; ++k1)
        for (std::size_t k2 = 0; k2 < side; ++k2) {
            const std::size_t mx = std::max(k1, k2);
            const double w = mx < by_max.size() ? by_max[mx] : beyond;
            data[k1 * side + k2] = w * spectrum(k1, k2);
        }
    VilenkinTransform(spectrum.ctx).inverse_2d(data);
    return SampledFunction2D(spectrum.ctx, std::move(data));
}

} // namespace

double parse_exponent(std::string_view token)
{
    if (token == "inf" || token == "infinity" || token == "Inf")
        return kInfinity;
    double p = 0.0;
    try {
        std::size_t used = 0;
        p = std::stod(std::string(token), &used);
        if (used != token.size())
            throw InvalidParameter("cannot parse exponent '" + std::string(token) + "'");
    } catch (const std::logic_error&) {
        throw InvalidParameter("cannot parse exponent '" + std::string(token) + "'");
    }
    require_exponent(p);
    return p;
}

std::string exponent_token(double p)
{
    if (std::isinf(p))
        return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", p);
    return buf;
}

double lp_norm(std::span<const Complex> values, double p)
{
    require_exponent(p);
    if (values.empty())
        throw InvalidParameter("lp_norm of an empty sample set");
    const double exponents[] = {p};
    NormAccumulator acc(exponents);
    for (const Complex& v : values)
        acc.add(v);
    return acc.norm(0);
}

double lp_norm(const SampledFunction2D& f, double p)
{
    return lp_norm(std::span<const Complex>(f.values), p);
}

CesaroWeights cesaro_weights(std::size_t n, double alpha)
{
    require_alpha(alpha);
    if (n == 0)
        throw InvalidParameter("Cesaro means need n >= 1");
    const CesaroNumberTable a = cesaro_numbers(-alpha, n - 1);
    CesaroWeights out{n, alpha, std::vector<double>(n)};
    for (std::size_t mx = 0; mx < n; ++mx)
        out.w[mx] = a[n - 1 - mx] / a[n - 1];
    return out;
}

SampledFunction2D cesaro_mean(const SpectralGrid2D& spectrum, std::size_t n, double alpha)
{
    if (n > spectrum.side())
        throw ResolutionExceeded("Cesaro mean index exceeds M_N");
    const CesaroWeights weights = cesaro_weights(n, alpha);
    return synthesize_weighted(spectrum, weights.w, 0.0);
}

SampledFunction2D cesaro_deviation(const SpectralGrid2D& spectrum, std::size_t n, double alpha)
{
    if (n > spectrum.side())
        throw ResolutionExceeded("Cesaro mean index exceeds M_N");
    CesaroWeights weights = cesaro_weights(n, alpha);
    for (double& w : weights.w)
        w -= 1.0;
    return synthesize_weighted(spectrum, weights.w, -1.0);
}

std::string to_string(ModulusKind kind)
{
    switch (kind) {
    case ModulusKind::omega1:
        return "omega1";
    case ModulusKind::omega2:
        return "omega2";
    case ModulusKind::omega12:
        return "omega12";
    case ModulusKind::total:
        return "total";
    }
    return "unknown";
}

ModulusReport modulus(const SampledFunction2D& f, ModulusKind kind, int level, double p)
{
    return modulus(f, kind, level, level, p);
}

ModulusReport modulus(const SampledFunction2D& f, ModulusKind kind, int level, int level2, double p)
{
    const GroupContext& ctx = f.ctx;
    require_level(ctx, level);
    require_level(ctx, level2);
    require_exponent(p);
    const std::size_t side = ctx.size();
    const double exponents[] = {p};

    const auto first = interval_shifts(ctx, level);
    const auto second = interval_shifts(ctx, kind == ModulusKind::omega12 ? level2 : level);
    const auto tx = translations(ctx, first);
    const auto ty = translations(ctx, second);

    double best = 0.0;
    auto consider = [&](auto&& difference) {
        NormAccumulator acc(exponents);
        for (std::size_t x = 0; x < side; ++x)
            for (std::size_t y = 0; y < side; ++y)
                acc.add(difference(x, y));
        best = std::max(best, acc.norm(0));
    };

    switch (kind) {
    case ModulusKind::omega1:
        for (const auto& t : tx)
            consider([&](std::size_t x, std::size_t y) { return f(t[x], y) - f(x, y); });
        break;
    case ModulusKind::omega2:
        for (const auto& t : ty)
            consider([&](std::size_t x, std::size_t y) { return f(x, t[y]) - f(x, y); });
        break;
    case ModulusKind::omega12:
        for (const auto& u : tx)
            for (const auto& v : ty)
                consider([&](std::size_t x, std::size_t y) {
                    return f(u[x], v[y]) - f(u[x], y) - f(x, v[y]) + f(x, y);
                });
        break;
    case ModulusKind::total:
        for (const auto& u : tx)
            for (const auto& v : ty)
                consider([&](std::size_t x, std::size_t y) { return f(u[x], v[y]) - f(x, y); });
        break;
    }
    return ModulusReport{kind, level, kind == ModulusKind::omega12 ? level2 : level, p, best};
}

PartialModuli partial_moduli(const SampledFunction2D& f, std::span<const double> exponents)
{
    for (double p : exponents)
        require_exponent(p);
    const GroupContext& ctx = f.ctx;
    const std::size_t side = ctx.size();
    const std::size_t np = exponents.size();

    // Norms of every single-axis difference; the level-r modulus is the
    // maximum over the shifts that are multiples of M_r.
    std::vector<std::vector<double>> by_shift1(side, std::vector<double>(np));
    std::vector<std::vector<double>> by_shift2(side, std::vector<double>(np));
    for (std::size_t s = 0; s < side; ++s) {
        const auto t = translation_table(ctx, s);
        NormAccumulator acc1(exponents);
        NormAccumulator acc2(exponents);
        for (std::size_t x = 0; x < side; ++x)
            for (std::size_t y = 0; y < side; ++y) {
                acc1.add(f(t[x], y) - f(x, y));
                acc2.add(f(x, t[y]) - f(x, y));
            }
        for (std::size_t i = 0; i < np; ++i) {
            by_shift1[s][i] = acc1.norm(i);
            by_shift2[s][i] = acc2.norm(i);
        }
    }

    PartialModuli out;
    out.exponents.assign(exponents.begin(), exponents.end());
    for (int level = 0; level <= ctx.level(); ++level) {
        std::vector<double> w1(np, 0.0);
        std::vector<double> w2(np, 0.0);
        for (std::size_t s = 0; s < side; s += ctx.scale(level))
            for (std::size_t i = 0; i < np; ++i) {
                w1[i] = std::max(w1[i], by_shift1[s][i]);
                w2[i] = std::max(w2[i], by_shift2[s][i]);
            }
        out.omega1.push_back(std::move(w1));
        out.omega2.push_back(std::move(w2));
    }
    return out;
}

} // namespace vilenkin
