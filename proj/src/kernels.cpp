#include "vilenkin/kernels.hpp"

#include "vilenkin/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace vilenkin {

Complex unit_root(std::size_t t, std::size_t order)
{
    t %= order;
    if (t == 0)
        return {1.0, 0.0};
    if (2 * t > order)
        return std::conj(unit_root(order - t, order));
    if (2 * t == order)
        return {-1.0, 0.0};
    if (4 * t == order)
        return {0.0, 1.0};
    // long double keeps the rounded result correct for the small radices
    // (e.g. cos(2 pi / 3) rounds to exactly -0.5).
    const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(t) /
                              static_cast<long double>(order);
    return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

std::size_t character_phase(const GroupContext& ctx, std::size_t n, std::size_t cell)
{
    if (n >= ctx.size())
        throw ResolutionExceeded("character index " + std::to_string(n) + " is not below M_N");
    if (cell >= ctx.size())
        throw ResolutionExceeded("cell index exceeds M_N");
    const std::size_t total = ctx.size();
    std::size_t phase = 0;
    for (int k = 0; k < ctx.level(); ++k) {
        const auto m = static_cast<std::size_t>(ctx.radix(k));
        const std::size_t step = total / m;
        phase = (phase + (n % m) * (cell % m) % m * step) % total;
        n /= m;
        cell /= m;
    }
    return phase;
}

CharacterTable::CharacterTable(const GroupContext& ctx) : ctx_(ctx)
{
    roots_.resize(ctx.size());
    for (std::size_t t = 0; t < roots_.size(); ++t)
        roots_[t] = unit_root(t, roots_.size());
    for (int k = 0; k < ctx.level(); ++k)
        steps_.push_back(ctx.size() / static_cast<std::size_t>(ctx.radix(k)));
}

Complex CharacterTable::operator()(std::size_t n, std::size_t cell) const
{
    if (n >= ctx_.size() || cell >= ctx_.size())
        throw ResolutionExceeded("character or cell index exceeds M_N");
    const std::size_t total = ctx_.size();
    std::size_t phase = 0;
    for (int k = 0; k < ctx_.level(); ++k) {
        const auto m = static_cast<std::size_t>(ctx_.radix(k));
        phase += (n % m) * (cell % m) % m * steps_[static_cast<std::size_t>(k)];
        n /= m;
        cell /= m;
    }
    return roots_[phase % total];
}

Complex rademacher(const GroupContext& ctx, int k, const GroupElement& x)
{
    if (k < 0 || k >= ctx.level())
        throw ResolutionExceeded("Rademacher coordinate " + std::to_string(k) + " is beyond level " +
                                 std::to_string(ctx.level()));
    validate(ctx, x);
    return unit_root(static_cast<std::size_t>(x.digit(k)), static_cast<std::size_t>(ctx.radix(k)));
}

Complex psi(const GroupContext& ctx, std::size_t n, const GroupElement& x)
{
    validate(ctx, x);
    return unit_root(character_phase(ctx, n, cell_index(ctx, x)), ctx.size());
}

Complex dirichlet(const GroupContext& ctx, std::size_t n, const GroupElement& x)
{
    if (n > ctx.size())
        throw ResolutionExceeded("Dirichlet index " + std::to_string(n) + " exceeds M_N");
    validate(ctx, x);
    const std::size_t cell = cell_index(ctx, x);
    Complex sum{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k)
        sum += unit_root(character_phase(ctx, k, cell), ctx.size());
    return sum;
}

DirichletTable::DirichletTable(const GroupContext& ctx, std::size_t max_index) : ctx_(ctx), max_index_(max_index)
{
    if (max_index > ctx.size())
        throw ResolutionExceeded("Dirichlet table index " + std::to_string(max_index) + " exceeds M_N");
    const std::size_t cells = ctx.size();
    const CharacterTable chars(ctx);
    values_.assign((max_index + 1) * cells, Complex{});
    for (std::size_t n = 1; n <= max_index; ++n) {
        const Complex* prev = values_.data() + (n - 1) * cells;
        Complex* cur = values_.data() + n * cells;
        for (std::size_t x = 0; x < cells; ++x)
            cur[x] = prev[x] + chars(n - 1, x);
    }
}

std::span<const Complex> DirichletTable::row(std::size_t n) const
{
    if (n > max_index_)
        throw ResolutionExceeded("Dirichlet index " + std::to_string(n) + " beyond table");
    return {values_.data() + n * ctx_.size(), ctx_.size()};
}

CesaroNumberTable cesaro_numbers(double beta, std::size_t max_index)
{
    if (!std::isfinite(beta))
        throw InvalidParameter("Cesaro exponent must be finite");
    if (max_index > kMaxCesaroIndex)
        throw InvalidParameter("Cesaro table length " + std::to_string(max_index) + " exceeds the 10^6 limit");
    std::vector<double> values(max_index + 1);
    values[0] = 1.0;
    for (std::size_t n = 1; n <= max_index; ++n) {
        const auto dn = static_cast<double>(n);
        values[n] = values[n - 1] * (beta + dn) / dn;
    }
    return CesaroNumberTable(beta, std::move(values));
}

double lemma2_check(const GroupContext& ctx, int level, int digit, std::size_t j)
{
    if (level < 0 || level >= ctx.level())
        throw ResolutionExceeded("Lemma 2 level beyond the truncation level");
    if (digit <= 0 || digit >= ctx.radix(level))
        throw InvalidParameter("Lemma 2 digit must satisfy 0 < n_s < m_s");
    const std::size_t block = static_cast<std::size_t>(digit) * ctx.scale(level);
    if (j >= block)
        throw InvalidParameter("Lemma 2 needs j < n_s M_s");

    const DirichletTable d(ctx, block);
    const CharacterTable chars(ctx);
    double residual = 0.0;
    for (std::size_t x = 0; x < ctx.size(); ++x) {
        const Complex lhs = d.at(block - j, x);
        const Complex rhs = d.at(block, x) - chars(block - 1, x) * std::conj(d.at(j, x));
        residual = std::max(residual, std::abs(lhs - rhs));
    }
    return residual;
}

double paley_check(const GroupContext& ctx, int level, int digit, std::size_t j, PaleyForm form)
{
    if (level < 0 || level >= ctx.level())
        throw ResolutionExceeded("Paley level beyond the truncation level");
    if (digit < 0 || digit >= ctx.radix(level))
        throw InvalidParameter("Paley digit must satisfy 0 <= n_A < m_A");
    const std::size_t scale = ctx.scale(level);
    if (j >= scale)
        throw InvalidParameter("Paley identity needs j < M_A");

    const std::size_t block = static_cast<std::size_t>(digit) * scale;
    const DirichletTable d(ctx, block + j > scale ? block + j : scale);
    const CharacterTable chars(ctx);
    double residual = 0.0;
    for (std::size_t x = 0; x < ctx.size(); ++x) {
        const Complex lhs = d.at(block + j, x);
        if (form != PaleyForm::block) {
            const Complex rhs = d.at(block, x) + chars(block, x) * d.at(j, x);
            residual = std::max(residual, std::abs(lhs - rhs));
        }
        if (form != PaleyForm::digit) {
            const Complex base = chars(scale, x);
            Complex geometric{0.0, 0.0};
            Complex power{1.0, 0.0};
            for (int q = 0; q < digit; ++q) {
                geometric += power;
                power *= base;
            }
            const Complex rhs = geometric * d.at(scale, x) + power * d.at(j, x);
            residual = std::max(residual, std::abs(lhs - rhs));
        }
    }
    return residual;
}

} // namespace vilenkin
