#include "vilenkin/verify.hpp"

#include "vilenkin/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <random>

namespace vilenkin {

namespace {

constexpr std::array kDefaultClaims{Claim::theorem1, Claim::theorem2, Claim::lemma1,
                                    Claim::lemma4,   Claim::lemma5,   Claim::eq23};

void require_alpha(double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InvalidParameter("alpha must lie in (0, 1)");
}

// Portable uniform draw in [-1, 1) from a 64-bit engine.
double symmetric_uniform(std::mt19937_64& gen)
{
    return static_cast<double>(gen() >> 11) * 0x1p-52 - 1.0;
}

std::vector<std::size_t> parse_arguments(std::string_view inner, std::string_view text)
{
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    while (pos <= inner.size()) {
        const std::size_t comma = inner.find(',', pos);
        std::string_view item = inner.substr(pos, comma == std::string_view::npos ? inner.npos : comma - pos);
        while (!item.empty() && item.front() == ' ')
            item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ')
            item.remove_suffix(1);
        std::size_t value = 0;
        const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (item.empty() || ec != std::errc{} || end != item.data() + item.size())
            throw InvalidParameter("cannot parse function family '" + std::string(text) + "'");
        out.push_back(value);
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

// rhs of Theorems 1-2 for exponent slot i; `factor` multiplies the level
// k-1 terms (1 for Theorem 1, log n for Theorem 2).
double theorem_rhs(const FunctionAnalysis& fa, std::size_t i, double alpha, int k, double factor)
{
    const GroupContext& ctx = fa.context();
    const PartialModuli& w = fa.moduli();
    const double mk = static_cast<double>(ctx.scale(k));
    const auto km1 = static_cast<std::size_t>(k - 1);
    double rhs = (w.omega1[km1][i] + w.omega2[km1][i]) * std::pow(mk, alpha) * factor;
    for (int r = 0; r <= k - 2; ++r) {
        const auto ri = static_cast<std::size_t>(r);
        rhs += static_cast<double>(ctx.scale(r)) / mk * (w.omega1[ri][i] + w.omega2[ri][i]);
    }
    return rhs;
}

std::vector<RatioReport> theorem_reports(const FunctionAnalysis& fa, Claim claim, double alpha, int k,
                                         std::size_t n, double factor)
{
    const SampledFunction2D deviation = cesaro_deviation(fa.spectrum(), n, alpha);
    std::vector<RatioReport> out;
    for (std::size_t i = 0; i < fa.exponents().size(); ++i) {
        RatioReport r;
        r.claim = claim;
        r.alpha = alpha;
        r.p = fa.exponents()[i];
        r.k = static_cast<std::size_t>(k);
        r.n = n;
        r.lhs = lp_norm(deviation, *r.p);
        r.rhs = theorem_rhs(fa, i, alpha, k, factor);
        r.ratio = report_ratio(r.lhs, r.rhs);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<double> shifted_cesaro(double alpha, std::size_t top, std::size_t count)
{
    // c_i = A_{top-i}^{-alpha-1}, i = 1..count
    const CesaroNumberTable a = cesaro_numbers(-alpha - 1.0, top - 1);
    std::vector<double> c(count);
    for (std::size_t i = 1; i <= count; ++i)
        c[i - 1] = a[top - i];
    return c;
}

} // namespace

std::string to_string(Claim claim)
{
    switch (claim) {
    case Claim::theorem1:
        return "theorem1";
    case Claim::theorem2:
        return "theorem2";
    case Claim::lemma1:
        return "lemma1";
    case Claim::lemma0:
        return "lemma0";
    case Claim::lemma4:
        return "lemma4";
    case Claim::lemma5:
        return "lemma5";
    case Claim::eq23:
        return "eq23";
    }
    return "unknown";
}

Claim parse_claim(std::string_view token)
{
    for (Claim c : {Claim::theorem1, Claim::theorem2, Claim::lemma1, Claim::lemma0, Claim::lemma4, Claim::lemma5,
                    Claim::eq23})
        if (token == to_string(c))
            return c;
    throw InvalidParameter("unknown claim '" + std::string(token) + "'");
}

std::span<const Claim> default_claims()
{
    return kDefaultClaims;
}

double report_ratio(double lhs, double rhs)
{
    if (rhs == 0.0)
        return lhs == 0.0 ? 0.0 : kInfinity;
    return lhs / rhs;
}

TailDecomposition tail_decompose(const GroupContext& ctx, std::size_t n)
{
    if (n == 0)
        throw InvalidParameter("tail decomposition needs n >= 1");
    const IndexExpansion e = index_expand(ctx, n);
    TailDecomposition out;
    out.n = n;
    std::size_t remaining = n;
    for (int k = ctx.level() - 1; k >= 0; --k) {
        const int digit = e.digits[static_cast<std::size_t>(k)];
        if (digit == 0)
            continue;
        out.levels.push_back(k);
        out.digits.push_back(digit);
        out.tails.push_back(remaining);
        remaining -= static_cast<std::size_t>(digit) * ctx.scale(k);
    }
    return out;
}

FunctionFamily FunctionFamily::character(std::size_t a, std::size_t b)
{
    FunctionFamily f;
    f.kind = Kind::character;
    f.a = a;
    f.b = b;
    return f;
}

FunctionFamily FunctionFamily::cylinder(int level)
{
    FunctionFamily f;
    f.kind = Kind::cylinder;
    f.level = level;
    return f;
}

FunctionFamily FunctionFamily::random_poly(std::size_t degree, std::uint64_t seed)
{
    FunctionFamily f;
    f.kind = Kind::random_poly;
    f.degree = degree;
    f.seed = seed;
    return f;
}

FunctionFamily FunctionFamily::random_cell(std::uint64_t seed)
{
    FunctionFamily f;
    f.kind = Kind::random_cell;
    f.seed = seed;
    return f;
}

FunctionFamily FunctionFamily::parse(std::string_view text)
{
    const std::size_t open = text.find('(');
    if (open == std::string_view::npos || text.empty() || text.back() != ')')
        throw InvalidParameter("cannot parse function family '" + std::string(text) + "'");
    const std::string_view name = text.substr(0, open);
    const auto args = parse_arguments(text.substr(open + 1, text.size() - open - 2), text);
    auto expect = [&](std::size_t count) {
        if (args.size() != count)
            throw InvalidParameter("function family '" + std::string(text) + "' expects " + std::to_string(count) +
                                   " arguments");
    };
    if (name == "character") {
        expect(2);
        return character(args[0], args[1]);
    }
    if (name == "cylinder") {
        expect(1);
        return cylinder(static_cast<int>(args[0]));
    }
    if (name == "random_poly") {
        expect(2);
        return random_poly(args[0], args[1]);
    }
    if (name == "random_cell") {
        expect(1);
        return random_cell(args[0]);
    }
    throw InvalidParameter("unknown function family '" + std::string(name) + "'");
}

std::string FunctionFamily::label() const
{
    switch (kind) {
    case Kind::character:
        return "character(" + std::to_string(a) + "," + std::to_string(b) + ")";
    case Kind::cylinder:
        return "cylinder(" + std::to_string(level) + ")";
    case Kind::random_poly:
        return "random_poly(" + std::to_string(degree) + ")";
    case Kind::random_cell:
        return "random_cell";
    }
    return "unknown";
}

std::optional<std::uint64_t> FunctionFamily::seed_value() const
{
    if (kind == Kind::random_poly || kind == Kind::random_cell)
        return seed;
    return std::nullopt;
}

SampledFunction2D FunctionFamily::generate(const GroupContext& ctx) const
{
    const std::size_t side = ctx.size();
    SampledFunction2D f = SampledFunction2D::zeros(ctx);
    switch (kind) {
    case Kind::character: {
        if (a >= side || b >= side)
            throw ResolutionExceeded("character index exceeds M_N");
        const CharacterTable chars(ctx);
        for (std::size_t x = 0; x < side; ++x)
            for (std::size_t y = 0; y < side; ++y)
                f(x, y) = chars(a, x) * chars(b, y);
        break;
    }
    case Kind::cylinder: {
        if (level < 0 || level > ctx.level())
            throw ResolutionExceeded("cylinder level exceeds N");
        const std::size_t scale = ctx.scale(level);
        for (std::size_t x = 0; x < side; x += scale)
            for (std::size_t y = 0; y < side; y += scale)
                f(x, y) = 1.0;
        break;
    }
    case Kind::random_poly: {
        if (degree == 0 || degree > side)
            throw ResolutionExceeded("polynomial degree must lie in [1, M_N]");
        std::mt19937_64 gen(seed);
        SpectralGrid2D spectrum(ctx, std::vector<Complex>(side * side));
        for (std::size_t k1 = 0; k1 < degree; ++k1)
            for (std::size_t k2 = 0; k2 < degree; ++k2) {
                const double re = symmetric_uniform(gen);
                const double im = symmetric_uniform(gen);
                spectrum(k1, k2) = Complex(re, im);
            }
        f = fvt_inverse(spectrum);
        break;
    }
    case Kind::random_cell: {
        std::mt19937_64 gen(seed);
        for (Complex& v : f.values)
            v = symmetric_uniform(gen);
        break;
    }
    }
    return f;
}

std::vector<FunctionFamily> default_corpus(const GroupContext& ctx)
{
    const std::size_t side = ctx.size();
    const std::size_t top = ctx.scale(ctx.level() - 1);
    std::vector<FunctionFamily> corpus{
        FunctionFamily::character(0, 0),
        FunctionFamily::character(1, 0),
        FunctionFamily::character(0, 1),
        FunctionFamily::character(1, 1),
        FunctionFamily::character(top, top),
        FunctionFamily::character(side - 1, side - 1),
    };
    for (int level = 1; level <= ctx.level(); ++level)
        corpus.push_back(FunctionFamily::cylinder(level));
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const int level = 1 + static_cast<int>((seed - 1) % static_cast<std::uint64_t>(ctx.level()));
        corpus.push_back(FunctionFamily::random_poly(ctx.scale(level), seed));
    }
    for (std::uint64_t seed = 1; seed <= 3; ++seed)
        corpus.push_back(FunctionFamily::random_cell(seed));
    return corpus;
}

FunctionAnalysis::FunctionAnalysis(SampledFunction2D f, std::span<const double> exponents)
    : f_(std::move(f)), spectrum_(fvt_forward(f_)), moduli_(partial_moduli(f_, exponents))
{
}

std::vector<RatioReport> theorem1_reports(const FunctionAnalysis& fa, double alpha, int k)
{
    require_alpha(alpha);
    if (k < 1)
        throw InvalidParameter("Theorem 1 needs k >= 1");
    if (k > fa.context().level())
        throw ResolutionExceeded("Theorem 1 level k exceeds N");
    return theorem_reports(fa, Claim::theorem1, alpha, k, fa.context().scale(k), 1.0);
}

RatioReport theorem1_report(const SampledFunction2D& f, double alpha, int k, double p)
{
    const double exponents[] = {p};
    return theorem1_reports(FunctionAnalysis(f, exponents), alpha, k).front();
}

double log_factor(std::size_t n)
{
    return n < 3 ? 1.0 : std::log(static_cast<double>(n));
}

std::vector<RatioReport> theorem2_reports(const FunctionAnalysis& fa, double alpha, std::size_t n)
{
    require_alpha(alpha);
    const GroupContext& ctx = fa.context();
    if (n < 2)
        throw InvalidParameter("Theorem 2 needs n >= 2");
    if (n >= ctx.size())
        throw ResolutionExceeded("Theorem 2 index n must be below M_N");
    const int k = *index_expand(ctx, n).order;
    if (k < 1)
        throw InvalidParameter("Theorem 2 needs M_1 <= n so that M_{k-1} exists");
    return theorem_reports(fa, Claim::theorem2, alpha, k, n, log_factor(n));
}

RatioReport theorem2_report(const SampledFunction2D& f, double alpha, std::size_t n, double p)
{
    const double exponents[] = {p};
    return theorem2_reports(FunctionAnalysis(f, exponents), alpha, n).front();
}

double kernel_integral_2d(const DirichletTable& d, std::span<const double> coeffs)
{
    if (coeffs.size() > d.max_index())
        throw ResolutionExceeded("kernel sum longer than the Dirichlet table");
    const std::size_t side = d.context().size();
    std::vector<Complex> weighted(coeffs.size());
    std::vector<Complex> acc(side);
    double total = 0.0;
    for (std::size_t u = 0; u < side; ++u) {
        for (std::size_t i = 1; i <= coeffs.size(); ++i)
            weighted[i - 1] = coeffs[i - 1] * d.at(i, u);
        std::fill(acc.begin(), acc.end(), Complex{});
        for (std::size_t i = 1; i <= coeffs.size(); ++i) {
            const Complex g = weighted[i - 1];
            const auto row = d.row(i);
            for (std::size_t v = 0; v < side; ++v)
                acc[v] += g * row[v];
        }
        for (const Complex& s : acc)
            total += std::abs(s);
    }
    return total / (static_cast<double>(side) * static_cast<double>(side));
}

double kernel_integral_1d(const DirichletTable& d, std::span<const double> coeffs)
{
    if (coeffs.size() > d.max_index())
        throw ResolutionExceeded("kernel sum longer than the Dirichlet table");
    const std::size_t side = d.context().size();
    std::vector<Complex> acc(side);
    for (std::size_t i = 1; i <= coeffs.size(); ++i) {
        const auto row = d.row(i);
        for (std::size_t u = 0; u < side; ++u)
            acc[u] += coeffs[i - 1] * row[u];
    }
    double total = 0.0;
    for (const Complex& s : acc)
        total += std::abs(s);
    return total / static_cast<double>(side);
}

Lemma1Reports lemma1_report(const DirichletTable& d, std::span<const double> coeffs)
{
    if (coeffs.empty())
        throw InvalidParameter("Lemma 1 needs at least one coefficient");
    if (coeffs.size() > d.context().size())
        throw ResolutionExceeded("Lemma 1 length exceeds M_N");
    const auto n = static_cast<double>(coeffs.size());
    double squares = 0.0;
    for (double c : coeffs)
        squares += c * c;
    const double rhs = std::sqrt(squares) / std::sqrt(n);

    Lemma1Reports out;
    out.two_d.claim = Claim::lemma1;
    out.two_d.n = coeffs.size();
    out.two_d.lhs = kernel_integral_2d(d, coeffs) / n;
    out.two_d.rhs = rhs;
    out.two_d.ratio = report_ratio(out.two_d.lhs, rhs);

    out.one_d.claim = Claim::lemma0;
    out.one_d.n = coeffs.size();
    out.one_d.lhs = kernel_integral_1d(d, coeffs) / n;
    out.one_d.rhs = rhs;
    out.one_d.ratio = report_ratio(out.one_d.lhs, rhs);
    return out;
}

Lemma1Reports lemma1_report(const GroupContext& ctx, std::span<const double> coeffs)
{
    if (coeffs.size() > ctx.size())
        throw ResolutionExceeded("Lemma 1 length exceeds M_N");
    return lemma1_report(DirichletTable(ctx, coeffs.size()), coeffs);
}

double lemma4_integral(const DirichletTable& d, double alpha, int k, std::size_t p)
{
    require_alpha(alpha);
    const GroupContext& ctx = d.context();
    if (k < 0 || k > ctx.level())
        throw ResolutionExceeded("Lemma 4 level k exceeds N");
    const std::size_t mk = ctx.scale(k);
    if (p < mk)
        throw InvalidParameter("Lemma 4 needs p >= M_k");
    return kernel_integral_2d(d, shifted_cesaro(alpha, p, mk));
}

Lemma4Result lemma4_report(const DirichletTable& d, double alpha, int k, std::span<const std::size_t> ps)
{
    if (ps.empty())
        throw InvalidParameter("Lemma 4 needs a non-empty p range");
    Lemma4Result out;
    out.ps.assign(ps.begin(), ps.end());
    double best = 0.0;
    for (std::size_t p : ps) {
        const double value = lemma4_integral(d, alpha, k, p);
        out.values.push_back(value);
        best = std::max(best, value);
    }
    out.report.claim = Claim::lemma4;
    out.report.family = "kernel";
    out.report.alpha = alpha;
    out.report.k = static_cast<std::size_t>(k);
    out.report.lhs = best;
    out.report.rhs = 1.0;
    out.report.ratio = best;
    return out;
}

Lemma4Result lemma4_report(const GroupContext& ctx, double alpha, int k, std::span<const std::size_t> ps)
{
    if (k < 0 || k > ctx.level())
        throw ResolutionExceeded("Lemma 4 level k exceeds N");
    return lemma4_report(DirichletTable(ctx, ctx.scale(k)), alpha, k, ps);
}

double lemma5_integral(const DirichletTable& d, double alpha, std::size_t n)
{
    require_alpha(alpha);
    if (n == 0)
        throw InvalidParameter("Lemma 5 needs n >= 1");
    if (n >= d.context().size())
        throw ResolutionExceeded("Lemma 5 index n must be below M_N");
    return kernel_integral_2d(d, shifted_cesaro(alpha, n, n));
}

Lemma5Result lemma5_report(const DirichletTable& d, double alpha, std::size_t n)
{
    Lemma5Result out;
    const double value = lemma5_integral(d, alpha, n);
    out.tails = tail_decompose(d.context(), n);
    out.report.claim = Claim::lemma5;
    out.report.family = "tails(" + std::to_string(out.tails.size()) + ")";
    out.report.alpha = alpha;
    out.report.k = static_cast<std::size_t>(out.tails.levels.front());
    out.report.n = n;
    out.report.lhs = value;
    out.report.rhs = log_factor(n);
    out.report.ratio = report_ratio(value, out.report.rhs);
    return out;
}

Lemma5Result lemma5_report(const GroupContext& ctx, double alpha, std::size_t n)
{
    if (n >= ctx.size())
        throw ResolutionExceeded("Lemma 5 index n must be below M_N");
    return lemma5_report(DirichletTable(ctx, n), alpha, n);
}

std::vector<double> eq23_profile(const DirichletTable& d, double alpha, std::size_t n)
{
    require_alpha(alpha);
    const GroupContext& ctx = d.context();
    if (n == 0)
        throw InvalidParameter("the pointwise kernel bound needs n >= 1");
    if (n >= ctx.size())
        throw ResolutionExceeded("kernel index n must be below M_N");
    if (n > d.max_index())
        throw ResolutionExceeded("kernel sum longer than the Dirichlet table");
    const std::vector<double> c = shifted_cesaro(alpha, n, n);
    std::vector<double> profile(ctx.size(), 0.0);
    for (std::size_t u = 1; u < ctx.size(); ++u) {
        Complex sum{};
        for (std::size_t i = 1; i <= n; ++i)
            sum += c[i - 1] * d.at(i, u);
        const double radius = norm_map(ctx, cell_element(ctx, u));
        profile[u] = std::abs(sum) * std::pow(radius, 1.0 - alpha);
    }
    return profile;
}

RatioReport eq23_report(const DirichletTable& d, double alpha, std::size_t n)
{
    const std::vector<double> profile = eq23_profile(d, alpha, n);
    RatioReport r;
    r.claim = Claim::eq23;
    r.family = "kernel";
    r.alpha = alpha;
    r.n = n;
    r.lhs = *std::max_element(profile.begin(), profile.end());
    r.rhs = 1.0;
    r.ratio = r.lhs;
    return r;
}

RatioReport eq23_report(const GroupContext& ctx, double alpha, std::size_t n)
{
    if (n >= ctx.size())
        throw ResolutionExceeded("kernel index n must be below M_N");
    return eq23_report(DirichletTable(ctx, n), alpha, n);
}

} // namespace vilenkin
