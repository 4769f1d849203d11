#include "vilenkin/cli.hpp"

#include "vilenkin/errors.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

namespace vilenkin::cli {

namespace {

using nlohmann::json;

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> items;
    std::string item;
    int depth = 0;
    for (char c : text) {
        if (c == '(')
            ++depth;
        else if (c == ')')
            --depth;
        if (c == ',' && depth == 0) {
            items.push_back(item);
            item.clear();
        } else if (c != ' ') {
            item += c;
        }
    }
    items.push_back(item);
    return items;
}

double parse_real(const std::string& token, const std::string& field)
{
    double value = 0.0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || end != token.data() + token.size())
        throw ConfigError(field + ": cannot parse number '" + token + "'");
    return value;
}

std::size_t parse_count(const std::string& token, const std::string& field)
{
    std::size_t value = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || end != token.data() + token.size())
        throw ConfigError(field + ": cannot parse nonnegative integer '" + token + "'");
    return value;
}

double exponent_from(const std::string& token, const std::string& field)
{
    try {
        return parse_exponent(token);
    } catch (const InvalidParameter& e) {
        throw ConfigError(field + ": " + e.what());
    }
}

// Config values may be given as a JSON array or a comma-separated string.
std::vector<std::string> tokens_of(const json& value, const std::string& field)
{
    std::vector<std::string> out;
    auto token = [&](const json& item) -> std::string {
        if (item.is_string())
            return item.get<std::string>();
        if (item.is_number_integer())
            return std::to_string(item.get<long long>());
        if (item.is_number())
            return format_short(item.get<double>());
        throw ConfigError("config field '" + field + "': expected number or string items");
    };
    if (value.is_array()) {
        for (const json& item : value)
            out.push_back(token(item));
    } else if (value.is_string()) {
        out = split_list(value.get<std::string>());
    } else {
        out.push_back(token(value));
    }
    return out;
}

template <class F>
auto field_guard(const std::string& field, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const ConfigError& e) {
        throw ConfigError("config field '" + field + "': " + e.what());
    } catch (const std::exception& e) {
        throw ConfigError("config field '" + field + "': " + e.what());
    }
}

// --- row generation -----------------------------------------------------

using Task = std::function<std::vector<RatioReport>()>;

RatioReport error_row(Claim claim, const std::string& family, std::optional<std::uint64_t> seed,
                      std::optional<double> alpha, std::optional<double> p, std::optional<std::size_t> k,
                      std::optional<std::size_t> n, const std::string& message)
{
    RatioReport r;
    r.claim = claim;
    r.family = family;
    r.seed = seed;
    r.alpha = alpha;
    r.p = p;
    r.k = k;
    r.n = n;
    r.lhs = std::nan("");
    r.rhs = std::nan("");
    r.ratio = std::nan("");
    r.error = message;
    return r;
}

bool wants(const RunConfig& config, Claim claim)
{
    return std::find(config.claims.begin(), config.claims.end(), claim) != config.claims.end();
}

std::vector<std::size_t> theorem1_levels(const RunConfig& config, const GroupContext& ctx)
{
    if (!config.ks.empty())
        return config.ks;
    std::vector<std::size_t> ks;
    for (int k = 1; k <= ctx.level(); ++k)
        ks.push_back(static_cast<std::size_t>(k));
    return ks;
}

std::vector<std::size_t> lemma4_levels(const RunConfig& config, const GroupContext& ctx)
{
    if (!config.ks.empty())
        return config.ks;
    std::vector<std::size_t> ks;
    for (int k = 0; k <= ctx.level(); ++k)
        ks.push_back(static_cast<std::size_t>(k));
    return ks;
}

std::vector<std::size_t> index_range(const RunConfig& config, std::size_t first, std::size_t last_exclusive)
{
    if (!config.ns.empty())
        return config.ns;
    std::vector<std::size_t> ns;
    for (std::size_t n = first; n < last_exclusive; ++n)
        ns.push_back(n);
    return ns;
}

std::vector<double> random_signs(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    std::vector<double> c(n);
    for (double& v : c)
        v = (gen() >> 63) ? 1.0 : -1.0;
    return c;
}

std::vector<double> cesaro_coefficients(double alpha, std::size_t n)
{
    const CesaroNumberTable a = cesaro_numbers(-alpha - 1.0, n - 1);
    std::vector<double> c(n);
    for (std::size_t i = 1; i <= n; ++i)
        c[i - 1] = a[n - i];
    return c;
}

void add_theorem_tasks(const RunConfig& config, const GroupContext& ctx, std::vector<Task>& tasks)
{
    const bool t1 = wants(config, Claim::theorem1);
    const bool t2 = wants(config, Claim::theorem2);
    if (!t1 && !t2)
        return;
    const std::vector<FunctionFamily> families = config.families.empty() ? default_corpus(ctx) : config.families;
    const auto ks = theorem1_levels(config, ctx);
    const auto ns = index_range(config, ctx.scale(1), ctx.size());
    for (const FunctionFamily& family : families) {
        tasks.push_back([&config, ctx, family, ks, ns, t1, t2] {
            std::vector<RatioReport> rows;
            const std::string label = family.label();
            const auto seed = family.seed_value();
            auto fail_all = [&](Claim claim, std::optional<double> alpha, std::optional<std::size_t> k,
                                std::optional<std::size_t> n, const std::string& message) {
                for (double p : config.exponents)
                    rows.push_back(error_row(claim, label, seed, alpha, p, k, n, message));
            };
            std::optional<FunctionAnalysis> fa;
            try {
                fa.emplace(family.generate(ctx), config.exponents);
            } catch (const std::exception& e) {
                for (double alpha : config.alphas) {
                    if (t1)
                        for (std::size_t k : ks)
                            fail_all(Claim::theorem1, alpha, k, std::nullopt, e.what());
                    if (t2)
                        for (std::size_t n : ns)
                            fail_all(Claim::theorem2, alpha, std::nullopt, n, e.what());
                }
                return rows;
            }
            for (double alpha : config.alphas) {
                if (t1)
                    for (std::size_t k : ks) {
                        try {
                            for (RatioReport& r : theorem1_reports(*fa, alpha, static_cast<int>(k))) {
                                r.family = label;
                                r.seed = seed;
                                rows.push_back(std::move(r));
                            }
                        } catch (const std::exception& e) {
                            fail_all(Claim::theorem1, alpha, k, std::nullopt, e.what());
                        }
                    }
                if (t2)
                    for (std::size_t n : ns) {
                        try {
                            for (RatioReport& r : theorem2_reports(*fa, alpha, n)) {
                                r.family = label;
                                r.seed = seed;
                                rows.push_back(std::move(r));
                            }
                        } catch (const std::exception& e) {
                            fail_all(Claim::theorem2, alpha, std::nullopt, n, e.what());
                        }
                    }
            }
            return rows;
        });
    }
}

void add_kernel_tasks(const RunConfig& config, const GroupContext& ctx,
                      const std::shared_ptr<const DirichletTable>& table, std::vector<Task>& tasks)
{
    const bool l1 = wants(config, Claim::lemma1);
    const bool l0 = wants(config, Claim::lemma0);
    for (double alpha : config.alphas) {
        if (l1 || l0) {
            const auto ns = index_range(config, 1, ctx.size() + 1);
            struct Source {
                std::string family;
                std::optional<std::uint64_t> seed;
            };
            std::vector<Source> sources{{"cesaro", std::nullopt}};
            for (std::uint64_t s : config.coefficient_seeds)
                sources.push_back({"random_sign", s});
            for (const Source& source : sources)
                tasks.push_back([table, ctx, alpha, ns, source, l1, l0] {
                    std::vector<RatioReport> rows;
                    for (std::size_t n : ns) {
                        try {
                            if (n == 0 || n > ctx.size())
                                throw ResolutionExceeded("Lemma 1 length must lie in [1, M_N]");
                            const std::vector<double> c =
                                source.seed ? random_signs(n, *source.seed) : cesaro_coefficients(alpha, n);
                            Lemma1Reports r = lemma1_report(*table, c);
                            for (RatioReport* row : {&r.two_d, &r.one_d}) {
                                if ((row->claim == Claim::lemma1 && !l1) || (row->claim == Claim::lemma0 && !l0))
                                    continue;
                                row->family = source.family;
                                row->seed = source.seed;
                                row->alpha = alpha;
                                rows.push_back(*row);
                            }
                        } catch (const std::exception& e) {
                            if (l1)
                                rows.push_back(error_row(Claim::lemma1, source.family, source.seed, alpha,
                                                         std::nullopt, std::nullopt, n, e.what()));
                            if (l0)
                                rows.push_back(error_row(Claim::lemma0, source.family, source.seed, alpha,
                                                         std::nullopt, std::nullopt, n, e.what()));
                        }
                    }
                    return rows;
                });
        }
        if (wants(config, Claim::lemma4))
            for (std::size_t k : lemma4_levels(config, ctx))
                tasks.push_back([table, ctx, alpha, k, span = config.lemma4_span] {
                    try {
                        if (k > static_cast<std::size_t>(ctx.level()))
                            throw ResolutionExceeded("Lemma 4 level k exceeds N");
                        std::vector<std::size_t> ps;
                        for (std::size_t p = ctx.scale(static_cast<int>(k)); ps.size() <= span; ++p)
                            ps.push_back(p);
                        return std::vector<RatioReport>{
                            lemma4_report(*table, alpha, static_cast<int>(k), ps).report};
                    } catch (const std::exception& e) {
                        return std::vector<RatioReport>{error_row(Claim::lemma4, "kernel", std::nullopt, alpha,
                                                                  std::nullopt, k, std::nullopt, e.what())};
                    }
                });
        if (wants(config, Claim::lemma5))
            tasks.push_back([table, ctx, alpha, ns = index_range(config, 1, ctx.size())] {
                std::vector<RatioReport> rows;
                for (std::size_t n : ns) {
                    try {
                        rows.push_back(lemma5_report(*table, alpha, n).report);
                    } catch (const std::exception& e) {
                        rows.push_back(error_row(Claim::lemma5, "kernel", std::nullopt, alpha, std::nullopt,
                                                 std::nullopt, n, e.what()));
                    }
                }
                return rows;
            });
        if (wants(config, Claim::eq23))
            tasks.push_back([table, ctx, alpha, ns = index_range(config, 1, ctx.size())] {
                std::vector<RatioReport> rows;
                for (std::size_t n : ns) {
                    try {
                        rows.push_back(eq23_report(*table, alpha, n));
                    } catch (const std::exception& e) {
                        rows.push_back(error_row(Claim::eq23, "kernel", std::nullopt, alpha, std::nullopt,
                                                 std::nullopt, n, e.what()));
                    }
                }
                return rows;
            });
    }
}

std::vector<std::vector<RatioReport>> run_tasks(const std::vector<Task>& tasks, unsigned jobs)
{
    std::vector<std::vector<RatioReport>> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++)
            results[i] = tasks[i]();
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size())));
    if (workers == 1) {
        worker();
        return results;
    }
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back(worker);
    pool.clear();
    return results;
}

using SortKey = std::tuple<int, const std::string&, const std::optional<std::uint64_t>&, const std::optional<double>&,
                           const std::optional<double>&, const std::optional<std::size_t>&,
                           const std::optional<std::size_t>&>;

SortKey sort_key(const RatioReport& r)
{
    return SortKey(static_cast<int>(r.claim), r.family, r.seed, r.alpha, r.p, r.k, r.n);
}

std::string optional_text(const std::optional<std::size_t>& v)
{
    return v ? std::to_string(*v) : std::string();
}

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::string summary_value_key(const std::optional<double>& alpha)
{
    return alpha ? format_short(*alpha) : std::string("none");
}

json ratio_map(const std::vector<RatioReport>& rows, Claim claim)
{
    std::map<std::string, double> best;
    for (const RatioReport& r : rows) {
        if (r.claim != claim || !r.error.empty() || std::isnan(r.ratio))
            continue;
        const std::string key = summary_value_key(r.alpha);
        auto it = best.find(key);
        if (it == best.end())
            best.emplace(key, r.ratio);
        else
            it->second = std::max(it->second, r.ratio);
    }
    json out = json::object();
    for (const auto& [key, value] : best)
        out[key] = std::isfinite(value) ? json(value) : json("inf");
    return out;
}

std::string checks_to_csv(const std::vector<IdentityCheck>& checks)
{
    std::ostringstream os;
    os << "check,parameters,residual,tolerance,kind,status\n";
    for (const IdentityCheck& c : checks)
        os << c.name << ',' << csv_escape(c.parameters) << ',' << format_full(c.residual) << ','
           << format_full(c.tolerance) << ',' << (c.relative ? "relative" : "absolute") << ','
           << (c.passed() ? "pass" : "FAIL") << '\n';
    return os.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& fallback)
{
    if (path.empty() || path == "-") {
        fallback << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw ConfigError("cannot open output file '" + path + "'");
    file << text;
}

json read_json_file(const std::string& path, const std::string& what)
{
    std::ifstream file(path);
    if (!file)
        throw ConfigError("cannot open " + what + " '" + path + "'");
    try {
        return json::parse(file);
    } catch (const json::parse_error& e) {
        throw ConfigError(what + " '" + path + "': " + e.what());
    }
}

int apply_caps(const RunConfig& config, const std::vector<RatioReport>& rows, std::ostream& err)
{
    if (config.cap_file.empty())
        return kExitOk;
    const json caps = read_json_file(config.cap_file, "cap file");
    const auto violations = cap_violations(rows, caps);
    for (const RatioReport& r : violations)
        err << "cap exceeded: " << to_string(r.claim) << ' ' << r.family << " alpha=" << summary_value_key(r.alpha)
            << " p=" << (r.p ? exponent_token(*r.p) : "") << " k=" << optional_text(r.k) << " n=" << optional_text(r.n)
            << " ratio=" << format_full(r.ratio) << '\n';
    return violations.empty() ? kExitOk : kExitViolation;
}

std::string default_summary_path(const std::string& out)
{
    if (out.empty() || out == "-")
        return {};
    const std::size_t dot = out.rfind('.');
    const std::size_t slash = out.rfind('/');
    const std::string stem = (dot != std::string::npos && (slash == std::string::npos || dot > slash))
                                 ? out.substr(0, dot)
                                 : out;
    return stem + ".summary.json";
}

} // namespace

GroupContext RunConfig::context() const
{
    GroupContext full = [&] {
        try {
            return GroupContext::parse(m);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("config field 'm': ") + e.what());
        }
    }();
    if (!level)
        return full;
    if (*level < 1 || *level > full.level())
        throw ConfigError("config field 'level': N = " + std::to_string(*level) + " must lie in [1, " +
                          std::to_string(full.level()) + "]");
    const auto radices = full.radices();
    return GroupContext(std::vector<int>(radices.begin(), radices.begin() + *level));
}

void RunConfig::validate() const
{
    const GroupContext ctx = context();
    if (ctx.size() > kMaxCells2D)
        throw ConfigError("config field 'm': M_N = " + std::to_string(ctx.size()) + " exceeds the 2D cap " +
                          std::to_string(kMaxCells2D));
    if (alphas.empty())
        throw ConfigError("config field 'alpha': empty list");
    for (double a : alphas)
        if (!(a > 0.0 && a < 1.0))
            throw ConfigError("config field 'alpha': " + format_short(a) + " is outside (0, 1)");
    if (exponents.empty())
        throw ConfigError("config field 'p': empty list");
    for (double p : exponents)
        if (std::isnan(p) || p < 1.0)
            throw ConfigError("config field 'p': " + format_short(p) + " is below 1");
    if (claims.empty())
        throw ConfigError("config field 'claims': empty list");
    if (jobs == 0)
        throw ConfigError("config field 'jobs': must be at least 1");
}

RunConfig config_from_json(const json& doc, const std::string& source)
{
    if (!doc.is_object())
        throw ConfigError(source + ": top level must be a JSON object");
    RunConfig config;
    for (const auto& [key, value] : doc.items()) {
        field_guard(key, [&, &key = key, &value = value] {
            if (key == "m") {
                const auto items = tokens_of(value, key);
                std::string joined;
                for (std::size_t i = 0; i < items.size(); ++i)
                    joined += (i ? "," : "") + items[i];
                config.m = joined;
            } else if (key == "level") {
                config.level = value.get<int>();
            } else if (key == "alpha") {
                config.alphas.clear();
                for (const auto& t : tokens_of(value, key))
                    config.alphas.push_back(parse_real(t, key));
            } else if (key == "p") {
                config.exponents.clear();
                for (const auto& t : tokens_of(value, key))
                    config.exponents.push_back(exponent_from(t, key));
            } else if (key == "claims") {
                config.claims.clear();
                for (const auto& t : tokens_of(value, key)) {
                    if (t == "all")
                        config.claims.insert(config.claims.end(), default_claims().begin(), default_claims().end());
                    else
                        config.claims.push_back(parse_claim(t));
                }
            } else if (key == "families") {
                config.families.clear();
                for (const auto& t : tokens_of(value, key))
                    if (t != "corpus")
                        config.families.push_back(FunctionFamily::parse(t));
            } else if (key == "k") {
                config.ks.clear();
                for (const auto& t : tokens_of(value, key))
                    config.ks.push_back(parse_count(t, key));
            } else if (key == "n") {
                config.ns.clear();
                for (const auto& t : tokens_of(value, key))
                    config.ns.push_back(parse_count(t, key));
            } else if (key == "coefficient_seeds") {
                config.coefficient_seeds.clear();
                for (const auto& t : tokens_of(value, key))
                    config.coefficient_seeds.push_back(parse_count(t, key));
            } else if (key == "lemma4_span") {
                config.lemma4_span = value.get<std::size_t>();
            } else if (key == "out") {
                config.out = value.get<std::string>();
            } else if (key == "summary") {
                config.summary = value.get<std::string>();
            } else if (key == "cap_file") {
                config.cap_file = value.get<std::string>();
            } else if (key == "jobs") {
                config.jobs = value.get<unsigned>();
            } else {
                throw ConfigError("unknown field");
            }
        });
    }
    return config;
}

RunConfig load_config(const std::string& path)
{
    return config_from_json(read_json_file(path, "config"), path);
}

std::vector<IdentityCheck> run_identity_checks(const RunConfig& config)
{
    const GroupContext ctx = config.context();
    std::vector<IdentityCheck> checks;
    const std::size_t side = ctx.size();

    {
        // D_{M_k} = M_k on I_k and 0 elsewhere.
        const DirichletTable d(ctx, side);
        for (int k = 0; k <= ctx.level(); ++k) {
            const std::size_t mk = ctx.scale(k);
            double residual = 0.0;
            for (std::size_t x = 0; x < side; ++x) {
                const double expected = (x % mk == 0) ? static_cast<double>(mk) : 0.0;
                residual = std::max(residual, std::abs(d.at(mk, x) - Complex(expected, 0.0)));
            }
            checks.push_back({"dirichlet_block", "k=" + std::to_string(k), residual, 1e-12, false});
        }
    }

    // Cesaro recurrences, relative to the magnitude of the combined terms.
    constexpr std::size_t kCesaroRange = 10'000;
    for (double alpha : config.alphas)
        for (double beta : {alpha, -alpha, -alpha - 1.0, -alpha - 2.0}) {
            const CesaroNumberTable a = cesaro_numbers(beta, kCesaroRange);
            const CesaroNumberTable lower = cesaro_numbers(beta - 1.0, kCesaroRange);
            double partial = 0.0;
            double magnitude = 0.0;
            double eq2 = 0.0;
            double eq3 = 0.0;
            for (std::size_t n = 0; n <= kCesaroRange; ++n) {
                partial += lower[n];
                magnitude += std::abs(lower[n]);
                eq2 = std::max(eq2, std::abs(a[n] - partial) / std::max(magnitude, std::abs(a[n])));
                if (n > 0) {
                    const double scale = std::max({std::abs(a[n]), std::abs(a[n - 1]), std::abs(lower[n])});
                    eq3 = std::max(eq3, std::abs(a[n] - a[n - 1] - lower[n]) / scale);
                }
            }
            const std::string params = "beta=" + format_short(beta) + ",n<=10000";
            checks.push_back({"cesaro_sum", params, eq2, 1e-12, true});
            checks.push_back({"cesaro_difference", params, eq3, 1e-12, true});
        }

    for (int s = 0; s < ctx.level(); ++s)
        for (int digit = 1; digit < ctx.radix(s); ++digit) {
            double residual = 0.0;
            const std::size_t block = static_cast<std::size_t>(digit) * ctx.scale(s);
            for (std::size_t j = 0; j < block; ++j)
                residual = std::max(residual, lemma2_check(ctx, s, digit, j));
            checks.push_back({"lemma2", "s=" + std::to_string(s) + ",n_s=" + std::to_string(digit), residual,
                              kIdentityTolerance, false});
        }

    for (int level = 0; level < ctx.level(); ++level)
        for (int digit = 0; digit < ctx.radix(level); ++digit) {
            double residual = 0.0;
            for (std::size_t j = 0; j < ctx.scale(level); ++j)
                residual = std::max(residual, paley_check(ctx, level, digit, j));
            checks.push_back({"paley", "A=" + std::to_string(level) + ",n_A=" + std::to_string(digit), residual,
                              kIdentityTolerance, false});
        }

    if (side <= 256) {
        const CharacterTable chars(ctx);
        double residual = 0.0;
        for (std::size_t a = 0; a < side; ++a)
            for (std::size_t b = 0; b < side; ++b) {
                Complex inner{};
                for (std::size_t x = 0; x < side; ++x)
                    inner += chars(a, x) * std::conj(chars(b, x));
                inner /= static_cast<double>(side);
                residual = std::max(residual, std::abs(inner - Complex(a == b ? 1.0 : 0.0, 0.0)));
            }
        checks.push_back({"orthonormality", "M_N=" + std::to_string(side), residual, 1e-12, false});
    }

    {
        std::mt19937_64 gen(2024);
        std::vector<Complex> samples(side);
        for (Complex& v : samples)
            v = Complex(static_cast<double>(gen() >> 11) * 0x1p-52 - 1.0,
                        static_cast<double>(gen() >> 11) * 0x1p-52 - 1.0);
        const SampledFunction1D f(ctx, samples);
        const SampledFunction1D back = fvt_inverse(fvt_forward(f));
        double residual = 0.0;
        for (std::size_t i = 0; i < side; ++i)
            residual = std::max(residual, std::abs(back.values[i] - samples[i]));
        checks.push_back({"transform_roundtrip", "seed=2024", residual, kIdentityTolerance, false});
    }
    return checks;
}

std::vector<RatioReport> run_reports(const RunConfig& config)
{
    const GroupContext ctx = config.context();
    std::vector<Task> tasks;
    add_theorem_tasks(config, ctx, tasks);
    const bool kernels = wants(config, Claim::lemma1) || wants(config, Claim::lemma0) ||
                         wants(config, Claim::lemma4) || wants(config, Claim::lemma5) || wants(config, Claim::eq23);
    if (kernels) {
        const auto table = std::make_shared<const DirichletTable>(ctx, ctx.size());
        add_kernel_tasks(config, ctx, table, tasks);
    }
    std::vector<RatioReport> rows;
    for (auto& chunk : run_tasks(tasks, config.jobs))
        for (RatioReport& r : chunk)
            rows.push_back(std::move(r));
    std::stable_sort(rows.begin(), rows.end(),
                     [](const RatioReport& a, const RatioReport& b) { return sort_key(a) < sort_key(b); });
    rows.erase(std::unique(rows.begin(), rows.end(),
                           [](const RatioReport& a, const RatioReport& b) { return sort_key(a) == sort_key(b); }),
               rows.end());
    return rows;
}

std::string format_short(double value)
{
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    if (std::isnan(value))
        return "nan";
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, end);
}

std::string format_full(double value)
{
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    if (std::isnan(value))
        return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_csv(std::ostream& os, const std::vector<RatioReport>& rows)
{
    os << "claim,family,seed,alpha,p,k,n,lhs,rhs,ratio,error\n";
    for (const RatioReport& r : rows) {
        os << to_string(r.claim) << ',' << csv_escape(r.family) << ',' << (r.seed ? std::to_string(*r.seed) : "")
           << ',' << (r.alpha ? format_short(*r.alpha) : "") << ',' << (r.p ? exponent_token(*r.p) : "") << ','
           << optional_text(r.k) << ',' << optional_text(r.n) << ',';
        if (r.error.empty())
            os << format_full(r.lhs) << ',' << format_full(r.rhs) << ',' << format_full(r.ratio) << ',';
        else
            os << ",,," << csv_escape(r.error);
        os << '\n';
    }
}

std::string to_csv(const std::vector<RatioReport>& rows)
{
    std::ostringstream os;
    write_csv(os, rows);
    return os.str();
}

json summarize(const std::vector<RatioReport>& rows, const GroupContext& ctx)
{
    json out = json::object();
    std::vector<Claim> present;
    for (const RatioReport& r : rows)
        if (std::find(present.begin(), present.end(), r.claim) == present.end())
            present.push_back(r.claim);
    for (Claim c : present)
        out[to_string(c)] = ratio_map(rows, c);
    out["group"] = {{"m", ctx.to_string()}, {"kind", ctx.dyadic() ? "dyadic" : "vilenkin"}};
    if (ctx.dyadic())
        out["dyadic"] = {{"go2", ratio_map(rows, Claim::theorem1)}, {"go3", ratio_map(rows, Claim::theorem2)}};
    return out;
}

std::vector<RatioReport> cap_violations(const std::vector<RatioReport>& rows, const json& caps)
{
    std::vector<RatioReport> out;
    for (const RatioReport& r : rows) {
        if (!r.error.empty())
            continue;
        const auto claim = caps.find(to_string(r.claim));
        if (claim == caps.end())
            continue;
        double cap = kInfinity;
        if (claim->is_number()) {
            cap = claim->get<double>();
        } else if (claim->is_object()) {
            const auto entry = claim->find(summary_value_key(r.alpha));
            if (entry == claim->end() || !entry->is_number())
                continue;
            cap = entry->get<double>();
        } else {
            throw ConfigError("cap file: entry for '" + to_string(r.claim) + "' must be a number or object");
        }
        if (!(r.ratio <= cap))
            out.push_back(r);
    }
    return out;
}

int cmd_check_identities(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    config.validate();
    const auto checks = run_identity_checks(config);
    write_text(config.out, checks_to_csv(checks), out);
    int failures = 0;
    for (const IdentityCheck& c : checks)
        if (!c.passed()) {
            ++failures;
            err << "identity check failed: " << c.name << ' ' << c.parameters << " residual "
                << format_full(c.residual) << '\n';
        }
    return failures == 0 ? kExitOk : kExitViolation;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    config.validate();
    const auto rows = run_reports(config);
    write_text(config.out, to_csv(rows), out);
    return apply_caps(config, rows, err);
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    config.validate();
    const auto rows = run_reports(config);
    write_text(config.out, to_csv(rows), out);
    const std::string summary_path = config.summary.empty() ? default_summary_path(config.out) : config.summary;
    if (!summary_path.empty())
        write_text(summary_path, summarize(rows, config.context()).dump(2) + "\n", out);
    return apply_caps(config, rows, err);
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Vilenkin-group harmonic analysis: identity checks and Cesaro approximation ratio reports"};
    app.require_subcommand(1);

    std::string config_path, m_list, alpha_list, p_list, claim_list, family_list, k_list, n_list;
    std::string out_path, summary_path, cap_path;
    std::optional<int> level;
    std::optional<unsigned> jobs;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON run configuration");
        sub->add_option("--m", m_list, "comma-separated m-sequence, e.g. 2,3,2,3");
        sub->add_option("--level", level, "truncation level N");
        sub->add_option("--alpha", alpha_list, "comma-separated alpha values in (0,1)");
        sub->add_option("--p", p_list, "comma-separated exponents: 1,2,inf");
        sub->add_option("--claims", claim_list, "theorem1,theorem2,lemma1,lemma0,lemma4,lemma5,eq23 or all");
        sub->add_option("--families", family_list, "e.g. character(1,1),cylinder(2),random_poly(4,7) or corpus");
        sub->add_option("--k", k_list, "levels for theorem1/lemma4");
        sub->add_option("--n", n_list, "indices for theorem2/lemma1/lemma5/eq23");
        sub->add_option("--out", out_path, "output path (default stdout)");
        sub->add_option("--summary", summary_path, "summary JSON path (sweep)");
        sub->add_option("--jobs", jobs, "worker threads");
        sub->add_option("--cap-file", cap_path, "JSON caps {claim: {alpha: cap}}");
    };
    CLI::App* check = app.add_subcommand("check-identities", "residuals of the kernel and Cesaro identities");
    CLI::App* verify = app.add_subcommand("verify", "ratio report rows as CSV");
    CLI::App* sweep = app.add_subcommand("sweep", "full sweep: CSV plus per-claim max-ratio summary");
    for (CLI::App* sub : {check, verify, sweep})
        add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        RunConfig config = config_path.empty() ? RunConfig{} : load_config(config_path);
        json overrides = json::object();
        CLI::App* active = check->parsed() ? check : (verify->parsed() ? verify : sweep);
        if (active->count("--m") > 0) {
            if (m_list.empty())
                throw ConfigError("option --m: empty m-sequence");
            overrides["m"] = m_list;
        }
        if (!alpha_list.empty())
            overrides["alpha"] = alpha_list;
        if (!p_list.empty())
            overrides["p"] = p_list;
        if (!claim_list.empty())
            overrides["claims"] = claim_list;
        if (!family_list.empty())
            overrides["families"] = family_list;
        if (!k_list.empty())
            overrides["k"] = k_list;
        if (!n_list.empty())
            overrides["n"] = n_list;
        const RunConfig flags = config_from_json(overrides, "command line");
        for (const auto& [key, value] : overrides.items()) {
            if (key == "m")
                config.m = flags.m;
            else if (key == "alpha")
                config.alphas = flags.alphas;
            else if (key == "p")
                config.exponents = flags.exponents;
            else if (key == "claims")
                config.claims = flags.claims;
            else if (key == "families")
                config.families = flags.families;
            else if (key == "k")
                config.ks = flags.ks;
            else if (key == "n")
                config.ns = flags.ns;
        }
        if (!m_list.empty() && !level)
            config.level.reset();
        if (level)
            config.level = level;
        if (!out_path.empty())
            config.out = out_path;
        if (!summary_path.empty())
            config.summary = summary_path;
        if (!cap_path.empty())
            config.cap_file = cap_path;
        if (jobs)
            config.jobs = *jobs;

        if (check->parsed())
            return cmd_check_identities(config, out, err);
        if (verify->parsed())
            return cmd_verify(config, out, err);
        return cmd_sweep(config, out, err);
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}

} // namespace vilenkin::cli
