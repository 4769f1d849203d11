#include "vilenkin/group.hpp"

#include "vilenkin/errors.hpp"

#include <charconv>
#include <limits>

namespace vilenkin {

namespace {

constexpr std::size_t kMaxCells = std::size_t{1} << 32;

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    return s;
}

} // namespace

GroupContext::GroupContext(std::vector<int> radices) : radices_(std::move(radices))
{
    if (radices_.empty())
        throw InvalidParameter("group: the m-sequence must not be empty");
    scales_.reserve(radices_.size() + 1);
    scales_.push_back(1);
    for (std::size_t k = 0; k < radices_.size(); ++k) {
        const int m = radices_[k];
        if (m < 2)
            throw InvalidParameter("group: m_" + std::to_string(k) + " = " + std::to_string(m) + " is below 2");
        const std::size_t next = scales_.back() * static_cast<std::size_t>(m);
        if (next > kMaxCells)
            throw InvalidParameter("group: M_N exceeds 2^32 cells");
        scales_.push_back(next);
    }
}

GroupContext GroupContext::parse(std::string_view text)
{
    std::vector<int> radices;
    text = trim(text);
    if (text.empty())
        throw InvalidParameter("group: empty m-sequence");
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string_view item = trim(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos));
        int value = 0;
        const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (item.empty() || ec != std::errc{} || end != item.data() + item.size())
            throw InvalidParameter("group: cannot parse m-sequence item '" + std::string(item) + "'");
        radices.push_back(value);
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return GroupContext(std::move(radices));
}

bool GroupContext::dyadic() const noexcept
{
    for (int m : radices_)
        if (m != 2)
            return false;
    return true;
}

std::string GroupContext::to_string() const
{
    std::string out;
    for (std::size_t k = 0; k < radices_.size(); ++k) {
        if (k)
            out += ',';
        out += std::to_string(radices_[k]);
    }
    return out;
}

GroupElement GroupElement::zero(const GroupContext& ctx)
{
    return GroupElement(std::vector<int>(static_cast<std::size_t>(ctx.level()), 0));
}

GroupElement GroupElement::unit(const GroupContext& ctx, int n)
{
    if (n < 0 || n >= ctx.level())
        throw ResolutionExceeded("e_n: coordinate " + std::to_string(n) + " is beyond level " + std::to_string(ctx.level()));
    std::vector<int> digits(static_cast<std::size_t>(ctx.level()), 0);
    digits[static_cast<std::size_t>(n)] = 1;
    return GroupElement(std::move(digits));
}

void validate(const GroupContext& ctx, const GroupElement& x)
{
    if (x.size() != static_cast<std::size_t>(ctx.level()))
        throw InvalidElement("element has " + std::to_string(x.size()) + " digits, group level is " +
                             std::to_string(ctx.level()));
    for (int k = 0; k < ctx.level(); ++k) {
        const int d = x.digit(k);
        if (d < 0 || d >= ctx.radix(k))
            throw InvalidElement("digit " + std::to_string(k) + " = " + std::to_string(d) + " outside Z_" +
                                 std::to_string(ctx.radix(k)));
    }
}

GroupElement add(const GroupContext& ctx, const GroupElement& x, const GroupElement& y)
{
    validate(ctx, x);
    validate(ctx, y);
    std::vector<int> digits(x.size());
    for (int k = 0; k < ctx.level(); ++k)
        digits[static_cast<std::size_t>(k)] = (x.digit(k) + y.digit(k)) % ctx.radix(k);
    return GroupElement(std::move(digits));
}

GroupElement negate(const GroupContext& ctx, const GroupElement& x)
{
    validate(ctx, x);
    std::vector<int> digits(x.size());
    for (int k = 0; k < ctx.level(); ++k)
        digits[static_cast<std::size_t>(k)] = (ctx.radix(k) - x.digit(k)) % ctx.radix(k);
    return GroupElement(std::move(digits));
}

GroupElement sub(const GroupContext& ctx, const GroupElement& x, const GroupElement& y)
{
    return add(ctx, x, negate(ctx, y));
}

IndexExpansion index_expand(const GroupContext& ctx, std::size_t n)
{
    if (n >= ctx.size())
        throw ResolutionExceeded("index " + std::to_string(n) + " is not below M_N = " + std::to_string(ctx.size()));
    IndexExpansion out;
    out.value = n;
    out.digits.resize(static_cast<std::size_t>(ctx.level()));
    std::size_t rest = n;
    for (int k = 0; k < ctx.level(); ++k) {
        const auto m = static_cast<std::size_t>(ctx.radix(k));
        out.digits[static_cast<std::size_t>(k)] = static_cast<int>(rest % m);
        rest /= m;
        if (out.digits[static_cast<std::size_t>(k)] != 0)
            out.order = k;
    }
    return out;
}

std::size_t index_of(const GroupContext& ctx, std::span<const int> digits)
{
    if (digits.size() != static_cast<std::size_t>(ctx.level()))
        throw InvalidElement("digit vector length does not match group level");
    std::size_t n = 0;
    for (int k = 0; k < ctx.level(); ++k) {
        const int d = digits[static_cast<std::size_t>(k)];
        if (d < 0 || d >= ctx.radix(k))
            throw InvalidElement("digit " + std::to_string(k) + " out of range");
        n += static_cast<std::size_t>(d) * ctx.scale(k);
    }
    return n;
}

double norm_map(const GroupContext& ctx, const GroupElement& x)
{
    validate(ctx, x);
    double value = 0.0;
    for (int k = 0; k < ctx.level(); ++k)
        value += static_cast<double>(x.digit(k)) / static_cast<double>(ctx.scale(k + 1));
    return value;
}

bool in_interval(const GroupContext& ctx, const GroupElement& x, int n, const GroupElement& center)
{
    if (n < 0 || n > ctx.level())
        throw ResolutionExceeded("interval level " + std::to_string(n) + " is beyond level " +
                                 std::to_string(ctx.level()));
    validate(ctx, x);
    validate(ctx, center);
    for (int k = 0; k < n; ++k)
        if (x.digit(k) != center.digit(k))
            return false;
    return true;
}

GroupElement cell_element(const GroupContext& ctx, std::size_t cell)
{
    return GroupElement(index_expand(ctx, cell).digits);
}

std::size_t cell_index(const GroupContext& ctx, const GroupElement& x)
{
    return index_of(ctx, x.digits());
}

std::vector<GroupElement> cell_enumerate(const GroupContext& ctx)
{
    std::vector<GroupElement> cells;
    cells.reserve(ctx.size());
    std::vector<int> digits(static_cast<std::size_t>(ctx.level()), 0);
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        cells.emplace_back(digits);
        // mixed-radix increment
        for (int k = 0; k < ctx.level(); ++k) {
            auto& d = digits[static_cast<std::size_t>(k)];
            if (++d < ctx.radix(k))
                break;
            d = 0;
        }
    }
    return cells;
}

std::size_t add_cells(const GroupContext& ctx, std::size_t a, std::size_t b)
{
    if (a >= ctx.size() || b >= ctx.size())
        throw ResolutionExceeded("cell index exceeds M_N");
    std::size_t out = 0;
    for (int k = 0; k < ctx.level(); ++k) {
        const auto m = static_cast<std::size_t>(ctx.radix(k));
        out += ((a % m + b % m) % m) * ctx.scale(k);
        a /= m;
        b /= m;
    }
    return out;
}

std::size_t negate_cell(const GroupContext& ctx, std::size_t a)
{
    if (a >= ctx.size())
        throw ResolutionExceeded("cell index exceeds M_N");
    std::size_t out = 0;
    for (int k = 0; k < ctx.level(); ++k) {
        const auto m = static_cast<std::size_t>(ctx.radix(k));
        out += ((m - a % m) % m) * ctx.scale(k);
        a /= m;
    }
    return out;
}

std::vector<std::size_t> translation_table(const GroupContext& ctx, std::size_t shift)
{
    std::vector<std::size_t> table(ctx.size());
    for (std::size_t x = 0; x < ctx.size(); ++x)
        table[x] = add_cells(ctx, x, shift);
    return table;
}

} // namespace vilenkin
