#pragma once

// Bounded Vilenkin group G_m truncated at a finite level N.
//
// An element is a digit vector (x_0, ..., x_{N-1}) with 0 <= x_k < m_k and
// the group law is coordinatewise addition mod m_k. Level-N cells are indexed
// by the mixed-radix number i = sum x_k M_k, so cell indices and character
// indices share one numbering.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vilenkin {

class GroupContext {
public:
    // Throws InvalidParameter if m is empty, some m_k < 2, or M_N overflows
    // the supported range.
    explicit GroupContext(std::vector<int> radices);

    // "2,3,2,3" -> m = (2,3,2,3). Whitespace around items is ignored.
    static GroupContext parse(std::string_view text);

    int level() const noexcept { return static_cast<int>(radices_.size()); }
    int radix(int k) const { return radices_.at(static_cast<std::size_t>(k)); }
    // M_k, 0 <= k <= N.
    std::size_t scale(int k) const { return scales_.at(static_cast<std::size_t>(k)); }
    // M_N, the number of level-N cells.
    std::size_t size() const noexcept { return scales_.back(); }

    std::span<const int> radices() const noexcept { return radices_; }
    std::span<const std::size_t> scales() const noexcept { return scales_; }

    // True when every m_k = 2 (the Walsh-Paley case).
    bool dyadic() const noexcept;

    std::string to_string() const;

    bool operator==(const GroupContext&) const = default;

private:
    std::vector<int> radices_;
    std::vector<std::size_t> scales_;
};

class GroupElement {
public:
    GroupElement() = default;
    explicit GroupElement(std::vector<int> digits) : digits_(std::move(digits)) {}

    // Identity element of ctx.
    static GroupElement zero(const GroupContext& ctx);
    // e_n: digit 1 at coordinate n, zeros elsewhere.
    static GroupElement unit(const GroupContext& ctx, int n);

    int digit(int k) const { return digits_.at(static_cast<std::size_t>(k)); }
    std::span<const int> digits() const noexcept { return digits_; }
    std::size_t size() const noexcept { return digits_.size(); }

    bool operator==(const GroupElement&) const = default;

private:
    std::vector<int> digits_;
};

// Mixed-radix digits of an index n < M_N.
struct IndexExpansion {
    std::size_t value = 0;
    std::vector<int> digits;
    // |n| = max{k : n_k != 0}; empty for n = 0.
    std::optional<int> order;
};

// Throws InvalidElement unless x has N digits with 0 <= x_k < m_k.
void validate(const GroupContext& ctx, const GroupElement& x);

GroupElement add(const GroupContext& ctx, const GroupElement& x, const GroupElement& y);
GroupElement negate(const GroupContext& ctx, const GroupElement& x);
GroupElement sub(const GroupContext& ctx, const GroupElement& x, const GroupElement& y);

IndexExpansion index_expand(const GroupContext& ctx, std::size_t n);
std::size_t index_of(const GroupContext& ctx, std::span<const int> digits);

// |x| = sum_j x_j / M_{j+1}.
double norm_map(const GroupContext& ctx, const GroupElement& x);

// x in I_n(center), i.e. the first n digits agree.
bool in_interval(const GroupContext& ctx, const GroupElement& x, int n, const GroupElement& center);

// Cell i is the element whose digits are index_expand(i).
GroupElement cell_element(const GroupContext& ctx, std::size_t cell);
std::size_t cell_index(const GroupContext& ctx, const GroupElement& x);
std::vector<GroupElement> cell_enumerate(const GroupContext& ctx);

// Group law on cell indices: cell_index(add(cell_element(a), cell_element(b))).
std::size_t add_cells(const GroupContext& ctx, std::size_t a, std::size_t b);
std::size_t negate_cell(const GroupContext& ctx, std::size_t a);

// Precomputed translation x -> x + u on cell indices.
std::vector<std::size_t> translation_table(const GroupContext& ctx, std::size_t shift);

} // namespace vilenkin
