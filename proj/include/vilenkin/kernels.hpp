#pragma once

// Vilenkin characters, Dirichlet kernels and Cesaro numbers.

#include "vilenkin/group.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace vilenkin {

using Complex = std::complex<double>;

// exp(2 pi i t / order), symmetric under t -> order - t (exact conjugates)
// and exact at the quarter points. Sums of all m-th roots cancel exactly
// for m in {2, 3, 4}.
Complex unit_root(std::size_t t, std::size_t order);

// Phase of psi_n at a cell: psi_n(x) = exp(2 pi i phase / M_N).
std::size_t character_phase(const GroupContext& ctx, std::size_t n, std::size_t cell);

// All M_N-th roots of unity of a context, so psi_n(x) is a table lookup.
class CharacterTable {
public:
    explicit CharacterTable(const GroupContext& ctx);

    const GroupContext& context() const noexcept { return ctx_; }
    Complex operator()(std::size_t n, std::size_t cell) const;
    Complex root(std::size_t t) const { return roots_[t % roots_.size()]; }

private:
    GroupContext ctx_;
    std::vector<Complex> roots_;
    // M_N / m_j, the phase step of digit j.
    std::vector<std::size_t> steps_;
};

// r_k(x) = exp(2 pi i x_k / m_k).
Complex rademacher(const GroupContext& ctx, int k, const GroupElement& x);

// psi_n(x) = prod_k r_k(x)^{n_k}.
Complex psi(const GroupContext& ctx, std::size_t n, const GroupElement& x);

// D_n(x) = sum_{k<n} psi_k(x) for 1 <= n <= M_N. D_0 is the empty sum.
Complex dirichlet(const GroupContext& ctx, std::size_t n, const GroupElement& x);

// D_0, ..., D_L on every level-N cell, built by cumulative summation.
class DirichletTable {
public:
    DirichletTable(const GroupContext& ctx, std::size_t max_index);

    const GroupContext& context() const noexcept { return ctx_; }
    std::size_t max_index() const noexcept { return max_index_; }
    Complex at(std::size_t n, std::size_t cell) const { return row(n)[cell]; }
    std::span<const Complex> row(std::size_t n) const;

private:
    GroupContext ctx_;
    std::size_t max_index_;
    std::vector<Complex> values_;
};

// A_0^beta, ..., A_L^beta with A_n^beta = (beta+1)...(beta+n)/n!.
class CesaroNumberTable {
public:
    CesaroNumberTable(double beta, std::vector<double> values) : beta_(beta), values_(std::move(values)) {}

    double beta() const noexcept { return beta_; }
    std::size_t max_index() const noexcept { return values_.size() - 1; }
    double operator[](std::size_t n) const { return values_.at(n); }
    std::span<const double> values() const noexcept { return values_; }

private:
    double beta_;
    std::vector<double> values_;
};

inline constexpr std::size_t kMaxCesaroIndex = 1'000'000;

// Multiplicative recurrence A_n = A_{n-1} (beta + n) / n in double precision.
// Throws InvalidParameter for L > kMaxCesaroIndex or a non-finite beta.
CesaroNumberTable cesaro_numbers(double beta, std::size_t max_index);

// max over cells |D_{n_s M_s - j} - (D_{n_s M_s} - psi_{n_s M_s - 1} conj(D_j))|
// for 0 < n_s < m_s and 0 <= j < n_s M_s.
double lemma2_check(const GroupContext& ctx, int level, int digit, std::size_t j);

enum class PaleyForm {
    // D_{j + n M_A} = D_{n M_A} + psi_{n M_A} D_j
    digit,
    // D_{j + r M_A} = (sum_{q<r} psi_{M_A}^q) D_{M_A} + psi_{M_A}^r D_j
    block,
    both,
};

// Max residual over all cells of the selected Paley splitting identities,
// for 0 <= j < M_A and 0 <= digit < m_A.
double paley_check(const GroupContext& ctx, int level, int digit, std::size_t j, PaleyForm form = PaleyForm::both);

} // namespace vilenkin
