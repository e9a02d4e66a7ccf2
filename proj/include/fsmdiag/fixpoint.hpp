#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fsmdiag/fsm.hpp"
#include "fsmdiag/kernels.hpp"
#include "fsmdiag/pair_relation.hpp"

namespace fsmdiag
{

// Relations X_1, X_2, ... of one recursion. `steps[k-1]` holds X_k; the list
// stops once two consecutive entries are equal or an entry is empty.
struct FixpointSeries
{
    std::vector<PairRelation> steps;
    std::size_t convergence_step = 1; // min k with X_k equal to the fixed point
    std::optional<std::size_t> emptied_at;

    [[nodiscard]] const PairRelation& fixed_point() const { return steps.back(); }
    // X_k for any k >= 1; indices past the end give the fixed point.
    [[nodiscard]] const PairRelation& at( std::size_t k ) const;
    [[nodiscard]] std::size_t length() const { return steps.size(); }
};

// An ordered recursion (Ψ or Ξ) with its symmetric mixed view (Λ or Γ).
struct MixedSeries
{
    FixpointSeries ordered;
    FixpointSeries mixed;
};

[[nodiscard]] PairRelation compute_pi( const Fsm& m );
[[nodiscard]] PairRelation compute_theta( const Fsm& m );

// S_1 = (X0×X0) ∩ Π,  S_{k+1} = {(i,j) ∈ Π : (pre i × pre j) ∩ S_k ≠ ∅} ∪ S_k.
// Does not need liveness; used on the restricted machine as well.
[[nodiscard]] FixpointSeries s_series( const Fsm& m, Exec exec = Exec::parallel );

// S series of the restricted machine.
[[nodiscard]] FixpointSeries s_restricted_series( const Fsm& m, Exec exec = Exec::parallel );

// F_1 = Π,  F_{k+1} = {(i,j) ∈ F_k : (succ i × succ j) ∩ F_k ≠ ∅}.
// Throws precondition_error when m is not live.
[[nodiscard]] FixpointSeries f_series( const Fsm& m, Exec exec = Exec::parallel );

// B_1 = Σ,  B_{k+1} = {(i,j) ∈ B_k : (pre i × pre j) ∩ B_k ≠ ∅}.
// Throws usage_error unless Σ ⊆ Π and Σ is symmetric.
[[nodiscard]] FixpointSeries b_series( const Fsm& m, const PairRelation& sigma, Exec exec = Exec::parallel );

// Ψ_1 = (X×Ω̄) ∩ S*, forward pruning; Λ_k = (Ψ_k ∩ (Ω×Ω̄))⁻.
[[nodiscard]] MixedSeries lambda_series( const Fsm& m, const PairRelation& s_star, Exec exec = Exec::parallel );

// Ξ_1 = (X×Ω̄) ∩ S*, backward pruning; Γ_k = (Ξ_k ∩ (Ω×Ω̄))⁻.
[[nodiscard]] MixedSeries gamma_series( const Fsm& m, const PairRelation& s_star, Exec exec = Exec::parallel );

// Ordered pairs (x(k), x̂(k)) of equal output executions from X0 where x
// moves on the restricted machine and x̂ on m. Not symmetric.
[[nodiscard]] FixpointSeries asymmetric_s_series( const Fsm& m, Exec exec = Exec::parallel );

// Backward pruning over the asymmetric S* with the x side stepping on the
// restricted machine and the x̂ side confined to Ω̄. The mixed view keeps the
// ordered pairs in Ω×Ω̄ without symmetric closure.
[[nodiscard]] MixedSeries asymmetric_gamma_series( const Fsm& m, const PairRelation& sa_star,
                                                   Exec exec = Exec::parallel );

// Index of the first entry of `list` equal to its last entry.
[[nodiscard]] std::size_t first_index_of_limit( const std::vector<PairRelation>& list );

} // namespace fsmdiag
