#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <string_view>

#include "fsmdiag/checker.hpp"
#include "fsmdiag/fsm.hpp"
#include "fsmdiag/pair_relation.hpp"

// Brute force reference implementations. Everything here works from
// executions and output strings directly and shares no code with the
// fixpoint recursions.
namespace fsmdiag::oracle
{

// Work budget from FSMDIAG_BUDGET, or the default enumeration budget.
[[nodiscard]] std::size_t budget_from_env();

struct Horizon
{
    std::size_t length = 12;
    std::size_t budget = budget_from_env();
};

enum class Relation
{
    S,
    Stilde,
    F,
    B,
    Lambda,
    Gamma,
    Sasym,     // ordered: x on the restricted machine, x̂ on m
    GammaAsym, // ordered mixed pairs of the restricted backward recursion
};

[[nodiscard]] std::string_view to_string( Relation r );
[[nodiscard]] Relation parse_relation( std::string_view name ); // throws usage_error

// The k-th set of the relation computed from its definition. B uses `sigma`
// when given and S* otherwise. Throws resource_error past the budget.
[[nodiscard]] PairRelation enum_relation( const Fsm& m, Relation which, std::size_t k,
                                          const PairRelation* sigma = nullptr,
                                          std::size_t budget = budget_from_env() );

// Pairs reachable from (X0×X0)∩Π in the synchronous pair graph.
[[nodiscard]] PairRelation reachable_pairs( const Fsm& m );

enum class Outcome
{
    violated,
    consistent, // no violation up to the horizon
    not_applicable
};

[[nodiscard]] std::string_view to_string( Outcome o );

struct Counterexample
{
    Execution x;
    Execution x_hat; // same output as x, misses Ω in the window
    std::size_t crossing_step = 0;
};

struct BoundedVerdict
{
    Outcome outcome = Outcome::consistent;
    DiagParams params;
    std::size_t horizon = 0;
    std::optional<Counterexample> counterexample;
    std::string note;
};

// Decides the property's definition at fixed parameters over all executions
// of length at most h.length. The property's forced parameters override the
// given ones. Throws usage_error when gamma2 > delta.
[[nodiscard]] BoundedVerdict check_definition( const Fsm& m, PropertyKind p, DiagParams params, const Horizon& h );

// Same decision by plain enumeration of executions; exponential, for
// cross-checks on tiny machines only.
[[nodiscard]] BoundedVerdict check_definition_naive( const Fsm& m, PropertyKind p, DiagParams params,
                                                     const Horizon& h );

// Lexicographically smallest (τ, δ, γ1, γ2), each at most `cap`, for which
// check_definition is consistent at horizon h.length + τ + δ. nullopt when
// even the largest values fail.
[[nodiscard]] std::optional<DiagParams> minimal_params( const Fsm& m, PropertyKind p, const Horizon& h,
                                                        std::size_t cap );

// Parameters used to probe a failing property: every free parameter at
// |X|²/2.
[[nodiscard]] DiagParams probe_params( const Fsm& m, PropertyKind p );

struct RandomFsmOptions
{
    std::size_t states = 5;
    std::size_t symbols = 2;
    double edge_probability = 0.3;
    double initial_probability = 0.4;
    double critical_probability = 0.25;
};

// Live machine with at least one initial state and states named 1..n.
[[nodiscard]] Fsm random_live_fsm( std::mt19937_64& rng, const RandomFsmOptions& opt );

} // namespace fsmdiag::oracle
