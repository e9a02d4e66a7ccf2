#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fsmdiag
{

using StateIndex = std::uint32_t;
using SymbolIndex = std::int32_t;

// Label of a silent state.
inline constexpr SymbolIndex silent_symbol = -1;

// Spelling of the silent label in model files.
inline constexpr std::string_view silent_token = "_";

using StateMask = std::vector<bool>;
using Execution = std::vector<StateIndex>;
using OutputString = std::vector<SymbolIndex>;
using Transition = std::pair<StateIndex, StateIndex>;

// First step (1-based) at which an execution is inside the critical set;
// nullopt means the execution never enters it.
using CrossingIndex = std::optional<std::size_t>;

// Finite state machine with state outputs M = (X, X0, Y, H, Delta) together
// with its critical set. Immutable once built; state and symbol identifiers
// are dense indices, names are kept for I/O.
class Fsm
{
    std::vector<std::string> _names;
    std::vector<std::string> _symbols;
    std::vector<SymbolIndex> _labels;
    StateMask _initial;
    StateMask _critical;
    std::vector<Transition> _transitions;
    std::vector<std::vector<StateIndex>> _succ;
    std::vector<std::vector<StateIndex>> _pre;
    std::unordered_map<std::string, StateIndex> _index;

public:
    Fsm() = default;

    // Transitions may contain duplicates; they are collapsed. Throws
    // usage_error on inconsistent sizes, duplicate names, or out-of-range
    // indices.
    Fsm( std::vector<std::string> names, std::vector<std::string> symbols, std::vector<SymbolIndex> labels,
         std::vector<Transition> transitions, StateMask initial, StateMask critical );

    [[nodiscard]] std::size_t size() const { return _names.size(); }
    [[nodiscard]] const std::string& name( StateIndex i ) const { return _names[ i ]; }
    [[nodiscard]] const std::vector<std::string>& names() const { return _names; }
    [[nodiscard]] std::optional<StateIndex> find( std::string_view name ) const;
    [[nodiscard]] StateIndex index_of( std::string_view name ) const; // throws usage_error

    [[nodiscard]] const std::vector<std::string>& symbols() const { return _symbols; }
    [[nodiscard]] std::optional<SymbolIndex> find_symbol( std::string_view token ) const;
    [[nodiscard]] std::string_view symbol_name( SymbolIndex s ) const;

    [[nodiscard]] SymbolIndex label( StateIndex i ) const { return _labels[ i ]; }
    [[nodiscard]] const std::vector<SymbolIndex>& labels() const { return _labels; }
    [[nodiscard]] bool is_silent( StateIndex i ) const { return _labels[ i ] == silent_symbol; }
    [[nodiscard]] bool is_initial( StateIndex i ) const { return _initial[ i ]; }
    [[nodiscard]] bool is_critical( StateIndex i ) const { return _critical[ i ]; }
    [[nodiscard]] const StateMask& initial() const { return _initial; }
    [[nodiscard]] const StateMask& critical() const { return _critical; }

    [[nodiscard]] std::span<const StateIndex> successors( StateIndex i ) const { return _succ[ i ]; }
    [[nodiscard]] std::span<const StateIndex> predecessors( StateIndex i ) const { return _pre[ i ]; }
    [[nodiscard]] bool has_transition( StateIndex from, StateIndex to ) const;

    // Sorted and duplicate free.
    [[nodiscard]] const std::vector<Transition>& transitions() const { return _transitions; }

    [[nodiscard]] std::vector<StateIndex> initial_states() const;
    [[nodiscard]] std::vector<StateIndex> critical_states() const;

    [[nodiscard]] Fsm with_initial( const StateMask& initial ) const;
    [[nodiscard]] Fsm with_critical( const StateMask& critical ) const;
    [[nodiscard]] Fsm with_transitions( std::vector<Transition> transitions ) const;

    friend bool operator==( const Fsm& a, const Fsm& b );
};

enum class ValidationMode
{
    analysis,
    desilent
};

enum class ViolationKind
{
    empty_initial,       // X0 is empty
    not_live,            // a state without successors
    silent_label,        // a state labeled with the silent symbol (analysis mode)
    silent_cycle,        // a cycle made only of silent states
    silent_initial,      // a silent initial state
    initial_has_pred,    // an initial state with predecessors
    orphan_not_initial,  // a non initial state without predecessors
};

struct Violation
{
    ViolationKind kind;
    std::vector<StateIndex> states;
    std::string message;
};

struct ValidationReport
{
    ValidationMode mode = ValidationMode::analysis;
    std::vector<Violation> violations;

    [[nodiscard]] bool ok() const { return violations.empty(); }
    [[nodiscard]] bool has( ViolationKind kind ) const;
};

[[nodiscard]] std::string_view to_string( ViolationKind kind );

// Lists every violated standing assumption for the mode. Analysis mode checks
// liveness, non emptiness of X0 and the absence of silent labels. Desilent mode
// checks liveness, silent cycles, silent initial states and the "initial iff no
// predecessors" condition.
[[nodiscard]] ValidationReport validate( const Fsm& m, ValidationMode mode );

[[nodiscard]] std::vector<StateIndex> succ( const Fsm& m, std::string_view state );
[[nodiscard]] std::vector<StateIndex> pre( const Fsm& m, std::string_view state );

[[nodiscard]] bool is_execution( const Fsm& m, std::span<const StateIndex> x );

// Projected output string: labels along x with silent labels erased.
// Throws usage_error when x is not an execution of m.
[[nodiscard]] OutputString output_of( const Fsm& m, std::span<const StateIndex> x );

[[nodiscard]] CrossingIndex crossing_index( std::span<const StateIndex> x, const StateMask& critical );

// The machine with every transition leaving the critical set removed. The
// result is generally not live.
[[nodiscard]] Fsm build_restricted( const Fsm& m );

inline constexpr std::size_t default_enumeration_budget = 5'000'000;

// All executions of exactly `length` states starting in `from`. Throws
// resource_error when |X|^length exceeds the budget.
[[nodiscard]] std::vector<Execution> enumerate_executions( const Fsm& m, std::span<const StateIndex> from,
                                                           std::size_t length,
                                                           std::size_t budget = default_enumeration_budget );

[[nodiscard]] std::vector<StateIndex> mask_to_states( const StateMask& mask );
[[nodiscard]] StateMask states_to_mask( std::size_t n, std::span<const StateIndex> states );

} // namespace fsmdiag
