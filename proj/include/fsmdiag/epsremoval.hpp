#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>

#include "fsmdiag/fsm.hpp"

namespace fsmdiag
{

struct SilentContext
{
    StateMask silent; // X_ε
    StateMask first;  // X_F: non silent states with a silent successor
    StateMask last;   // X_L: silent states without a silent successor
    std::size_t lambda = 0;
};

// Requires a machine without silent cycles (precondition_error otherwise).
[[nodiscard]] SilentContext silent_context( const Fsm& m );

// Number of states on the longest path made of silent states.
[[nodiscard]] std::size_t max_silent_length( const Fsm& m );

// Whether q is reached from w through silent states with no state of the
// execution, w and q included, in Ω. Needs q silent and outside Ω, w non
// silent and outside Ω; usage_error otherwise.
[[nodiscard]] bool silent_reach_avoiding( const Fsm& m, StateIndex q, StateIndex w );

// Whether some execution from w to q through silent states has a state in
// Ω, w and q included. Needs q silent and w non silent.
[[nodiscard]] bool silent_reach_crossing( const Fsm& m, StateIndex q, StateIndex w );

// Origin of a state added by the construction: the silent state q and the
// non silent state w it stands for, and whether the silent run touches Ω.
struct SilentOrigin
{
    std::string q;
    std::string w;
    bool crossed = false;
    friend bool operator==( const SilentOrigin&, const SilentOrigin& ) = default;
};

struct SilentRemovalResult
{
    Fsm split;  // the machine after splitting mixed silent states
    Fsm m_hat;  // critical set of m_hat is Ω̂
    std::map<std::string, SilentOrigin> provenance;
};

// Silent state elimination. New states are named "q@w" and, when the silent
// run touches Ω, "q@w!". Silent states with both silent and non silent
// successors are first split into "q.s" and "q.n". Throws precondition_error
// for silent cycles, silent initial states or dead ends.
[[nodiscard]] SilentRemovalResult desilent( const Fsm& m );

// Image in m_hat of an execution of m that ends on a non silent state. A last
// state kept only through its copies maps to a copy, one outside Ω if any.
// Throws usage_error when the execution has no image.
[[nodiscard]] Execution collapse_execution( const Fsm& m, const SilentRemovalResult& r, const Execution& x );

// Projected output strings of all executions from X0 with at most
// `max_length` visible symbols.
[[nodiscard]] std::set<OutputString> projected_language( const Fsm& m, std::size_t max_length );

} // namespace fsmdiag
