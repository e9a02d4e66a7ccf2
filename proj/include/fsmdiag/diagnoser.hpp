#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <string_view>
#include <vector>

#include "fsmdiag/checker.hpp"
#include "fsmdiag/fsm.hpp"

namespace fsmdiag
{

struct DiagnosisEvent
{
    std::size_t detected_at = 0;
    std::size_t lo = 0;
    std::size_t hi = 0;
    bool exact = false;
    friend bool operator==( const DiagnosisEvent&, const DiagnosisEvent& ) = default;
};

// Online estimator. After k symbols it knows the set of states the machine
// can be in at step k - d given all k symbols, d being the verdict's delay,
// and reports a crossing whenever that set meets Ω.
class Diagnoser
{
    struct Slot
    {
        SymbolIndex y;
        StateMask filter; // states at this step given the symbols so far
        StateMask clean;  // same, restricted to executions not in Ω before
    };

    Fsm _m;
    DiagParams _params;
    bool _first_only;
    std::size_t _k = 0;
    std::deque<Slot> _window; // the last d+1 steps
    std::vector<DiagnosisEvent> _events;
    StateMask _estimate;

public:
    // Needs a holding verdict of parametric, diag, eventual or critical;
    // usage_error otherwise.
    Diagnoser( Fsm m, const DiagVerdict& verdict );

    // Throws usage_error for a symbol outside Y and inconsistent_observation
    // when no execution of the machine produces the symbols so far.
    std::optional<DiagnosisEvent> step( SymbolIndex y );
    std::optional<DiagnosisEvent> step( std::string_view token );

    [[nodiscard]] std::size_t steps() const { return _k; }
    [[nodiscard]] std::size_t lag() const { return _params.delta; }
    [[nodiscard]] const DiagParams& params() const { return _params; }
    // States at step max(1, k - d) compatible with all symbols so far.
    [[nodiscard]] const StateMask& current_estimate() const { return _estimate; }
    [[nodiscard]] std::size_t estimate_step() const { return _k > _params.delta ? _k - _params.delta : 1; }
    [[nodiscard]] const std::vector<DiagnosisEvent>& events() const { return _events; }
};

} // namespace fsmdiag
