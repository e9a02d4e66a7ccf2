#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fsmdiag/fixpoint.hpp"
#include "fsmdiag/fsm.hpp"
#include "fsmdiag/kernels.hpp"
#include "fsmdiag/pair_relation.hpp"

namespace fsmdiag
{

enum class PropertyKind
{
    parametric,
    diag,
    eventual,
    critical,
    eventual_obs,
    critical_obs,
    initial_obs,
    exact_step
};

[[nodiscard]] std::string_view to_string( PropertyKind p );
[[nodiscard]] PropertyKind parse_property( std::string_view name ); // throws usage_error
[[nodiscard]] const std::vector<PropertyKind>& all_properties();

struct DiagParams
{
    std::size_t tau = 0;
    std::size_t delta = 0;
    bool horizon_infinite = false; // T = ∞ when set, T = 0 otherwise
    std::size_t gamma1 = 0;
    std::size_t gamma2 = 0;

    [[nodiscard]] std::size_t gamma() const { return gamma1 > gamma2 ? gamma1 : gamma2; }
    friend bool operator==( const DiagParams&, const DiagParams& ) = default;
};

struct FrontierTuple
{
    std::size_t b = 1, f = 1, g = 1, l = 1;
    friend bool operator==( const FrontierTuple&, const FrontierTuple& ) = default;
};

struct Witness
{
    Pair pair;
    std::string relation;
};

struct DiagVerdict
{
    PropertyKind property = PropertyKind::eventual;
    bool holds = false;
    std::optional<DiagParams> params;
    std::optional<Witness> witness;
    std::vector<FrontierTuple> frontier;
    std::optional<FrontierTuple> chosen;
};

// All relation series of one machine, computed once at construction.
// Construction throws precondition_error unless the machine is valid in
// analysis mode.
class Analysis
{
    Fsm _m;
    PairRelation _pi;
    PairRelation _mixed;
    FixpointSeries _s;
    FixpointSeries _s_tilde;
    FixpointSeries _f;
    FixpointSeries _b;
    FixpointSeries _b_tilde;
    MixedSeries _lambda;
    MixedSeries _gamma;
    FixpointSeries _s_asym;
    MixedSeries _gamma_asym;

public:
    explicit Analysis( Fsm m, Exec exec = Exec::parallel );

    [[nodiscard]] const Fsm& machine() const { return _m; }
    [[nodiscard]] const PairRelation& pi() const { return _pi; }
    [[nodiscard]] const PairRelation& mixed() const { return _mixed; }
    [[nodiscard]] const FixpointSeries& s() const { return _s; }
    [[nodiscard]] const FixpointSeries& s_tilde() const { return _s_tilde; }
    [[nodiscard]] const FixpointSeries& f() const { return _f; }
    [[nodiscard]] const FixpointSeries& b() const { return _b; }
    [[nodiscard]] const FixpointSeries& b_tilde() const { return _b_tilde; }
    [[nodiscard]] const MixedSeries& lambda() const { return _lambda; }
    [[nodiscard]] const MixedSeries& gamma() const { return _gamma; }
    [[nodiscard]] const FixpointSeries& s_asym() const { return _s_asym; }
    [[nodiscard]] const MixedSeries& gamma_asym() const { return _gamma_asym; }
};

[[nodiscard]] DiagVerdict check( const Analysis& a, PropertyKind p );

[[nodiscard]] DiagVerdict check_parametric( const Fsm& m );
[[nodiscard]] DiagVerdict check_diag( const Fsm& m );
[[nodiscard]] DiagVerdict check_eventual( const Fsm& m );
[[nodiscard]] DiagVerdict check_critical( const Fsm& m );
[[nodiscard]] DiagVerdict check_eventual_obs( const Fsm& m );
[[nodiscard]] DiagVerdict check_exact_step( const Fsm& m );
[[nodiscard]] DiagVerdict check_initial_obs( const Fsm& m );
[[nodiscard]] DiagVerdict check_critical_obs( const Fsm& m );

// Pareto minimal tuples of the property's inclusion inside the convergence
// boxes. Throws usage_error when the property fails.
[[nodiscard]] std::vector<FrontierTuple> parameter_frontier( const Analysis& a, PropertyKind p );

// Parameters implied by a frontier tuple for the property.
[[nodiscard]] DiagParams params_for( PropertyKind p, const FrontierTuple& t );

// Fixed parameters a property imposes on the definition check, applied over
// the caller's values.
[[nodiscard]] DiagParams force_params( PropertyKind p, DiagParams params );

// Whether the property uses T = ∞.
[[nodiscard]] bool horizon_infinite( PropertyKind p );

} // namespace fsmdiag
