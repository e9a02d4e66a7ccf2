#pragma once

#include <vector>

#include "fsmdiag/fsm.hpp"
#include "fsmdiag/pair_relation.hpp"

namespace fsmdiag
{

enum class Exec
{
    serial,
    parallel
};

using Adjacency = std::vector<std::vector<StateIndex>>;

// Transition structure of one machine in the two shapes the kernels need:
// neighbour lists indexed by state and bit matrices indexed by state.
struct Graph
{
    Adjacency succ;
    Adjacency pre;
    PairRelation succ_matrix; // (i,j): i -> j
    PairRelation pre_matrix;  // (i,j): j -> i

    explicit Graph( const Fsm& m );
    Graph() = default;
};

namespace kernels
{

// One step of a forward reachability recursion over pairs:
//   cur ∪ { (i,j) ∈ allowed : (pre_a(i) × pre_b(j)) ∩ cur ≠ ∅ }
// The two coordinates may move on different machines.
[[nodiscard]] PairRelation grow_step( const PairRelation& cur, const Graph& a, const Graph& b,
                                      const PairRelation& allowed, Exec exec );

// One step of a pruning recursion over pairs:
//   { (i,j) ∈ cur : (succ_a(i) × succ_b(j)) ∩ cur ≠ ∅ }   (forward)
//   { (i,j) ∈ cur : (pre_a(i) × pre_b(j)) ∩ cur ≠ ∅ }     (backward)
[[nodiscard]] PairRelation prune_step( const PairRelation& cur, const Graph& a, const Graph& b, bool forward,
                                       Exec exec );

} // namespace kernels

} // namespace fsmdiag
