#pragma once

#include "adtcheck/terms/trs.hpp"

namespace adtcheck::terms {

/// Built-in specification of the basic types:
///   Bool     true, false; and, or, not
///   Int      literals; add, sub, lt, le (native on literals)
///   ListS    nil, cons(head, tail) with the head as the oldest element;
///            count, append (at the tail), popLast, popFirst
///   OptS     noneOpt, some(i)
///   PairS    pair(rest, opt) returned by popLast/popFirst; fst, snd
///   UnitS    void
///   OutcomeS ok(state, value), thrown(state, error), raise(error)
///   eq, ne   structural equality of constructor terms of any sort
const Trs &prelude();

} // namespace adtcheck::terms
