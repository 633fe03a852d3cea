#include "adtcheck/terms/prelude.hpp"

#include <stdexcept>

#include "adtcheck/terms/text.hpp"

namespace adtcheck::terms {

namespace {

constexpr std::string_view kPreludeText = R"(# basic types
sort IntS
sort BoolS
sort ListS
sort OptS
sort PairS
sort UnitS
sort ErrorS
sort OutcomeS
sort AnyS

op true : -> BoolS [ctor]
op false : -> BoolS [ctor]
op nil : -> ListS [ctor]
op cons : IntS ListS -> ListS [ctor]
op noneOpt : -> OptS [ctor]
op some : IntS -> OptS [ctor]
op pair : ListS OptS -> PairS [ctor]
op void : -> UnitS [ctor]
op ok : AnyS AnyS -> OutcomeS [ctor]
op thrown : AnyS ErrorS -> OutcomeS [ctor]
op raise : ErrorS -> OutcomeS [ctor]

op and : BoolS BoolS -> BoolS
op or : BoolS BoolS -> BoolS
op not : BoolS -> BoolS
op add : IntS IntS -> IntS [builtin]
op sub : IntS IntS -> IntS [builtin]
op lt : IntS IntS -> BoolS [builtin]
op le : IntS IntS -> BoolS [builtin]
op eq : AnyS AnyS -> BoolS [builtin]
op ne : AnyS AnyS -> BoolS [builtin]
op count : ListS -> IntS
op append : ListS IntS -> ListS
op popLast : ListS -> PairS
op popFirst : ListS -> PairS
op pushPair : IntS PairS -> PairS
op fst : PairS -> ListS
op snd : PairS -> OptS

and.true: and(true,b) -> b
and.false: and(false,b) -> false
or.true: or(true,b) -> true
or.false: or(false,b) -> b
not.true: not(true) -> false
not.false: not(false) -> true

count.nil: count(nil) -> 0
count.cons: count(cons(h,t)) -> add(1,count(t))
# the head of a list is its oldest element; append attaches at the tail
append.nil: append(nil,x) -> cons(x,nil)
append.cons: append(cons(h,t),x) -> cons(h,append(t,x))
popLast.nil: popLast(nil) -> pair(nil,noneOpt)
popLast.one: popLast(cons(h,nil)) -> pair(nil,some(h))
popLast.more: popLast(cons(h,cons(k,t))) -> pushPair(h,popLast(cons(k,t)))
pushPair: pushPair(h,pair(l,o)) -> pair(cons(h,l),o)
popFirst.nil: popFirst(nil) -> pair(nil,noneOpt)
popFirst.cons: popFirst(cons(h,t)) -> pair(t,some(h))
fst: fst(pair(l,o)) -> l
snd: snd(pair(l,o)) -> o
)";

Trs build() {
  auto parsed = parse_trs(kPreludeText, Trs{}, "<prelude>");
  if (!parsed)
    throw std::logic_error("prelude does not parse: " + format_diagnostic(parsed.diagnostics.front()));
  return std::move(*parsed);
}

} // namespace

const Trs &prelude() {
  static const Trs instance = build();
  return instance;
}

} // namespace adtcheck::terms
