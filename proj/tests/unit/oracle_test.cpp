#include "doctest.h"

#include "adtcheck/oracle/interp.hpp"
#include "adtcheck/terms/prelude.hpp"
#include "adtcheck/terms/text.hpp"
#include "domain.hpp"
#include "support.hpp"

using namespace adtcheck;
using namespace adtcheck::oracle;

namespace {

ConcreteState buffer(std::vector<std::int64_t> items, std::int64_t cap = 3) {
  return {{"capacity", IntValue{cap}}, {"storage", ArrayValue{std::move(items)}}};
}

} // namespace

TEST_CASE("interp_method on the buffer") {
  auto l = support::load_file("buffer.subj");
  const StructDecl &s = l->decl();
  CHECK(default_state(s) == buffer({}));

  InterpResult w = interp_method(l->program, "Buffer", buffer({}), "write", {IntValue{1}});
  CHECK(w.state == buffer({1}));
  CHECK(std::get<ConcreteValue>(w.result) == ConcreteValue{VoidValue{}});

  InterpResult c = interp_method(s, buffer({}), "consume", {});
  CHECK(c.state == buffer({}));
  CHECK(std::get<ConcreteValue>(c.result) == ConcreteValue{OptValue{}});

  InterpResult full = interp_method(s, buffer({4, 5, 6}), "write", {IntValue{9}});
  CHECK(full.state == buffer({4, 5, 6}));
  CHECK(std::get<ThrownError>(full.result).name == "BufferError.Overflow");

  InterpResult pop = interp_method(s, buffer({4, 5}), "consume", {});
  CHECK(pop.state == buffer({4}));
  CHECK(std::get<ConcreteValue>(pop.result) == ConcreteValue{OptValue{5}});
}

TEST_CASE("interp_method errors") {
  auto l = support::load_file("buffer.subj");
  CHECK_THROWS_AS(interp_method(l->decl(), buffer({}), "read", {}), OracleError);
  CHECK_THROWS_AS(interp_method(l->decl(), buffer({}), "write", {}), OracleError);
  CHECK_THROWS_AS(interp_method(l->program, "Nope", buffer({}), "write", {IntValue{1}}), OracleError);
  CHECK_THROWS_AS(interp_method(l->decl(), {}, "consume", {}), OracleError);
}

TEST_CASE("popFirst, sequential updates and thrown state") {
  auto fifo = support::load_file("mutant_fifo.subj");
  InterpResult r = interp_method(fifo->decl(), buffer({4, 5}), "consume", {});
  CHECK(r.state == buffer({5}));
  CHECK(std::get<ConcreteValue>(r.result) == ConcreteValue{OptValue{4}});

  auto counter = support::load_file("extra/counter.subj");
  ConcreteState st{{"value", IntValue{2}}, {"last", OptValue{2}}, {"on", BoolValue{false}}};
  InterpResult b = interp_method(counter->decl(), st, "bump", {IntValue{1}});
  CHECK(std::get<ThrownError>(b.result).name == "CounterError.Limit");
  CHECK(b.state.at("value") == ConcreteValue{IntValue{3}});
  CHECK(b.state.at("last") == ConcreteValue{OptValue{2}});
  InterpResult t = interp_method(counter->decl(), st, "toggle", {});
  CHECK(std::get<ConcreteValue>(t.result) == ConcreteValue{BoolValue{true}});
}

TEST_CASE("encode and decode") {
  auto l = support::load_file("buffer.subj");
  CHECK(terms::to_string(encode(ArrayValue{{1, 2}})) == "cons(1,cons(2,nil))");
  CHECK(terms::to_string(encode(OptValue{})) == "noneOpt");
  CHECK(terms::to_string(encode(OptValue{3})) == "some(3)");
  CHECK(terms::to_string(encode(VoidValue{})) == "void");
  CHECK(terms::to_string(encode(BoolValue{true})) == "true");
  auto t = terms::parse_term("Buffer(3, nil)", l->lowered.trs.signature);
  CHECK(decode_state(l->decl(), *t) == buffer({}));
  CHECK(terms::to_string(encode_state(l->decl(), buffer({7}))) == "Buffer(3,cons(7,nil))");

  auto bad = terms::parse_term("count(nil)", terms::prelude().signature);
  CHECK_THROWS_AS(decode(*bad), OracleError);
  CHECK_THROWS_AS(decode(terms::Term::var("x", terms::sorts::Int)), OracleError);
  CHECK_THROWS_AS(decode_state(l->decl(), *terms::parse_term("cons(1,nil)", terms::prelude().signature)),
                  OracleError);
}

TEST_CASE("decode inverts encode on every small value") {
  using adtcheck::BuiltinType;
  for (BuiltinType ty : {BuiltinType::Int, BuiltinType::Bool, BuiltinType::OptInt, BuiltinType::IntArray})
    for (const ConcreteValue &v : support::values_of(ty)) {
      CAPTURE(to_string(v));
      CHECK(decode(encode(v)) == v);
    }
  for (std::int64_t i = -8; i <= 8; ++i)
    CHECK(decode(encode(IntValue{i})) == ConcreteValue{IntValue{i}});
  CHECK(decode(encode(VoidValue{})) == ConcreteValue{VoidValue{}});
  auto c = support::load_file("extra/counter.subj");
  for (const ConcreteState &st : support::all_states(c->decl()))
    CHECK(decode_state(c->decl(), encode_state(c->decl(), st)) == st);
}

TEST_CASE("pure evaluation of contract expressions") {
  auto l = support::load_file("buffer.subj");
  auto clauses = l->program.clauses_for("Buffer");
  CHECK(eval_pure(l->decl(), buffer({1, 2, 3}), *clauses[0].predicate) == ConcreteValue{BoolValue{true}});
  CHECK(eval_pure(l->decl(), buffer({1}), *clauses[1].predicate) == ConcreteValue{BoolValue{false}});
  CHECK(eval_pure(l->decl(), buffer({}), *clauses[2].expectation.value, {IntValue{4}}) ==
        ConcreteValue{OptValue{4}});
  CHECK(to_string(ConcreteValue{ArrayValue{{1, 2}}}) == "[1, 2]");
}
