#include "doctest.h"

#include "adtcheck/oracle/interp.hpp"
#include "adtcheck/terms/prelude.hpp"
#include "adtcheck/terms/rewrite.hpp"
#include "adtcheck/terms/text.hpp"
#include "domain.hpp"
#include "support.hpp"

using namespace adtcheck;
using namespace adtcheck::lowering;
using terms::to_string;

namespace {

std::string rhs_of(const LoweredMethod &m, std::size_t i) { return to_string(m.rules.at(i).rhs); }

LoweredMethod lower(const support::Loaded &l, const std::string &method, const std::string &s = "") {
  const StructDecl &d = l.decl(s);
  const MethodDecl &m = d.methods.at(static_cast<std::size_t>(d.method_index(method)));
  return lower_method(d, m, method, l.lowered.trs.signature);
}

bool guard_holds(const terms::Trs &trs, const terms::Guard &g, const terms::Substitution &sigma) {
  terms::Term l = terms::normalize_or_throw(trs, terms::apply(sigma, g.lhs));
  terms::Term r = terms::normalize_or_throw(trs, terms::apply(sigma, g.rhs));
  switch (g.rel) {
  case terms::Relation::Lt: return l.value() < r.value();
  case terms::Relation::Le: return l.value() <= r.value();
  case terms::Relation::Eq: return l == r;
  case terms::Relation::Ne: return l != r;
  }
  return false;
}

terms::Term call_term(const StructSymbols &sym, std::size_t mi, const StructDecl &s, const oracle::ConcreteState &st,
                      const std::vector<oracle::ConcreteValue> &args) {
  std::vector<terms::Term> kids{oracle::encode_state(s, st)};
  for (const auto &a : args)
    kids.push_back(oracle::encode(a));
  return terms::Term::op(sym.method_symbols[mi], terms::sorts::Outcome, std::move(kids));
}

} // namespace

TEST_CASE("lower_struct") {
  auto l = support::load_file("buffer.subj");
  LoweredStruct b = lower_struct(l->decl());
  CHECK(b.sort.name == "BufferS");
  CHECK(b.constructor.name == "Buffer");
  CHECK(b.constructor.arg_sorts == std::vector<terms::Sort>{terms::sorts::Int, terms::sorts::List});
  CHECK(b.constructor.result_sort.name == "BufferS");
  CHECK(b.constructor.kind == terms::OpKind::constructor);
  CHECK(to_string(b.initial_state) == "Buffer(3,nil)");

  Checked<Expr> two = parse_expression("2");
  std::vector<FieldOverride> ov{{"capacity", *two}};
  CHECK(to_string(lower_struct(l->decl(), ov).initial_state) == "Buffer(2,nil)");

  auto c = support::load_source("struct C {\n  var v: Bool = false\n}\n");
  CHECK(to_string(lower_struct(c->decl()).initial_state) == "C(false)");
  auto o = support::load_source("struct C {\n  var v: Int? = nil\n}\n");
  CHECK(to_string(lower_struct(o->decl()).initial_state) == "C(noneOpt)");
  auto a = support::load_source("struct C {\n  var v: [Int] = [1, 2]\n  var w: Int? = 4\n}\n");
  CHECK(to_string(lower_struct(a->decl()).initial_state) == "C(cons(1,cons(2,nil)),some(4))");
}

TEST_CASE("enumerate_paths") {
  auto l = support::load_file("buffer.subj");
  const StructDecl &s = l->decl();
  auto write = enumerate_paths(s, s.methods[0]);
  REQUIRE(write.size() == 2);
  REQUIRE(write[0].condition.conjuncts.size() == 1);
  CHECK(write[0].condition.conjuncts[0].polarity);
  CHECK(to_string(write[0].condition.conjuncts[0].guard) == "count(storage) < capacity");
  CHECK(write[0].effect.outcome == OutcomeKind::Returns);
  CHECK(to_string(write[0].effect.value) == "void");
  CHECK(write[0].effect.updated == std::vector<std::string>{"storage"});
  CHECK(to_string(write[0].effect.fields[1]) == "append(storage,data)");
  CHECK_FALSE(write[1].condition.conjuncts[0].polarity);
  CHECK(to_string(write[1].condition.conjuncts[0].guard) == "capacity <= count(storage)");
  CHECK(write[1].effect.outcome == OutcomeKind::Throws);
  CHECK(write[1].effect.error == "BufferError.Overflow");
  CHECK(write[1].effect.updated.empty());

  auto consume = enumerate_paths(s, s.methods[1]);
  REQUIRE(consume.size() == 1);
  CHECK(consume[0].condition.conjuncts.empty());
  CHECK(to_string(consume[0].effect.value) == "snd(popLast(storage))");
  CHECK(to_string(consume[0].effect.fields[1]) == "fst(popLast(storage))");

  auto noop = support::load_source("struct C {\n  var x: Int = 0\n  func noop() {\n  }\n}\n");
  auto paths = enumerate_paths(noop->decl(), noop->decl().methods[0]);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].effect.updated.empty());
  CHECK(to_string(paths[0].effect.value) == "void");
}

TEST_CASE("paths through several guards") {
  auto l = support::load_source(R"(struct G {
  var n: Int = 0
  mutating func f(a: Int, b: Bool) throws -> Int {
    guard a < 2 else {
      throw E.A
    }
    n = n + a
    guard b else {
      throw E.B
    }
    guard n != 3 else {
      return 0
    }
    return n
  }
}
)");
  auto paths = enumerate_paths(l->decl(), l->decl().methods[0]);
  REQUIRE(paths.size() == 4);
  CHECK(paths[0].condition.conjuncts.size() == 3);
  CHECK(paths[1].condition.conjuncts.size() == 3);
  CHECK(paths[2].condition.conjuncts.size() == 2);
  CHECK(paths[3].condition.conjuncts.size() == 1);
  CHECK(paths[2].effect.error == "E.B");
  // The throw after the assignment keeps the update.
  CHECK(to_string(paths[2].effect.fields[0]) == "add(n,a)");
  CHECK(to_string(paths[3].effect.fields[0]) == "n");
  auto m = lower(*l, "f");
  CHECK(terms::check_rule_overlap(l->lowered.trs).empty());
  CHECK(to_string(m.rules[2].guards[1]) == "b != true");
}

TEST_CASE("lower_method") {
  auto l = support::load_file("buffer.subj");
  auto write = lower(*l, "write");
  CHECK(write.symbol.name == "write");
  CHECK(write.symbol.arg_sorts == std::vector<terms::Sort>{terms::Sort{"BufferS"}, terms::sorts::Int});
  CHECK(write.symbol.result_sort == terms::sorts::Outcome);
  REQUIRE(write.rules.size() == 2);
  CHECK(write.rules[0].label == "write.1");
  CHECK(to_string(write.rules[0].lhs) == "write(Buffer(capacity,storage),data)");
  CHECK(rhs_of(write, 0) == "ok(Buffer(capacity,append(storage,data)),void)");
  CHECK(rhs_of(write, 1) == "thrown(Buffer(capacity,storage),BufferError.Overflow)");
  auto consume = lower(*l, "consume");
  REQUIRE(consume.rules.size() == 1);
  CHECK(rhs_of(consume, 0) == "ok(Buffer(capacity,fst(popLast(storage))),snd(popLast(storage)))");

  auto short_names = support::load_source(R"(struct Buffer {
  var c: Int = 3
  var s: [Int] = []
  mutating func write(d: Int) throws {
    guard s.count < c else {
      throw BufferError.Overflow
    }
    s.append(d)
  }
}
)");
  auto w = lower(*short_names, "write");
  CHECK(rhs_of(w, 0) == "ok(Buffer(c,append(s,d)),void)");
  CHECK(rhs_of(w, 1) == "thrown(Buffer(c,s),BufferError.Overflow)");

  auto noop = support::load_source("struct C {\n  var x: Int = 0\n  func noop() {\n  }\n}\n");
  CHECK(terms::to_string(lower(*noop, "noop").rules.at(0)) == "noop.1: noop(C(x)) -> ok(C(x),void)");
}

TEST_CASE("lower_program") {
  SubjectProgram empty;
  auto e = lower_program(empty);
  REQUIRE(e.ok());
  CHECK(e->trs == terms::prelude());

  auto l = support::load_file("buffer.subj");
  CHECK(l->lowered.trs.rules_for("write", 2).size() == 2);
  CHECK(l->lowered.trs.rules_for("consume", 1).size() == 1);
  CHECK(l->lowered.trs.rules().size() == terms::prelude().rules().size() + 3);
  CHECK(terms::check_rule_overlap(l->lowered.trs).empty());

  auto two = support::load_file("extra/two_structs.subj");
  const auto *stack = two->lowered.find("Stack");
  const auto *queue = two->lowered.find("Queue");
  REQUIRE(stack);
  REQUIRE(queue);
  CHECK(stack->lowered.sort != queue->lowered.sort);
  CHECK(stack->method_symbols == std::vector<std::string>{"Stack.push", "Stack.pop"});
  CHECK(queue->method_symbols == std::vector<std::string>{"Queue.push", "Queue.pop"});
}

TEST_CASE("lowering names avoid prelude symbols") {
  auto l = support::load_source(R"(struct C {
  var void: Int = 0
  var xs: [Int] = []
  func count() -> Int {
    return void
  }
}
)");
  const auto *sym = l->lowered.find("C");
  CHECK(sym->method_symbols == std::vector<std::string>{"C.count"});
  CHECK(terms::to_string(l->lowered.trs.rules().back()) == "C.count.1: C.count(C(void_,xs)) -> ok(C(void_,xs),void_)");

  auto f = parse_program("struct Pair {\n  var x: Int = 0\n}\n", "p.subj");
  auto r = resolve(*f);
  REQUIRE(r.ok());
  auto low = lower_program(*r);
  CHECK_FALSE(low.ok());
  REQUIRE_FALSE(low.diagnostics.empty());
  CHECK(low.diagnostics[0].code == "lower.name-clash");
  CHECK(low.diagnostics[0].span.line == 1);
}

TEST_CASE("guards partition every corpus method") {
  for (const auto &entry : support::corpus_programs()) {
    auto l = support::load_entry(entry);
    const StructDecl &s = l->decl(entry.struct_name);
    const StructSymbols &sym = *l->lowered.find(entry.struct_name);
    for (std::size_t mi = 0; mi < s.methods.size(); ++mi) {
      const auto rules = l->lowered.trs.rules_for(sym.method_symbols[mi], s.methods[mi].params.size() + 1);
      for (const auto &st : support::all_states(s))
        for (const auto &args : support::all_args(s.methods[mi], {-1, 0, 1, 2})) {
          terms::Term call = call_term(sym, mi, s, st, args);
          int holding = 0;
          for (std::size_t ri : rules) {
            const terms::RewriteRule &r = l->lowered.trs.rules()[ri];
            auto sigma = terms::match_pattern(r.lhs, call);
            REQUIRE(sigma);
            bool all = true;
            for (const auto &g : r.guards)
              all = all && guard_holds(l->lowered.trs, g, *sigma);
            holding += all;
          }
          CAPTURE(to_string(call));
          CHECK(holding == 1);
        }
    }
  }
}

TEST_CASE("lowered methods agree with the interpreter on all small states") {
  std::size_t compared = 0;
  for (const auto &entry : support::corpus_programs()) {
    auto l = support::load_entry(entry);
    const StructDecl &s = l->decl(entry.struct_name);
    const StructSymbols &sym = *l->lowered.find(entry.struct_name);
    for (std::size_t mi = 0; mi < s.methods.size(); ++mi)
      for (const auto &st : support::all_states(s))
        for (const auto &args : support::all_args(s.methods[mi], {-1, 0, 1, 2})) {
          terms::Term call = call_term(sym, mi, s, st, args);
          CAPTURE(to_string(call));
          terms::Term out = terms::normalize_or_throw(l->lowered.trs, call);
          REQUIRE(out.is_op());
          REQUIRE(out.arity() == 2);
          oracle::InterpResult want = oracle::interp_method(s, st, s.methods[mi].name, args);
          CHECK(oracle::decode_state(s, out.child(0)) == want.state);
          if (const auto *thrown = std::get_if<oracle::ThrownError>(&want.result)) {
            CHECK(out.name() == "thrown");
            CHECK(out.child(1).name() == thrown->name);
          } else {
            CHECK(out.name() == "ok");
            CHECK(oracle::decode(out.child(1)) == std::get<oracle::ConcreteValue>(want.result));
          }
          ++compared;
        }
  }
  CHECK(compared > 1000);
}

TEST_CASE("throw after a mutation keeps the update") {
  auto l = support::load_file("extra/counter.subj");
  terms::Term call = *terms::parse_term("bump(Counter(2,some(2),false),1)", l->lowered.trs.signature);
  CHECK(to_string(terms::normalize_or_throw(l->lowered.trs, call)) ==
        "thrown(Counter(3,some(2),false),CounterError.Limit)");
}
