// Acceptance criteria 1-8. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "adtcheck/checker/checker.hpp"
#include "adtcheck/cli/run.hpp"
#include "adtcheck/oracle/interp.hpp"
#include "adtcheck/terms/prelude.hpp"
#include "adtcheck/terms/rewrite.hpp"
#include "adtcheck/terms/text.hpp"
#include "adtcheck/testgen/render.hpp"
#include "domain.hpp"
#include "gen.hpp"
#include "support.hpp"

using namespace adtcheck;
namespace fs = std::filesystem;
namespace orc = adtcheck::oracle;

namespace {

int failures = 0;

void report(const std::string &id, bool ok, const std::string &detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << id << "  " << detail << "\n";
  if (!ok)
    ++failures;
}

checker::Bounds bounds(std::vector<std::int64_t> domain, int depth = 8) {
  checker::Bounds b;
  b.arg_domain = std::move(domain);
  b.max_depth = depth;
  return b;
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// ---------------------------------------------------------------------------
// Brute-force reference: every action sequence up to a length, executed by the
// AST interpreter, with contract clauses evaluated directly on concrete values.

using Call = std::pair<int, std::vector<orc::ConcreteValue>>;

std::vector<Call> all_calls(const StructDecl &s, const std::vector<std::int64_t> &domain) {
  std::vector<Call> out;
  for (std::size_t mi = 0; mi < s.methods.size(); ++mi)
    for (auto &args : support::all_args(s.methods[mi], domain))
      out.emplace_back(static_cast<int>(mi), args);
  return out;
}

orc::InterpResult call(const StructDecl &s, const orc::ConcreteState &st, const Call &c) {
  return orc::interp_method(s, st, s.methods[static_cast<std::size_t>(c.first)].name, c.second);
}

void for_each_sequence(const StructDecl &s, const std::vector<Call> &calls, int length, const orc::ConcreteState &st,
                       const std::function<void(const orc::ConcreteState &)> &f) {
  if (length == 0) {
    f(st);
    return;
  }
  for (const Call &c : calls)
    for_each_sequence(s, calls, length - 1, call(s, st, c).state, f);
}

std::vector<orc::ConcreteValue> domain_values(BuiltinType t, const std::vector<std::int64_t> &domain) {
  std::vector<orc::ConcreteValue> out;
  if (t == BuiltinType::Bool)
    return {orc::BoolValue{false}, orc::BoolValue{true}};
  for (auto v : domain)
    out.push_back(orc::IntValue{v});
  return out;
}

std::vector<std::vector<orc::ConcreteValue>> product(const std::vector<std::vector<orc::ConcreteValue>> &sets) {
  std::vector<std::vector<orc::ConcreteValue>> out{{}};
  for (const auto &set : sets) {
    std::vector<std::vector<orc::ConcreteValue>> next;
    for (const auto &p : out)
      for (const auto &v : set) {
        auto q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<Call> expand(const StructDecl &s, const CallPattern &p, const std::vector<orc::ConcreteValue> &mv,
                         const orc::ConcreteState &st, const std::vector<std::int64_t> &domain) {
  const MethodDecl &m = s.methods[static_cast<std::size_t>(p.method_index)];
  std::vector<std::vector<orc::ConcreteValue>> sets;
  for (std::size_t i = 0; i < p.args.size(); ++i) {
    const ArgPattern &a = p.args[i];
    if (a.kind == ArgPatternKind::Wildcard)
      sets.push_back(domain_values(m.params[i].type, domain));
    else if (a.kind == ArgPatternKind::MetaVar)
      sets.push_back({mv[static_cast<std::size_t>(a.meta_index)]});
    else
      sets.push_back({orc::eval_pure(s, st, *a.literal, mv)});
  }
  std::vector<Call> out;
  for (auto &args : product(sets))
    out.emplace_back(p.method_index, args);
  return out;
}

bool outcome_matches(const StructDecl &s, const ContractClause &c, const orc::ConcreteState &expect_state,
                     const std::vector<orc::ConcreteValue> &mv, const orc::InterpResult &r) {
  if (c.expectation.kind == ExpectationKind::Throws) {
    const auto *t = std::get_if<orc::ThrownError>(&r.result);
    return t && t->name == c.expectation.error;
  }
  const auto *v = std::get_if<orc::ConcreteValue>(&r.result);
  return v && *v == orc::eval_pure(s, expect_state, *c.expectation.value, mv);
}

/// Number of clause calls of the first violating instance at `st`, or 0.
std::size_t violated_at(const StructDecl &s, const ContractClause &c, const orc::ConcreteState &st,
                        const std::vector<std::int64_t> &domain) {
  std::vector<std::vector<orc::ConcreteValue>> mvs;
  {
    std::vector<std::vector<orc::ConcreteValue>> sets;
    for (const MetaVar &m : c.metavars)
      sets.push_back(domain_values(m.type, domain));
    mvs = product(sets);
  }
  for (const auto &mv : mvs) {
    if (c.kind == ClauseKind::When) {
      if (orc::eval_pure(s, st, *c.predicate) != orc::ConcreteValue{orc::BoolValue{true}})
        return 0;
      for (const Call &k : expand(s, c.call, mv, st, domain))
        if (!outcome_matches(s, c, st, mv, call(s, st, k)))
          return 1;
    } else {
      for (const Call &k : expand(s, c.call, mv, st, domain)) {
        orc::InterpResult r1 = call(s, st, k);
        if (std::holds_alternative<orc::ThrownError>(r1.result))
          continue;
        for (const Call &f : expand(s, *c.follow_up, mv, r1.state, domain))
          if (!outcome_matches(s, c, r1.state, mv, call(s, r1.state, f)))
            return 2;
      }
    }
  }
  return 0;
}

/// Shortest violation (prefix plus clause calls) over all sequences up to
/// `depth`, or 0 when none exists.
std::size_t brute_force_violation(const StructDecl &s, const ContractClause &c, const std::vector<std::int64_t> &domain,
                                  int depth) {
  const auto calls = all_calls(s, domain);
  for (int len = 0; len <= depth; ++len) {
    std::size_t found = 0;
    for_each_sequence(s, calls, len, orc::default_state(s), [&](const orc::ConcreteState &st) {
      if (!found)
        found = violated_at(s, c, st, domain);
    });
    if (found)
      return static_cast<std::size_t>(len) + found;
  }
  return 0;
}

std::size_t brute_force_states(const StructDecl &s, const std::vector<std::int64_t> &domain, int depth) {
  std::set<std::string> seen;
  const auto calls = all_calls(s, domain);
  for (int len = 0; len <= depth; ++len)
    for_each_sequence(s, calls, len, orc::default_state(s), [&](const orc::ConcreteState &st) {
      std::string key;
      for (const auto &[k, v] : st)
        key += k + "=" + orc::to_string(v) + ";";
      seen.insert(key);
    });
  return seen.size();
}

std::map<std::string, std::string> read_dir(const fs::path &dir) {
  std::map<std::string, std::string> out;
  if (fs::exists(dir))
    for (const auto &e : fs::directory_iterator(dir))
      out[e.path().filename().string()] = support::read_file(e.path().string());
  return out;
}

// ---------------------------------------------------------------------------

void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  CliResult r = cli({"check", support::corpus("buffer.subj"), "--max-depth", "8", "--arg-domain", "0,1,2", "--format",
                     "json"});
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  auto l = support::load_file("buffer.subj");
  checker::Report rep = checker::explore(l->model(), bounds({0, 1, 2}));
  bool ok = r.code == 0 && rep.violations.empty() && rep.vacuous_clauses.empty() && secs < 5.0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "buffer.subj: exit %d, %zu violations, %zu vacuous, %.3f s (limit 5 s)", r.code,
                rep.violations.size(), rep.vacuous_clauses.size(), secs);
  report("1 ", ok, buf);
}

void criterion2() {
  auto l = support::load_file("buffer.subj");
  std::string detail;
  bool ok = true;
  for (auto dom : {std::vector<std::int64_t>{0, 1}, std::vector<std::int64_t>{0, 1, 2}}) {
    std::size_t closed = 0, p = 1;
    for (int k = 0; k <= 3; ++k, p *= dom.size())
      closed += p;
    std::size_t explored = checker::explore(l->model(), bounds(dom)).states_explored;
    std::size_t brute = brute_force_states(l->decl(), dom, 8);
    ok = ok && explored == closed && brute == closed;
    detail += std::string(detail.empty() ? "" : "; ") + "domain size " + std::to_string(dom.size()) + ": explored " + std::to_string(explored) +
              ", brute force " + std::to_string(brute) + ", closed form " + std::to_string(closed);
  }
  report("2 ", ok, detail);
}

void criterion3(const char *id, const char *file, const char *clause_id, std::size_t want) {
  auto l = support::load_file(file);
  checker::Model m = l->model();
  checker::Report rep = checker::explore(m, bounds({0, 1}));
  std::size_t got = 0;
  for (const auto &v : rep.violations)
    if (v.clause_id == clause_id)
      got = v.trace.steps.size();
  const ContractClause *c = nullptr;
  for (const auto &x : m.clauses)
    if (x.id == clause_id)
      c = &x;
  std::size_t brute = c ? brute_force_violation(l->decl(), *c, {0, 1}, 8) : 0;
  bool ok = got == want && brute == got;
  report(id, ok,
         std::string(file) + ": " + clause_id + " trace length " + std::to_string(got) + " (required " +
             std::to_string(want) + ", brute-force minimum " + std::to_string(brute) + ")");
}

void criterion4() {
  auto prog = support::load_entry(support::corpus_programs()[4]);
  auto trs = terms::parse_trs(support::read_file(support::corpus("inverted_rules/inverted_rules.trs")), terms::prelude(),
                              "inverted_rules.trs");
  bool ok = trs.ok();
  std::string detail = "fixture did not load";
  if (ok) {
    checker::Model m = checker::make_model(prog->program, *trs, "Buffer");
    checker::Report rep = checker::explore(m, bounds({0, 1}));
    bool after_vacuous = std::count(rep.vacuous_clauses.begin(), rep.vacuous_clauses.end(), "buffer_protocol.subj:6") == 1;
    ok = rep.violations.empty() && after_vacuous;
    detail = "inverted rules: " + std::to_string(rep.violations.size()) + " violations, vacuous [";
    for (std::size_t i = 0; i < rep.vacuous_clauses.size(); ++i)
      detail += (i ? ", " : "") + rep.vacuous_clauses[i];
    detail += "]";
  }
  report("4 ", ok, detail);
}

void criterion5() {
  std::size_t compared = 0, agreed = 0;
  std::string first_mismatch;
  for (const auto &entry : support::corpus_programs()) {
    if (entry.files.size() > 1)
      continue; // the inverted-rules fixture runs on hand-written rules (criterion 4)
    auto l = support::load_entry(entry);
    checker::Model m = l->model(entry.struct_name);
    const StructDecl &s = *m.subject;
    checker::Bounds b = bounds({0, 1}, 6);
    auto actions = checker::enabled_actions(s, b);
    std::vector<checker::Term> level{m.initial};
    std::set<std::string> seen{terms::to_string(m.initial)};
    for (int d = 0; d <= b.max_depth && !level.empty(); ++d) {
      std::vector<checker::Term> next;
      for (const auto &st : level)
        for (const auto &a : actions) {
          checker::StepResult r = checker::step(m, st, a, b.fuel);
          std::vector<orc::ConcreteValue> args;
          for (const auto &t : a.args)
            args.push_back(orc::decode(t));
          orc::InterpResult want = orc::interp_method(s, orc::decode_state(s, st), a.method, args);
          bool same = orc::decode_state(s, r.next) == want.state;
          if (const auto *t = std::get_if<orc::ThrownError>(&want.result))
            same = same && r.threw && r.value.name() == t->name;
          else
            same = same && !r.threw && orc::decode(r.value) == std::get<orc::ConcreteValue>(want.result);
          ++compared;
          if (same)
            ++agreed;
          else if (first_mismatch.empty())
            first_mismatch = "; first mismatch " + terms::to_string(st) + " " + checker::to_string(a);
          if (d < b.max_depth && seen.insert(terms::to_string(r.next)).second)
            next.push_back(r.next);
        }
      level = std::move(next);
    }
  }
  report("5 ", compared > 0 && agreed == compared,
         "differential: " + std::to_string(agreed) + "/" + std::to_string(compared) +
             " (state, action) pairs agree" + first_mismatch);
}

void criterion6() {
  bool ok = true;
  std::size_t runs = 0;
  fs::path root = fs::temp_directory_path() / "adtcheck_acceptance";
  for (const auto &entry : support::corpus_programs()) {
    if (entry.files.size() > 1)
      continue;
    std::vector<std::string> base{"check", support::corpus(entry.files[0]), "--struct", entry.struct_name,
                                  "--format", "json"};
    std::vector<std::pair<std::string, std::map<std::string, std::string>>> outs;
    for (const char *workers : {"1", "1", "4", "4"}) {
      fs::remove_all(root);
      auto args = base;
      args.insert(args.end(), {"--workers", workers, "--emit-tests", root.string()});
      CliResult r = cli(args);
      outs.emplace_back(r.out, read_dir(root));
      ++runs;
    }
    for (const auto &o : outs)
      ok = ok && o == outs.front();
  }
  fs::remove_all(root);
  report("6 ", ok, std::to_string(runs) + " runs (workers 1 and 4, twice each): JSON and test files byte-identical");
}

void criterion7() {
  std::size_t violations = 0, replayed = 0, files = 0, parsed = 0;
  for (const auto &entry : support::corpus_programs()) {
    if (entry.files.size() > 1)
      continue;
    auto l = support::load_entry(entry);
    checker::Model m = l->model(entry.struct_name);
    for (int depth : {3, 6, 8})
      for (auto dom : {std::vector<std::int64_t>{0, 1}, std::vector<std::int64_t>{0, 1, 2}}) {
        checker::Report rep = checker::explore(m, bounds(dom, depth));
        for (const auto &v : rep.violations) {
          ++violations;
          replayed += checker::replay(m, v.trace);
        }
        for (const auto &t : testgen::render_tests(rep, m)) {
          ++files;
          parsed += parse_test_file(t.body, t.name + ".subjtest").ok();
        }
      }
  }
  report("7 ", violations > 0 && replayed == violations && parsed == files,
         std::to_string(replayed) + "/" + std::to_string(violations) + " violations replay, " + std::to_string(parsed) +
             "/" + std::to_string(files) + " .subjtest files parse");
}

void criterion8() {
  const terms::Trs &p = terms::prelude();
  std::size_t cases = 0, failed = 0;
  support::TermGen gen(2024);
  constexpr int kRandom = 10000;
  for (int i = 0; i < kRandom; ++i) {
    checker::Term t = gen.any(40);
    if (t.size() > 64) {
      --i;
      continue;
    }
    // well-sortedness preservation
    ++cases;
    if (auto next = terms::rewrite_step(p, t))
      failed += terms::check_well_sorted(p.signature, *next).has_value() || next->sort() != t.sort();
    // match/apply soundness, against the term itself and against another term
    int counter = 0;
    checker::Term pat = support::abstract_randomly(t, gen.rng(), counter);
    ++cases;
    auto sigma = terms::match_pattern(pat, t);
    failed += !sigma || terms::apply(*sigma, pat) != t;
    checker::Term other = gen.any(40);
    if (auto s2 = terms::match_pattern(pat, other))
      failed += terms::apply(*s2, pat) != other;
    // termination within fuel 10,000
    ++cases;
    auto r = terms::normalize(p, t, 10000);
    failed += !std::holds_alternative<terms::NormalForm>(r) ||
              !terms::is_constructor_term(p.signature, std::get<terms::NormalForm>(r).term);
  }
  // prelude arithmetic against native integers on -8..8
  namespace mk = terms::make;
  for (std::int64_t a = -8; a <= 8; ++a)
    for (std::int64_t b = -8; b <= 8; ++b) {
      auto ev = [&](const char *op, terms::Sort s) {
        return terms::normalize_or_throw(p, checker::Term::op(op, s, {checker::Term::integer(a),
                                                                      checker::Term::integer(b)}));
      };
      cases += 6;
      failed += ev("add", terms::sorts::Int) != checker::Term::integer(a + b);
      failed += ev("sub", terms::sorts::Int) != checker::Term::integer(a - b);
      failed += ev("lt", terms::sorts::Bool) != mk::boolean(a < b);
      failed += ev("le", terms::sorts::Bool) != mk::boolean(a <= b);
      failed += ev("eq", terms::sorts::Bool) != mk::boolean(a == b);
      failed += ev("ne", terms::sorts::Bool) != mk::boolean(a != b);
    }
  report("8 ", cases >= 10000 && failed == 0,
         "engine properties: " + std::to_string(failed) + " failures in " + std::to_string(cases) +
             " cases (" + std::to_string(kRandom) + " random terms <= 64 nodes, 17x17 arithmetic grid)");
}

} // namespace

int main() {
  try {
    criterion1();
    criterion2();
    criterion3("3a", "mutant_offbyone.subj", "mutant_offbyone.subj:17", 4);
    criterion3("3b", "mutant_fifo.subj", "mutant_fifo.subj:21", 3);
    criterion3("3c", "mutant_dropwrite.subj", "mutant_dropwrite.subj:20", 1);
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
  } catch (const std::exception &e) {
    std::cout << "FAIL aborted: " << e.what() << "\n";
    return 1;
  }
  std::cout << (failures ? std::to_string(failures) + " criteria failed\n" : std::string("all criteria pass\n"));
  return failures ? 1 : 0;
}
