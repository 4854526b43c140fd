#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fairb/dsl/cli.hpp"
#include "fairb/dsl/elaborate.hpp"
#include "fairb/dsl/parser.hpp"
#include "fairb/dsl/printer.hpp"
#include "fairb/obligations.hpp"

using namespace fairb;
using namespace fairb::dsl;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kCtr = R"(system CTR
  var x : 0..3
  event inc when x = 1 or x = 2 then
    x := 3 - x
  end
  event done when x = 1 or x = 2 then
    x := 3
  end
end
property P1 ensures helpful {done} from x = 1 or x = 2 to x = 3
)";

Model model_of(const std::string& text) {
  auto parsed = parse_document(text);
  REQUIRE(parsed.ok());
  return elaborate(*parsed.document);
}

std::string elaboration_error(const std::string& text) {
  auto parsed = parse_document(text);
  REQUIRE(parsed.ok());
  try {
    elaborate(*parsed.document);
  } catch (const ElaborationError& e) {
    return e.what();
  }
  return "";
}

struct Cli {
  int code;
  std::string out;
  std::string err;
};

Cli cli(std::vector<std::string> args) {
  args.insert(args.begin(), "fairb");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string models(const std::string& name) { return std::string(FAIRB_MODELS_DIR) + "/" + name; }

}  // namespace

TEST_CASE("CTR parses into one system with two events and one property") {
  auto r = parse_document(kCtr);
  REQUIRE(r.ok());
  CHECK(r.document->system_count() == 1);
  CHECK(r.document->property_count() == 1);
  const auto& sys = std::get<SystemDecl>(r.document->items.at(0));
  CHECK(sys.events.size() == 2);
  CHECK(sys.vars.size() == 1);
}

TEST_CASE("syntax errors") {
  auto empty = parse_document("");
  REQUIRE(!empty.ok());
  CHECK(empty.diagnostics.at(0).message.find("no system declared") != std::string::npos);

  auto unbalanced = parse_document("system S\n  var x : 0..1\nend\nend\n");
  REQUIRE(!unbalanced.ok());
  CHECK(unbalanced.diagnostics.at(0).span.line == 4);

  // Errors in two separate items are both reported.
  auto two = parse_document("system A var x : 0.. end\nsystem B var y : 0..1 event e when then skip end end\n");
  REQUIRE(!two.ok());
  CHECK(two.diagnostics.size() >= 2);
}

TEST_CASE("expression precedence survives printing") {
  for (const char* src : {"a = 1 or b = 2 and not c = 3", "a => b => c", "(a => b) => c", "x + y * 2 - 3 < 4",
                          "not (x = 1 or x = 2)", "x in {1, 2} and y in 0..3", "grd(done) or x >= -1"}) {
    Expr e;
    REQUIRE(parse_expression(src, e).diagnostics.empty());
    const auto printed = print_expr(e);
    Expr again;
    REQUIRE(parse_expression(printed, again).diagnostics.empty());
    CHECK(print_expr(again) == printed);
  }
}

TEST_CASE("parse and print round trip on the corpus") {
  for (const auto& entry : std::filesystem::directory_iterator(FAIRB_MODELS_DIR)) {
    if (entry.path().extension() != ".fb") continue;
    INFO(entry.path());
    auto first = parse_document(slurp(entry.path()));
    REQUIRE(first.ok());
    const auto printed = print_document(*first.document);
    auto second = parse_document(printed);
    REQUIRE(second.ok());
    CHECK(print_document(*second.document) == printed);
    // Same semantics after printing.
    const auto a = elaborate(*first.document), b = elaborate(*second.document);
    REQUIRE(a.properties.size() == b.properties.size());
    for (std::size_t i = 0; i < a.properties.size(); ++i) {
      CHECK(a.properties[i].from == b.properties[i].from);
      CHECK(a.properties[i].to == b.properties[i].to);
    }
  }
}

TEST_CASE("CTR elaborates to four states") {
  const auto m = model_of(kCtr);
  const auto* s = m.find_scope("CTR");
  REQUIRE(s);
  CHECK(s->system.space().size() == 4);
  const auto* p = m.find_property("P1");
  REQUIRE(p);
  CHECK(p->from == StateSet::of(s->system.space(), {1, 2}));
  CHECK(p->to == StateSet::of(s->system.space(), {3}));
  CHECK(m.render_state(s->system.space(), 2) == "x=2");
  CHECK(check_ensures(s->system, p->as_ensures()).passed());
}

TEST_CASE("valuations are lexicographic and filtered by the invariant") {
  const auto m = model_of(R"(system S
  var a : 0..2
  var b : 0..1
  invariant a + b <= 2
  event e when a = 0 then b :: {0, 1} end
end
)");
  const auto& v = m.valuations.at("S");
  std::vector<std::vector<long>> expected{{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}};
  CHECK(v.rows == expected);
  CHECK(m.total_states() == 5);
}

TEST_CASE("elaboration errors") {
  CHECK(elaboration_error("system S var x : 0..2 invariant x < 2 event e when x = 1 then x := 2 end end\n")
            .find("does not preserve the invariant: x=1 -> x=2") != std::string::npos);
  CHECK(elaboration_error(R"(system A var x : 0..1 event e when x = 0 then x := 1 end end
refinement B refines A
  var y : 0..2
  invariant y <= 2
  gluing x = y
  event e2 refines e when y = 0 then y := 1 end
end
)").find("gluing not total: concrete state y=2") != std::string::npos);
  CHECK(elaboration_error("system S var x : 0..1 event e when x = 0 then y := 1 end end\n").find("y") !=
        std::string::npos);
  auto parsed = parse_document("system S var x : 0..1023 var y : 0..1023 var z : 0..3 event e when x = 0 then skip end end\n");
  REQUIRE(parsed.ok());
  CHECK_THROWS_AS(elaborate(*parsed.document), ElaborationError);
}

TEST_CASE("refinement predicates lift existentially through the gluing") {
  // r^-1[p - q] computed set-wise equals  exists x . P(x) & not Q(x) & J(x, y)
  // evaluated valuation by valuation.
  struct Case {
    const char* gluing;
    bool (*j)(long, long);
    const char* p;
    bool (*pf)(long);
    const char* q;
    bool (*qf)(long);
  };
  const Case cases[] = {
      {"x = y", [](long x, long y) { return x == y; }, "x >= 1", [](long x) { return x >= 1; }, "x = 3",
       [](long x) { return x == 3; }},
      {"x = y or x = y - 1", [](long x, long y) { return x == y || x == y - 1; }, "x <= 2",
       [](long x) { return x <= 2; }, "x = 1", [](long x) { return x == 1; }},
      {"x * 2 <= y", [](long x, long y) { return x * 2 <= y; }, "x = 0 or x = 2",
       [](long x) { return x == 0 || x == 2; }, "x > 1", [](long x) { return x > 1; }},
  };
  for (const auto& c : cases) {
    std::string text = std::string("system A var x : 0..3 event e when x = 0 then skip end end\n") +
                       "refinement B refines A var y : 0..6 gluing " + c.gluing +
                       " event f refines e when y = 0 and not y = 0 then skip end end\n" +
                       "property E in A ensures helpful {e} from " + c.p + " to " + c.q + "\n";
    INFO(text);
    auto parsed = parse_document(text);
    REQUIRE(parsed.ok());
    // Without an invariant, y values with no image are simply not in v.
    const auto m = elaborate(*parsed.document);
    const auto& rp = m.pairs.at(0);
    const auto* prop = m.find_property("E");
    REQUIRE(prop);
    const auto pending = rp.to_concrete(prop->from - prop->to);
    const auto& vv = m.valuations.at(rp.concrete_system().space().id());
    for (std::size_t i = 0; i < vv.rows.size(); ++i) {
      const long y = vv.rows[i][0];
      bool expected = false;
      for (long x = 0; x <= 3; ++x) expected = expected || (c.pf(x) && !c.qf(x) && c.j(x, y));
      CHECK(pending.contains(i) == expected);
    }
  }
}

TEST_CASE("CLI on the shipped models") {
  const auto check = cli({"check", models("ctr.fb")});
  CHECK(check.code == 0);
  CHECK(check.out.find("WF0") != std::string::npos);
  CHECK(check.out.find("WF1") != std::string::npos);

  const auto oracle = cli({"oracle", models("ctr.fb"), "--property", "P1"});
  CHECK(oracle.code == 0);

  const auto leak = cli({"check", models("ctr_leak.fb")});
  CHECK(leak.code == 1);
  CHECK(leak.out.find("x=2") != std::string::npos);

  CHECK(cli({"refine", models("ctr.fb"), "--pair", "CTR2"}).code == 0);
  CHECK(cli({"prove", models("ctr.fb"), "--script", "RefinedPc"}).code == 0);
  CHECK(cli({"check", models("missing.fb")}).code == 2);
  CHECK(cli({"oracle", models("ctr.fb"), "--property", "U29"}).code == 2);
  CHECK(cli({"refine", models("ctr.fb"), "--pair", "Nope"}).code == 2);
  CHECK(cli({}).code == 2);
}

TEST_CASE("reports are deterministic") {
  for (const auto& fmt : {"text", "json"}) {
    const auto a = cli({"--format", fmt, "report", models("ctr.fb")});
    const auto b = cli({"--format", fmt, "report", models("ctr.fb")});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
  }
}
