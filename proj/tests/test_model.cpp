#include "doctest.h"

#include "bugfix/model.hpp"
#include "bugfix/specparse.hpp"
#include "fixtures.hpp"

using namespace bugfix;

namespace {

std::vector<ConstructDef> defs_of(const std::string& text) {
  std::vector<ConstructDef> out;
  for (const ElementSpec& e : parse_document(text)) out.push_back(to_construct_def(e));
  return out;
}

std::vector<ConstructDef> reference_constructs() {
  return defs_of(fixture::listing("construct_while_loop.bugfix") + fixture::listing("constructs_conditional.bugfix"));
}

std::size_t count_code(const Registry& r, const std::string& code) {
  std::size_t n = 0;
  for (const Diagnostic& d : r.diagnostics()) n += d.code == code;
  return n;
}

}  // namespace

TEST_CASE("identifiers compare case-insensitively") {
  CHECK(canonical("argument_list") == "ARGUMENT_LIST");
  CHECK(same_identifier("Argument_List", "ARGUMENT_LIST"));
  CHECK_FALSE(same_identifier("ARGUMENT", "ARGUMENT_LIST"));
}

TEST_CASE("structural_equals") {
  const UNode id = make_leaf("identifier", "fromNode");
  CHECK(structural_equals(id, id));

  const UNode before = fixture::closure_before();
  CHECK(before.span.has_value());
  CHECK(structural_equals(before, strip_spans(before)));
  CHECK_FALSE(strip_spans(before).span.has_value());

  CHECK_FALSE(structural_equals(before, fixture::closure_after()));

  // Third argument as a field access, differing only in the field leaf.
  auto with_field = [](const std::string& leaf) {
    return make_node("argument_list",
                     {{std::nullopt, make_leaf("identifier", "fromNode")},
                      {std::nullopt, make_node("field_access", {{"object", make_leaf("identifier", "Branch")},
                                                                {"field", make_leaf("identifier", leaf)}})},
                      {std::nullopt, make_leaf("identifier", "finallyNode")}});
  };
  CHECK_FALSE(structural_equals(with_field("UNCOND"), with_field("ON_EX")));
  CHECK(structural_equals(with_field("ON_EX"), with_field("ON_EX")));

  CHECK_FALSE(structural_equals(make_leaf("x", "a"), make_leaf("x", "A")));
  CHECK(structural_equals(make_leaf("x", "a"), make_leaf("X", "a")));
  CHECK_FALSE(structural_equals(make_node("p", {{"l", make_leaf("x", "a")}}), make_node("p", {{"r", make_leaf("x", "a")}})));
}

TEST_CASE("structural_equals is an equivalence on random trees") {
  oracle::Generator gen(7);
  oracle::TreeShape shape;
  shape.spans = true;
  for (int i = 0; i < 100; ++i) {
    const UNode a = gen.tree(shape);
    const UNode b = gen.chance(0.5) ? strip_spans(a) : gen.tree(shape);
    const UNode c = gen.chance(0.5) ? strip_spans(b) : gen.tree(shape);
    CHECK(structural_equals(a, a));
    CHECK(structural_equals(a, strip_spans(a)));
    CHECK(structural_equals(a, b) == structural_equals(b, a));
    if (structural_equals(a, b) && structural_equals(b, c)) CHECK(structural_equals(a, c));
  }
}

TEST_CASE("validate_registry on the reference constructs") {
  const Registry r = validate_registry(reference_constructs());
  CHECK(r.constructs().size() == 3);
  CHECK(r.kinds() == std::set<std::string>{"EXPRESSION", "INSTRUCTION"});
  CHECK(count_code(r, "UnknownFeatureType") > 0);  // EXPRESSION is only referenced
  CHECK(r.find_construct("while_loop") != nullptr);
  CHECK(r.members_of("INSTRUCTION").size() == 3);
}

TEST_CASE("validate_registry diagnostics") {
  CHECK(validate_registry({}).constructs().empty());
  CHECK(validate_registry({}).diagnostics().empty());
  CHECK(validate_registry({}).kinds().empty());

  const Registry unknown = validate_registry(defs_of("construct WHILE_LOOP\nkind\n  INSTRUCTION\nfeature\n  body: BODYKIND\nend\n"));
  REQUIRE(count_code(unknown, "UnknownFeatureType") == 1);
  const Diagnostic& d = unknown.diagnostics().front();
  CHECK(d.element_id == "WHILE_LOOP");
  CHECK(d.feature == "body");

  const Registry dup = validate_registry(defs_of("construct A\nend\nconstruct a\nend\n"));
  CHECK(count_code(dup, "DuplicateConstruct") == 1);

  const Registry collision = validate_registry(defs_of("construct A\nkind\n  B\nend\nconstruct B\nend\n"));
  CHECK(count_code(collision, "ConstructKindCollision") == 1);
}

TEST_CASE("validate_registry is idempotent and resolves every feature type") {
  const Registry r = validate_registry(reference_constructs());
  const Registry again = validate_registry(r.definitions());
  CHECK(again.kinds() == r.kinds());
  for (const auto& [id, def] : r.constructs())
    for (const FeatureDef& f : def.features) CHECK((r.find_construct(f.type_name) || r.is_kind(f.type_name)));
}

TEST_CASE("node_has_kind") {
  const Registry r = validate_registry(reference_constructs());
  const UNode loop = make_node("WHILE_LOOP", {});
  CHECK(node_has_kind(r, loop, "INSTRUCTION"));
  CHECK(node_has_kind(r, loop, "instruction"));
  CHECK_FALSE(node_has_kind(r, loop, "EXPRESSION"));
  const ConstructSet only_conditional = {"GENERAL_CONDITIONAL"};
  CHECK_FALSE(node_has_kind(r, loop, "INSTRUCTION", &only_conditional));
  CHECK(node_has_kind(r, make_node("general_conditional", {}), "INSTRUCTION", &only_conditional));
  CHECK_FALSE(node_has_kind(r, make_node("UNKNOWN", {}), "INSTRUCTION"));
}

TEST_CASE("node_at follows child indices") {
  const UNode before = fixture::closure_before();
  const std::vector<std::size_t> path = {1, 0};
  const UNode* n = node_at(before, path);
  REQUIRE(n);
  CHECK(n->leaf == "Branch");
  const std::vector<std::size_t> bad = {7};
  CHECK(node_at(before, bad) == nullptr);
}

TEST_CASE("tree file format round trip") {
  oracle::Generator gen(11);
  oracle::TreeShape shape;
  shape.spans = true;
  for (int i = 0; i < 50; ++i) {
    const UNode t = gen.tree(shape);
    const UNode back = parse_tree(write_tree(t));
    CHECK(structural_equals(t, back));
    CHECK(write_tree(back) == write_tree(t));
  }
  CHECK(parse_tree("(identifier \"a\\\"b\\\\\")").leaf == "a\"b\\");
  CHECK_THROWS_AS(parse_tree("(identifier"), SyntaxError);
  CHECK_THROWS_AS(parse_tree("(a \"x\" (b))"), SyntaxError);
}
