#include "doctest.h"

#include "platoon/acl/acl.hpp"
#include "platoon/util/drbg.hpp"

using namespace acl;

namespace {

// The rule listing as published, including the triple-equals and wrapped
// strings.
const char* kCompanyRule = R"ACL(rule CompanyCanReadPlatoonRecord {
  description: "Allow company A to read 
        platoon records."
  participant(p): "Company_A"
  operation: READ
  resource(r): "Platoon_Record"
  condition: "r.owner.getIdentifier() === 
        p.getIdentifier()"
  action: ALLOW
})ACL";

AccessRequest company_read(const std::string& requester, const std::string& owner) {
    AccessRequest req;
    req.participant_id = requester;
    req.operation = Operation::Read;
    req.resource_id = "Platoon_Record";
    req.resource_attributes["owner"] = owner;
    return req;
}

ConditionPtr random_condition(util::Drbg& rng, int depth) {
    auto node = std::make_shared<ConditionExpr>();
    uint64_t pick = depth <= 0 ? rng.uniform(2) : rng.uniform(5);
    auto operand = [&rng]() -> Operand {
        if (rng.uniform(2)) return AttrRef{rng.uniform(2) ? 'p' : 'r',
                                           "attr" + std::to_string(rng.uniform(4))};
        return Literal{"val" + std::to_string(rng.uniform(4))};
    };
    switch (pick) {
        case 0:
            node->kind = ConditionExpr::Kind::True;
            break;
        case 1:
            node->kind = ConditionExpr::Kind::Compare;
            node->lhs = operand();
            node->rhs = operand();
            node->not_equal = rng.uniform(2);
            break;
        case 2:
            node->kind = ConditionExpr::Kind::Not;
            node->a = random_condition(rng, depth - 1);
            break;
        default:
            node->kind = pick == 3 ? ConditionExpr::Kind::And : ConditionExpr::Kind::Or;
            node->a = random_condition(rng, depth - 1);
            node->b = random_condition(rng, depth - 1);
            break;
    }
    return node;
}

AccessControlRule random_rule(util::Drbg& rng, const std::string& name) {
    AccessControlRule r;
    r.name = name;
    r.description = "generated rule";
    r.participant_pattern = rng.uniform(3) ? "Company_" + std::to_string(rng.uniform(5)) : "*";
    r.operation = rng.uniform(2) ? Operation::Read : Operation::Write;
    r.resource_pattern = rng.uniform(3) ? "Resource_" + std::to_string(rng.uniform(5)) : "*";
    r.condition = random_condition(rng, 3);
    r.action = rng.uniform(2) ? Action::Allow : Action::Deny;
    return r;
}

}  // namespace

TEST_CASE("the published company rule parses") {
    AccessControlRule r = parse_rule(kCompanyRule);
    CHECK(r.name == "CompanyCanReadPlatoonRecord");
    CHECK(r.participant_pattern == "Company_A");
    CHECK(r.operation == Operation::Read);
    CHECK(r.resource_pattern == "Platoon_Record");
    CHECK(r.action == Action::Allow);
    REQUIRE(r.condition);
    CHECK(r.condition->kind == ConditionExpr::Kind::Compare);
    CHECK(std::get<AttrRef>(r.condition->lhs) == AttrRef{'r', "owner"});
    CHECK(std::get<AttrRef>(r.condition->rhs) == AttrRef{'p', "id"});

    // Normalized double-equals parses to the same AST.
    std::string normalized = kCompanyRule;
    auto pos = normalized.find("===");
    normalized.replace(pos, 3, "==");
    AccessControlRule r2 = parse_rule(normalized);
    CHECK(condition_equal(*r.condition, *r2.condition));
}

TEST_CASE("unknown keywords are rejected") {
    std::string bad_op = kCompanyRule;
    bad_op.replace(bad_op.find("READ"), 4, "DELETE");
    CHECK_THROWS_WITH_AS(parse_rule(bad_op), doctest::Contains("unknown operation"), ParseError);

    std::string bad_action = kCompanyRule;
    bad_action.replace(bad_action.find("ALLOW"), 5, "PERMIT");
    CHECK_THROWS_WITH_AS(parse_rule(bad_action), doctest::Contains("unknown action"), ParseError);
}

TEST_CASE("syntax errors carry a location") {
    try {
        parse_rule("rule X {\n  description \"missing colon\"\n}");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("print/parse round trip on generated rules") {
    util::Drbg rng(61);
    for (int i = 0; i < 100; ++i) {
        AccessControlRule r = random_rule(rng, "Rule" + std::to_string(i));
        AccessControlRule back = parse_rule(print_rule(r));
        CHECK(back.name == r.name);
        CHECK(back.description == r.description);
        CHECK(back.participant_pattern == r.participant_pattern);
        CHECK(back.operation == r.operation);
        CHECK(back.resource_pattern == r.resource_pattern);
        CHECK(back.action == r.action);
        CHECK(condition_equal(*back.condition, *r.condition));
    }
}

TEST_CASE("multi-rule files and comments") {
    std::string text = std::string("# policy file\n") + kCompanyRule + "\n# another\n" +
                       print_rule(parse_rule(kCompanyRule));
    auto rules = parse_rules(text);
    CHECK(rules.size() == 2);
}

TEST_CASE("owner reads own record, others hit default deny") {
    std::vector<AccessControlRule> rules{parse_rule(kCompanyRule)};

    Decision own = evaluate(rules, company_read("Company_A", "Company_A"));
    CHECK(own.action == Action::Allow);
    CHECK(own.matched_rule == "CompanyCanReadPlatoonRecord");

    Decision other = evaluate(rules, company_read("Company_B", "Company_A"));
    CHECK(other.action == Action::Deny);
    CHECK(other.matched_rule == "default");

    // Condition false (A reading B's record) also falls through to default.
    Decision cross = evaluate(rules, company_read("Company_A", "Company_B"));
    CHECK(cross.action == Action::Deny);
    CHECK(cross.matched_rule == "default");

    CHECK(evaluate({}, company_read("Company_A", "Company_A")).action == Action::Deny);
}

TEST_CASE("missing attribute skips the rule and reports it") {
    std::vector<AccessControlRule> rules{parse_rule(kCompanyRule)};
    AccessRequest req = company_read("Company_A", "Company_A");
    req.resource_attributes.clear();  // no owner attribute
    Decision d = evaluate(rules, req);
    CHECK(d.action == Action::Deny);
    CHECK(d.matched_rule == "default");
    REQUIRE(d.skipped.size() == 1);
    CHECK(d.skipped[0].rule == "CompanyCanReadPlatoonRecord");
    CHECK(d.skipped[0].error.find("r.owner") != std::string::npos);
}

TEST_CASE("operators and wildcard patterns") {
    AccessControlRule r = parse_rule(R"ACL(rule W {
      description: "wildcard writer"
      participant(p): "*"
      operation: WRITE
      resource(r): "Platoon_Record"
      condition: "p.role == verifier && !(r.owner == p.id) || r.shared == yes"
      action: ALLOW
    })ACL");
    AccessRequest req;
    req.participant_id = "anyone";
    req.operation = Operation::Write;
    req.resource_id = "Platoon_Record";
    req.participant_attributes["role"] = "verifier";
    req.resource_attributes["owner"] = "someone_else";
    req.resource_attributes["shared"] = "no";
    CHECK(evaluate({r}, req).action == Action::Allow);

    req.participant_attributes["role"] = "client";
    CHECK(evaluate({r}, req).action == Action::Deny);
    req.resource_attributes["shared"] = "yes";
    CHECK(evaluate({r}, req).action == Action::Allow);
}

TEST_CASE("first match wins; disjoint rules commute") {
    util::Drbg rng(62);
    // Conflicting pair on the same resource: order decides.
    auto allow = parse_rule(R"ACL(rule A {
      description: "allow"
      participant(p): "*"
      operation: READ
      resource(r): "X"
      condition: "true"
      action: ALLOW
    })ACL");
    auto deny = allow;
    deny.name = "D";
    deny.action = Action::Deny;
    AccessRequest req;
    req.participant_id = "p1";
    req.operation = Operation::Read;
    req.resource_id = "X";
    CHECK(evaluate({allow, deny}, req).action == Action::Allow);
    CHECK(evaluate({deny, allow}, req).action == Action::Deny);

    // Rules over pairwise-distinct resources: any permutation gives the
    // same decision for every request.
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<AccessControlRule> rules;
        for (int i = 0; i < 6; ++i) {
            AccessControlRule r = random_rule(rng, "R" + std::to_string(i));
            r.resource_pattern = "Res_" + std::to_string(i);  // disjoint, no wildcard
            r.participant_pattern = "*";
            r.condition = std::make_shared<ConditionExpr>();  // true
            rules.push_back(r);
        }
        std::vector<AccessControlRule> shuffled = rules;
        for (size_t i = shuffled.size(); i > 1; --i)
            std::swap(shuffled[i - 1], shuffled[rng.uniform(i)]);
        for (int q = 0; q < 10; ++q) {
            AccessRequest req2;
            req2.participant_id = "p" + std::to_string(rng.uniform(3));
            req2.operation = rng.uniform(2) ? Operation::Read : Operation::Write;
            req2.resource_id = "Res_" + std::to_string(rng.uniform(8));
            CHECK(evaluate(rules, req2).action == evaluate(shuffled, req2).action);
        }
    }
}
