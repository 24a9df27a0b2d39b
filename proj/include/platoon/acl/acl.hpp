#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace acl {

enum class Operation { Read, Write };
enum class Action { Allow, Deny };

std::string to_string(Operation op);
std::string to_string(Action a);

// Reference to an attribute of the bound participant (p) or resource (r).
// "id" resolves to the entity's identifier when not present in the map.
struct AttrRef {
    char binder;  // 'p' or 'r'
    std::string attr;
    bool operator==(const AttrRef&) const = default;
};

struct Literal {
    std::string value;
    bool operator==(const Literal&) const = default;
};

using Operand = std::variant<AttrRef, Literal>;

struct ConditionExpr {
    enum class Kind { True, Compare, And, Or, Not };
    Kind kind = Kind::True;

    // Compare
    Operand lhs, rhs;
    bool not_equal = false;

    // And / Or take both children; Not takes only `a`.
    std::shared_ptr<const ConditionExpr> a, b;
};

using ConditionPtr = std::shared_ptr<const ConditionExpr>;

bool condition_equal(const ConditionExpr& x, const ConditionExpr& y);

struct AccessControlRule {
    std::string name;
    std::string description;
    std::string participant_pattern;  // identifier or "*"
    Operation operation = Operation::Read;
    std::string resource_pattern;  // identifier or "*"
    ConditionPtr condition;
    Action action = Action::Deny;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, int line, int col)
        : std::runtime_error(what + " (line " + std::to_string(line) + ", col " +
                             std::to_string(col) + ")"),
          line(line),
          col(col) {}
    int line, col;
};

// Parses a rule file (any number of rules, '#' line comments).
std::vector<AccessControlRule> parse_rules(const std::string& text);
// Parses exactly one rule.
AccessControlRule parse_rule(const std::string& text);

std::string print_condition(const ConditionExpr& c);
std::string print_rule(const AccessControlRule& r);
std::string print_rules(const std::vector<AccessControlRule>& rules);

struct AccessRequest {
    std::string participant_id;
    std::map<std::string, std::string> participant_attributes;
    Operation operation = Operation::Read;
    std::string resource_id;
    std::map<std::string, std::string> resource_attributes;
};

struct SkippedRule {
    std::string rule;
    std::string error;
};

struct Decision {
    Action action = Action::Deny;
    std::string matched_rule = "default";
    std::vector<SkippedRule> skipped;  // rules whose condition failed to evaluate
};

// First-match-wins over the ordered list; default deny. A rule whose
// condition references a missing attribute is skipped and reported.
Decision evaluate(const std::vector<AccessControlRule>& rules, const AccessRequest& request);

}  // namespace acl
