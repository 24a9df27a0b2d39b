#include "platoon/acl/acl.hpp"

namespace acl {

namespace {

struct EvalError : std::runtime_error {
    explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

bool pattern_match(const std::string& pattern, const std::string& id) {
    return pattern == "*" || pattern == id;
}

std::string resolve(const Operand& o, const AccessRequest& req) {
    if (std::holds_alternative<Literal>(o)) return std::get<Literal>(o).value;
    const AttrRef& a = std::get<AttrRef>(o);
    const auto& attrs = a.binder == 'p' ? req.participant_attributes : req.resource_attributes;
    auto it = attrs.find(a.attr);
    if (it != attrs.end()) return it->second;
    if (a.attr == "id") return a.binder == 'p' ? req.participant_id : req.resource_id;
    throw EvalError(std::string("missing attribute ") + a.binder + "." + a.attr);
}

// Both operands of every node are evaluated; a missing attribute surfaces
// no matter where it sits in the expression.
bool eval_condition(const ConditionExpr& c, const AccessRequest& req) {
    switch (c.kind) {
        case ConditionExpr::Kind::True:
            return true;
        case ConditionExpr::Kind::Compare: {
            bool eq = resolve(c.lhs, req) == resolve(c.rhs, req);
            return c.not_equal ? !eq : eq;
        }
        case ConditionExpr::Kind::Not:
            return !eval_condition(*c.a, req);
        case ConditionExpr::Kind::And: {
            bool a = eval_condition(*c.a, req);
            bool b = eval_condition(*c.b, req);
            return a && b;
        }
        case ConditionExpr::Kind::Or: {
            bool a = eval_condition(*c.a, req);
            bool b = eval_condition(*c.b, req);
            return a || b;
        }
    }
    throw EvalError("corrupt condition node");
}

}  // namespace

Decision evaluate(const std::vector<AccessControlRule>& rules, const AccessRequest& request) {
    Decision d;
    for (const AccessControlRule& rule : rules) {
        if (rule.operation != request.operation) continue;
        if (!pattern_match(rule.participant_pattern, request.participant_id)) continue;
        if (!pattern_match(rule.resource_pattern, request.resource_id)) continue;
        bool satisfied;
        try {
            satisfied = rule.condition ? eval_condition(*rule.condition, request) : true;
        } catch (const EvalError& e) {
            d.skipped.push_back({rule.name, e.what()});
            continue;
        }
        if (!satisfied) continue;
        d.action = rule.action;
        d.matched_rule = rule.name;
        return d;
    }
    d.action = Action::Deny;
    d.matched_rule = "default";
    return d;
}

}  // namespace acl
