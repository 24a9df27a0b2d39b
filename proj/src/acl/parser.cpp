#include <sstream>

#include "platoon/acl/acl.hpp"

namespace acl {

namespace {

struct Token {
    enum class Kind { Ident, String, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    int line = 1, col = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)); }

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) {}

    Token next() {
        skip_ws_and_comments();
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= src_.size()) return t;
        char c = src_[pos_];
        if (ident_start(c)) {
            t.kind = Token::Kind::Ident;
            while (pos_ < src_.size() && ident_char(src_[pos_])) t.text.push_back(take());
            return t;
        }
        if (c == '"') {
            take();
            t.kind = Token::Kind::String;
            while (pos_ < src_.size() && src_[pos_] != '"') {
                char ch = take();
                if (ch == '\\' && pos_ < src_.size()) ch = take();
                t.text.push_back(ch);
            }
            if (pos_ >= src_.size()) throw ParseError("unterminated string", t.line, t.col);
            take();
            return t;
        }
        t.kind = Token::Kind::Punct;
        // Multi-character operators; '===' is accepted and normalized to '=='.
        if (src_.compare(pos_, 3, "===") == 0) {
            t.text = "==";
            take();
            take();
            take();
            return t;
        }
        for (const char* op : {"==", "!=", "&&", "||"}) {
            if (src_.compare(pos_, 2, op) == 0) {
                t.text = op;
                take();
                take();
                return t;
            }
        }
        if (std::string("{}():.!").find(c) != std::string::npos) {
            t.text = std::string(1, take());
            return t;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }

private:
    char take() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    void skip_ws_and_comments() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') take();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                take();
            } else {
                break;
            }
        }
    }
    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

class TokenStream {
public:
    explicit TokenStream(const std::string& src) : lex_(src) { cur_ = lex_.next(); }
    const Token& peek() const { return cur_; }
    Token take() {
        Token t = cur_;
        cur_ = lex_.next();
        return t;
    }
    Token expect(Token::Kind kind, const std::string& what) {
        if (cur_.kind != kind) throw ParseError("expected " + what, cur_.line, cur_.col);
        return take();
    }
    void expect_punct(const std::string& text) {
        if (cur_.kind != Token::Kind::Punct || cur_.text != text)
            throw ParseError("expected '" + text + "'", cur_.line, cur_.col);
        take();
    }
    Token expect_ident(const std::string& name) {
        Token t = expect(Token::Kind::Ident, "identifier '" + name + "'");
        if (t.text != name) throw ParseError("expected '" + name + "'", t.line, t.col);
        return t;
    }
    bool at_punct(const std::string& text) const {
        return cur_.kind == Token::Kind::Punct && cur_.text == text;
    }
    bool done() const { return cur_.kind == Token::Kind::End; }

private:
    Lexer lex_;
    Token cur_;
};

// Condition grammar: or-expr; or := and ('||' and)*; and := unary ('&&'
// unary)*; unary := '!' unary | '(' or ')' | comparison | 'true'.
class ConditionParser {
public:
    explicit ConditionParser(TokenStream& ts) : ts_(ts) {}

    ConditionPtr parse() {
        ConditionPtr e = parse_or();
        if (!ts_.done())
            throw ParseError("trailing input in condition", ts_.peek().line, ts_.peek().col);
        return e;
    }

private:
    ConditionPtr parse_or() {
        ConditionPtr left = parse_and();
        while (ts_.at_punct("||")) {
            ts_.take();
            auto node = std::make_shared<ConditionExpr>();
            node->kind = ConditionExpr::Kind::Or;
            node->a = left;
            node->b = parse_and();
            left = node;
        }
        return left;
    }

    ConditionPtr parse_and() {
        ConditionPtr left = parse_unary();
        while (ts_.at_punct("&&")) {
            ts_.take();
            auto node = std::make_shared<ConditionExpr>();
            node->kind = ConditionExpr::Kind::And;
            node->a = left;
            node->b = parse_unary();
            left = node;
        }
        return left;
    }

    ConditionPtr parse_unary() {
        if (ts_.at_punct("!")) {
            ts_.take();
            auto node = std::make_shared<ConditionExpr>();
            node->kind = ConditionExpr::Kind::Not;
            node->a = parse_unary();
            return node;
        }
        if (ts_.at_punct("(")) {
            ts_.take();
            ConditionPtr inner = parse_or();
            ts_.expect_punct(")");
            return inner;
        }
        return parse_comparison();
    }

    ConditionPtr parse_comparison() {
        // Bare 'true' as the always-satisfied condition.
        if (ts_.peek().kind == Token::Kind::Ident && ts_.peek().text == "true") {
            ts_.take();
            auto node = std::make_shared<ConditionExpr>();
            node->kind = ConditionExpr::Kind::True;
            return node;
        }
        Operand lhs = parse_operand();
        if (!ts_.at_punct("==") && !ts_.at_punct("!="))
            throw ParseError("expected comparison operator", ts_.peek().line, ts_.peek().col);
        bool neq = ts_.take().text == "!=";
        Operand rhs = parse_operand();
        auto node = std::make_shared<ConditionExpr>();
        node->kind = ConditionExpr::Kind::Compare;
        node->lhs = lhs;
        node->rhs = rhs;
        node->not_equal = neq;
        return node;
    }

    Operand parse_operand() {
        Token t = ts_.take();
        if (t.kind == Token::Kind::String) return Literal{t.text};
        if (t.kind != Token::Kind::Ident)
            throw ParseError("expected attribute or literal", t.line, t.col);
        if ((t.text == "p" || t.text == "r") && ts_.at_punct(".")) {
            return parse_attr_ref(t.text[0], t.line, t.col);
        }
        return Literal{t.text};
    }

    // p.attr, r.attr, p.getIdentifier(), r.attr.getIdentifier().
    AttrRef parse_attr_ref(char binder, int line, int col) {
        ts_.expect_punct(".");
        Token first = ts_.expect(Token::Kind::Ident, "attribute name");
        if (first.text == "getIdentifier") {
            expect_call_parens();
            return AttrRef{binder, "id"};
        }
        if (ts_.at_punct(".")) {
            ts_.take();
            Token second = ts_.expect(Token::Kind::Ident, "attribute accessor");
            if (second.text != "getIdentifier")
                throw ParseError("only getIdentifier() may follow an attribute", second.line,
                                 second.col);
            expect_call_parens();
            return AttrRef{binder, first.text};
        }
        (void)line;
        (void)col;
        return AttrRef{binder, first.text};
    }

    void expect_call_parens() {
        ts_.expect_punct("(");
        ts_.expect_punct(")");
    }

    TokenStream& ts_;
};

AccessControlRule parse_one_rule(TokenStream& ts) {
    AccessControlRule rule;
    ts.expect_ident("rule");
    rule.name = ts.expect(Token::Kind::Ident, "rule name").text;
    ts.expect_punct("{");

    ts.expect_ident("description");
    ts.expect_punct(":");
    rule.description = ts.expect(Token::Kind::String, "description string").text;

    ts.expect_ident("participant");
    ts.expect_punct("(");
    Token pbind = ts.expect(Token::Kind::Ident, "participant binder");
    if (pbind.text != "p") throw ParseError("participant binder must be 'p'", pbind.line, pbind.col);
    ts.expect_punct(")");
    ts.expect_punct(":");
    rule.participant_pattern = ts.expect(Token::Kind::String, "participant pattern").text;

    ts.expect_ident("operation");
    ts.expect_punct(":");
    Token op = ts.expect(Token::Kind::Ident, "operation keyword");
    if (op.text == "READ") rule.operation = Operation::Read;
    else if (op.text == "WRITE") rule.operation = Operation::Write;
    else throw ParseError("unknown operation '" + op.text + "'", op.line, op.col);

    ts.expect_ident("resource");
    ts.expect_punct("(");
    Token rbind = ts.expect(Token::Kind::Ident, "resource binder");
    if (rbind.text != "r") throw ParseError("resource binder must be 'r'", rbind.line, rbind.col);
    ts.expect_punct(")");
    ts.expect_punct(":");
    rule.resource_pattern = ts.expect(Token::Kind::String, "resource pattern").text;

    ts.expect_ident("condition");
    ts.expect_punct(":");
    Token cond = ts.expect(Token::Kind::String, "condition string");
    {
        TokenStream cond_ts(cond.text);
        ConditionParser cp(cond_ts);
        try {
            rule.condition = cp.parse();
        } catch (const ParseError& e) {
            // Re-anchor to the rule file location of the condition string.
            throw ParseError(std::string("in condition: ") + e.what(), cond.line, cond.col);
        }
    }

    ts.expect_ident("action");
    ts.expect_punct(":");
    Token act = ts.expect(Token::Kind::Ident, "action keyword");
    if (act.text == "ALLOW") rule.action = Action::Allow;
    else if (act.text == "DENY") rule.action = Action::Deny;
    else throw ParseError("unknown action '" + act.text + "'", act.line, act.col);

    ts.expect_punct("}");
    return rule;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

std::string print_operand(const Operand& o) {
    if (std::holds_alternative<AttrRef>(o)) {
        const AttrRef& a = std::get<AttrRef>(o);
        return std::string(1, a.binder) + "." + a.attr;
    }
    return "\"" + escape(std::get<Literal>(o).value) + "\"";
}

void print_condition_rec(const ConditionExpr& c, std::string& out) {
    switch (c.kind) {
        case ConditionExpr::Kind::True:
            out += "true";
            return;
        case ConditionExpr::Kind::Compare:
            out += print_operand(c.lhs);
            out += c.not_equal ? " != " : " == ";
            out += print_operand(c.rhs);
            return;
        case ConditionExpr::Kind::And:
        case ConditionExpr::Kind::Or:
            out += "(";
            print_condition_rec(*c.a, out);
            out += c.kind == ConditionExpr::Kind::And ? " && " : " || ";
            print_condition_rec(*c.b, out);
            out += ")";
            return;
        case ConditionExpr::Kind::Not:
            out += "!(";
            print_condition_rec(*c.a, out);
            out += ")";
            return;
    }
}

}  // namespace

std::string to_string(Operation op) { return op == Operation::Read ? "READ" : "WRITE"; }
std::string to_string(Action a) { return a == Action::Allow ? "ALLOW" : "DENY"; }

std::vector<AccessControlRule> parse_rules(const std::string& text) {
    TokenStream ts(text);
    std::vector<AccessControlRule> rules;
    while (!ts.done()) rules.push_back(parse_one_rule(ts));
    return rules;
}

AccessControlRule parse_rule(const std::string& text) {
    auto rules = parse_rules(text);
    if (rules.size() != 1)
        throw ParseError("expected exactly one rule, got " + std::to_string(rules.size()), 1, 1);
    return rules.front();
}

std::string print_condition(const ConditionExpr& c) {
    std::string out;
    print_condition_rec(c, out);
    return out;
}

std::string print_rule(const AccessControlRule& r) {
    std::ostringstream os;
    os << "rule " << r.name << " {\n";
    os << "  description: \"" << escape(r.description) << "\"\n";
    os << "  participant(p): \"" << escape(r.participant_pattern) << "\"\n";
    os << "  operation: " << to_string(r.operation) << "\n";
    os << "  resource(r): \"" << escape(r.resource_pattern) << "\"\n";
    os << "  condition: \""
       << escape(r.condition ? print_condition(*r.condition) : "true") << "\"\n";
    os << "  action: " << to_string(r.action) << "\n";
    os << "}\n";
    return os.str();
}

std::string print_rules(const std::vector<AccessControlRule>& rules) {
    std::string out;
    for (const auto& r : rules) {
        if (!out.empty()) out += "\n";
        out += print_rule(r);
    }
    return out;
}

bool condition_equal(const ConditionExpr& x, const ConditionExpr& y) {
    if (x.kind != y.kind) return false;
    switch (x.kind) {
        case ConditionExpr::Kind::True:
            return true;
        case ConditionExpr::Kind::Compare:
            return x.lhs == y.lhs && x.rhs == y.rhs && x.not_equal == y.not_equal;
        case ConditionExpr::Kind::Not:
            return condition_equal(*x.a, *y.a);
        case ConditionExpr::Kind::And:
        case ConditionExpr::Kind::Or:
            return condition_equal(*x.a, *y.a) && condition_equal(*x.b, *y.b);
    }
    return false;
}

}  // namespace acl
