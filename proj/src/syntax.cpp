#include "lprev/syntax.hpp"

#include <cctype>
#include <sstream>

namespace lprev {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Period, Implies, Colon, NotEqual, Section, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_blank();
        Token t{Tok::End, "", line_, col_};
        if (pos_ >= src_.size()) return t;
        char c = src_[pos_];
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                advance();
            }
            t.kind = Tok::Ident;
            t.text = std::string(src_.substr(start, pos_ - start));
            return t;
        }
        switch (c) {
            case '(': advance(); t.kind = Tok::LParen; return t;
            case ')': advance(); t.kind = Tok::RParen; return t;
            case ',': advance(); t.kind = Tok::Comma; return t;
            case '.': advance(); t.kind = Tok::Period; return t;
            case ':':
                advance();
                if (pos_ < src_.size() && src_[pos_] == '-') {
                    advance();
                    t.kind = Tok::Implies;
                } else {
                    t.kind = Tok::Colon;
                }
                return t;
            case '!':
                advance();
                if (pos_ < src_.size() && src_[pos_] == '=') {
                    advance();
                    t.kind = Tok::NotEqual;
                    return t;
                }
                throw ParseError("expected '=' after '!'", t.line, t.column);
            case '#': {
                advance();
                std::size_t start = pos_;
                while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) advance();
                t.kind = Tok::Section;
                t.text = std::string(src_.substr(start, pos_ - start));
                return t;
            }
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.column);
        }
    }

private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_blank() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

bool is_variable_name(const std::string& s) {
    return !s.empty() && (std::isupper(static_cast<unsigned char>(s[0])) || s[0] == '_');
}

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) { tok_ = lex_.next(); }

    const Token& peek() const { return tok_; }
    bool at(Tok k) const { return tok_.kind == k; }

    Token take() {
        Token t = tok_;
        tok_ = lex_.next();
        return t;
    }

    Token expect(Tok k, const char* what) {
        if (!at(k)) fail(std::string("expected ") + what);
        return take();
    }

    [[noreturn]] void fail(const std::string& msg) const {
        std::string found = tok_.kind == Tok::End ? "end of input" : "'" + tok_.text + "'";
        if (tok_.kind != Tok::End && tok_.text.empty()) found = "punctuation";
        throw ParseError(msg + " (found " + found + ")", tok_.line, tok_.column);
    }

    Term term() {
        Token t = expect(Tok::Ident, "a term");
        return is_variable_name(t.text) ? Term::variable(t.text) : Term::constant(t.text);
    }

    Atom atom_after(const Token& name) {
        if (is_variable_name(name.text)) {
            throw ParseError("predicate names must start with a lowercase letter", name.line, name.column);
        }
        if (name.text == "not") throw ParseError("'not' is not a predicate", name.line, name.column);
        Atom a{name.text, {}};
        if (at(Tok::LParen)) {
            take();
            a.args.push_back(term());
            while (at(Tok::Comma)) {
                take();
                a.args.push_back(term());
            }
            expect(Tok::RParen, "')'");
        }
        return a;
    }

    Atom atom() { return atom_after(expect(Tok::Ident, "an atom")); }

    // A body element: literal or guard.
    void body_item(Rule& r) {
        if (at(Tok::LParen)) {
            take();
            Disequality d;
            d.vars.push_back(term());
            while (at(Tok::Comma)) {
                take();
                d.vars.push_back(term());
            }
            expect(Tok::RParen, "')'");
            expect(Tok::NotEqual, "'!='");
            expect(Tok::LParen, "'('");
            d.values.push_back(term());
            while (at(Tok::Comma)) {
                take();
                d.values.push_back(term());
            }
            expect(Tok::RParen, "')'");
            add_guard(r, std::move(d));
            return;
        }
        Token first = expect(Tok::Ident, "a body literal");
        if (at(Tok::NotEqual)) {
            take();
            Disequality d;
            d.vars.push_back(is_variable_name(first.text) ? Term::variable(first.text)
                                                          : Term::constant(first.text));
            d.values.push_back(term());
            add_guard(r, std::move(d));
            return;
        }
        if (first.text == "not") {
            r.body.push_back(Literal::neg(atom()));
        } else {
            r.body.push_back(Literal::pos(atom_after(first)));
        }
    }

    void add_guard(Rule& r, Disequality d) {
        if (d.vars.size() != d.values.size()) fail("guard tuples differ in length");
        for (const auto& v : d.values) {
            if (v.is_variable()) fail("guard values must be constants");
        }
        r.guards.push_back(std::move(d));
    }

    Rule rule() {
        Rule r;
        if (at(Tok::Implies)) {
            take();
            r.head = Atom::bottom();
            body(r);
            expect(Tok::Period, "'.'");
            return r;
        }
        Token first = expect(Tok::Ident, "a rule");
        if (at(Tok::Colon)) {
            take();
            r.name = first.text;
            if (at(Tok::Implies)) {
                take();
                r.head = Atom::bottom();
                body(r);
                expect(Tok::Period, "'.'");
                return r;
            }
            first = expect(Tok::Ident, "a rule head");
        }
        r.head = atom_after(first);
        if (at(Tok::Implies)) {
            take();
            body(r);
        }
        expect(Tok::Period, "'.'");
        return r;
    }

    void body(Rule& r) {
        body_item(r);
        while (at(Tok::Comma)) {
            take();
            body_item(r);
        }
    }

private:
    Lexer lex_;
    Token tok_;
};

enum class Section { None, Persistent, Temporal, Backup, New };

std::string guard_text(const Disequality& d) {
    if (d.vars.size() == 1) return render_term(d.vars[0]) + " != " + render_term(d.values[0]);
    std::string lhs = "(", rhs = "(";
    for (std::size_t i = 0; i < d.vars.size(); ++i) {
        if (i) {
            lhs += ", ";
            rhs += ", ";
        }
        lhs += render_term(d.vars[i]);
        rhs += render_term(d.values[i]);
    }
    return lhs + ") != " + rhs + ")";
}

}  // namespace

Rule parse_rule(std::string_view text) {
    Parser p(text);
    Rule r = p.rule();
    if (!p.at(Tok::End)) p.fail("trailing input after rule");
    Program single{r};
    check_arities({&single});
    return r;
}

Atom parse_atom(std::string_view text) {
    Parser p(text);
    Atom a = p.atom();
    if (!p.at(Tok::End)) p.fail("trailing input after atom");
    return a;
}

Literal parse_literal(std::string_view text) {
    Parser p(text);
    Token first = p.expect(Tok::Ident, "a literal");
    Literal l = first.text == "not" ? Literal::neg(p.atom()) : Literal::pos(p.atom_after(first));
    if (!p.at(Tok::End)) p.fail("trailing input after literal");
    return l;
}

ParsedFramework parse_framework(std::string_view text) {
    Parser p(text);
    ParsedFramework out;
    Section section = Section::None;
    bool saw_new = false;
    std::vector<Rule> new_rules;

    while (!p.at(Tok::End)) {
        if (p.at(Tok::Section)) {
            Token t = p.take();
            if (t.text == "persistent") {
                section = Section::Persistent;
            } else if (t.text == "temporal") {
                section = Section::Temporal;
            } else if (t.text == "backup") {
                section = Section::Backup;
            } else if (t.text == "new") {
                section = Section::New;
                saw_new = true;
            } else {
                throw ParseError("unknown section '#" + t.text + "'", t.line, t.column);
            }
            continue;
        }
        Token start = p.peek();
        if (section == Section::None) {
            throw ParseError("rule outside of a section", start.line, start.column);
        }
        Rule r = p.rule();
        if (r.head.predicate == kDomain) {
            throw ParseError("predicate 'dom' is reserved", start.line, start.column);
        }
        if (!r.guards.empty()) {
            throw ParseError("guards are not allowed in framework rules", start.line, start.column);
        }
        switch (section) {
            case Section::Persistent: out.framework.persistent.push_back(std::move(r)); break;
            case Section::Temporal: out.framework.temporal.push_back(std::move(r)); break;
            case Section::Backup: out.framework.backup.push_back(std::move(r)); break;
            case Section::New:
                if (!new_rules.empty()) {
                    throw ParseError("the #new section holds exactly one rule", start.line, start.column);
                }
                new_rules.push_back(std::move(r));
                break;
            case Section::None: break;
        }
    }
    if (saw_new && new_rules.empty()) throw ParseError("the #new section is empty", 1, 1);
    if (!new_rules.empty()) out.new_rule = new_rules.front();

    // Names: explicit ones first, then fill the gaps.
    std::set<std::string> used;
    auto claim = [&](Rule& r) {
        if (r.name.empty()) return;
        if (!used.insert(r.name).second) throw ModelError("duplicate rule name '" + r.name + "'");
    };
    for (auto& r : out.framework.temporal) claim(r);
    for (auto& r : out.framework.backup) claim(r);
    auto assign = [&](Program& prog, const std::string& prefix) {
        std::size_t counter = 0;
        for (auto& r : prog) {
            if (!r.name.empty()) continue;
            std::string candidate;
            do {
                candidate = prefix + std::to_string(++counter);
            } while (used.contains(candidate));
            used.insert(candidate);
            r.name = candidate;
        }
    };
    assign(out.framework.temporal, "tmp");
    assign(out.framework.backup, "bck");

    Program extra;
    if (out.new_rule) extra.push_back(*out.new_rule);
    check_arities({&out.framework.persistent, &out.framework.temporal, &out.framework.backup, &extra});
    return out;
}

std::string render_term(const Term& t) { return t.name; }

std::string render_atom(const Atom& a) {
    std::string s = a.predicate;
    if (!a.args.empty()) {
        s += '(';
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (i) s += ", ";
            s += render_term(a.args[i]);
        }
        s += ')';
    }
    return s;
}

std::string render_literal(const Literal& l) { return (l.naf ? "not " : "") + render_atom(l.atom); }

std::string render_clause(const Rule& r) {
    std::vector<std::string> parts;
    for (const auto& l : r.body) parts.push_back(render_literal(l));
    for (const auto& g : r.guards) parts.push_back(guard_text(g));
    std::string s;
    if (r.head.is_bottom()) {
        if (parts.empty()) return kBottom;
        s = ":- ";
    } else {
        s = render_atom(r.head);
        if (parts.empty()) return s;
        s += " :- ";
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ", ";
        s += parts[i];
    }
    return s;
}

std::string render_rule(const Rule& r) { return render_clause(r) + "."; }

std::string render_named_rule(const Rule& r) {
    return r.name.empty() ? render_rule(r) : r.name + ": " + render_rule(r);
}

std::string render_program(const Program& p) {
    std::string s;
    for (const auto& r : p) s += render_rule(r) + "\n";
    return s;
}

std::string render_framework(const RevisionFramework& fw, const std::optional<Rule>& new_rule) {
    std::ostringstream os;
    os << "#persistent\n";
    for (const auto& r : fw.persistent) os << render_rule(r) << "\n";
    os << "#temporal\n";
    for (const auto& r : fw.temporal) os << render_named_rule(r) << "\n";
    os << "#backup\n";
    for (const auto& r : fw.backup) os << render_named_rule(r) << "\n";
    if (new_rule) os << "#new\n" << render_rule(*new_rule) << "\n";
    return os.str();
}

}  // namespace lprev
