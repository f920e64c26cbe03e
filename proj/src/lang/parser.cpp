#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "schemata/scheme_io.hpp"

namespace schemata {

namespace {

const std::set<std::string>& reservedWords() {
    static const std::set<std::string> words = {
        "scheme", "end",   "mode",  "npsb", "npsa", "successor", "signature", "rel",
        "const",  "arrays", "free", "input", "output", "forall", "of",        "guess",
        "while",  "do",    "od",   "if",   "then", "else",      "fi",        "max",
        "succ"};
    return words;
}

struct Line {
    int number = 0;
    std::string text;
};

std::vector<Line> significantLines(const std::string& text) {
    std::vector<Line> out;
    int number = 0;
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        size_t a = raw.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        size_t b = raw.find_last_not_of(" \t\r");
        out.push_back({number, raw.substr(a, b - a + 1)});
    }
    return out;
}

class Cursor {
public:
    explicit Cursor(const Line& line) : line_(line) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_.number, static_cast<int>(pos_) + 1);
    }

    void skipSpace() {
        while (pos_ < line_.text.size() &&
               std::isspace(static_cast<unsigned char>(line_.text[pos_])))
            ++pos_;
    }

    bool atEnd() {
        skipSpace();
        return pos_ >= line_.text.size();
    }

    char peek() {
        skipSpace();
        return pos_ < line_.text.size() ? line_.text[pos_] : '\0';
    }

    bool tryConsume(char c) {
        skipSpace();
        if (pos_ < line_.text.size() && line_.text[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool tryConsume(const std::string& s) {
        skipSpace();
        if (line_.text.compare(pos_, s.size(), s) == 0) {
            pos_ += s.size();
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!tryConsume(c)) fail(std::string("expected '") + c + "'");
    }

    // The next word (identifier or keyword), without consuming it.
    std::string peekWord() {
        skipSpace();
        size_t end = pos_;
        while (end < line_.text.size()) {
            char c = line_.text[end];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$')
                ++end;
            else
                break;
        }
        return line_.text.substr(pos_, end - pos_);
    }

    std::string word() {
        std::string w = peekWord();
        if (w.empty()) fail("expected a word");
        pos_ += w.size();
        return w;
    }

    void expectWord(const std::string& w) {
        if (word() != w) fail("expected '" + w + "'");
    }

    void expectEnd() {
        if (!atEnd()) fail("unexpected trailing input");
    }

    int number() {
        skipSpace();
        size_t start = pos_;
        while (pos_ < line_.text.size() &&
               std::isdigit(static_cast<unsigned char>(line_.text[pos_])))
            ++pos_;
        if (start == pos_) fail("expected number");
        return std::stoi(line_.text.substr(start, pos_ - start));
    }

private:
    const Line& line_;
    size_t pos_ = 0;
};

class SchemeFileParser {
public:
    SchemeFileParser(const std::string& text, const ParseOptions& opts)
        : lines_(significantLines(text)), opts_(opts) {}

    SchemePtr parse() {
        if (lines_.empty()) throw ParseError("empty scheme file", 1, 1);
        SchemePtr last;
        while (li_ < lines_.size()) last = parseSchemeDef();
        return last;
    }

private:
    std::vector<Line> lines_;
    ParseOptions opts_;
    size_t li_ = 0;
    std::map<std::string, SchemePtr> defined_;
    Signature sig_;  // signature of the scheme being parsed, for term resolution

    const Line& next() {
        if (li_ >= lines_.size())
            throw ParseError("unexpected end of file", lines_.back().number, 1);
        return lines_[li_++];
    }

    const Line& peekLine() {
        if (li_ >= lines_.size())
            throw ParseError("unexpected end of file", lines_.back().number, 1);
        return lines_[li_];
    }

    std::string identifier(Cursor& cur, bool declaration = false) {
        std::string w = cur.word();
        if (w.empty() || std::isdigit(static_cast<unsigned char>(w[0])))
            cur.fail("expected identifier");
        if (reservedWords().count(w)) cur.fail("'" + w + "' is a reserved word");
        if (declaration && w[0] == '$' && !opts_.allowInternalNames)
            cur.fail("identifiers starting with '$' are reserved");
        return w;
    }

    SchemePtr parseSchemeDef() {
        auto scheme = std::make_shared<Scheme>();

        Cursor head(next());
        head.expectWord("scheme");
        scheme->name = identifier(head, true);
        head.expectEnd();
        if (defined_.count(scheme->name)) head.fail("scheme " + scheme->name + " already defined");

        Cursor mode(next());
        mode.expectWord("mode");
        std::string m = mode.word();
        if (m == "npsb")
            scheme->mode = Mode::Npsb;
        else if (m == "npsa")
            scheme->mode = Mode::Npsa;
        else
            mode.fail("mode must be npsb or npsa");
        if (!mode.atEnd()) {
            mode.expectWord("successor");
            scheme->successorMode = true;
        }
        mode.expectEnd();

        scheme->signature = parseSignatureLine();
        sig_ = scheme->signature;

        while (true) {
            Cursor cur(peekLine());
            std::string kw = cur.peekWord();
            if (kw == "arrays") {
                Cursor c(next());
                c.expectWord("arrays");
                while (!c.atEnd()) {
                    std::string an = identifier(c, true);
                    c.expect('/');
                    scheme->arrays.push_back({an, c.number()});
                }
            } else if (kw == "free") {
                Cursor c(next());
                c.expectWord("free");
                while (!c.atEnd()) scheme->freeVars.push_back(identifier(c, true));
            } else {
                break;
            }
        }

        Cursor body(peekLine());
        std::string kw = body.peekWord();
        if (kw == "forall") {
            Cursor c(next());
            c.expectWord("forall");
            std::vector<std::string> qs;
            while (c.peekWord() != "of") qs.push_back(identifier(c));
            c.expectWord("of");
            std::string innerName = identifier(c);
            c.expectEnd();
            auto it = defined_.find(innerName);
            if (it == defined_.end()) c.fail("scheme " + innerName + " is not defined");
            scheme->bodyKind = Scheme::BodyKind::Forall;
            scheme->quantified = std::move(qs);
            scheme->inner = it->second;
            if (!scheme->freeVars.empty())
                c.fail("forall schemes compute their free variables; omit the free line");
        } else if (kw == "input") {
            Cursor c(next());
            c.expectWord("input");
            scheme->ioVars = parseVarList(c);
            c.expectEnd();
            scheme->bodyKind = Scheme::BodyKind::Instructions;
            scheme->instructions = parseInstructions();
            Cursor out(next());
            out.expectWord("output");
            auto outs = parseVarList(out);
            out.expectEnd();
            if (outs != scheme->ioVars)
                out.fail("output variable list must repeat the input list");
        } else {
            body.fail("expected 'input(...)' or 'forall ... of ...'");
        }

        Cursor tail(next());
        tail.expectWord("end");
        tail.expectEnd();

        auto validated = validateScheme(scheme);
        SchemePtr result = validated;
        defined_[result->name] = result;
        return result;
    }

    Signature parseSignatureLine() {
        Cursor c(next());
        c.expectWord("signature");
        std::vector<RelationDecl> rels;
        std::vector<std::string> consts;
        c.expectWord("rel");
        while (!c.atEnd() && c.peek() != ';') {
            std::string rn = identifier(c);
            c.expect('/');
            rels.push_back({rn, c.number()});
        }
        c.expect(';');
        c.expectWord("const");
        while (!c.atEnd()) consts.push_back(identifier(c));
        return Signature(rels, consts);
    }

    std::vector<std::string> parseVarList(Cursor& c) {
        c.expect('(');
        std::vector<std::string> vars;
        if (!c.tryConsume(')')) {
            vars.push_back(identifier(c, true));
            while (c.tryConsume(',')) vars.push_back(identifier(c, true));
            c.expect(')');
        }
        return vars;
    }

    // Parses instructions until a closing keyword (od / else / fi / output)
    // is the next line; the closer is left unconsumed.
    std::vector<Instr> parseInstructions() {
        std::vector<Instr> out;
        while (true) {
            Cursor probe(peekLine());
            std::string kw = probe.peekWord();
            if (kw == "output" || kw == "od" || kw == "else" || kw == "fi") return out;
            out.push_back(parseInstruction());
        }
    }

    Instr parseInstruction() {
        Cursor c(next());
        std::string kw = c.peekWord();
        if (kw == "guess") {
            c.expectWord("guess");
            Instr i = Instr::guess(identifier(c));
            c.expectEnd();
            return i;
        }
        if (kw == "while") {
            c.expectWord("while");
            Instr i;
            i.kind = Instr::Kind::While;
            i.test = parseTest(c);
            c.expectWord("do");
            c.expectEnd();
            i.body = parseInstructions();
            Cursor od(next());
            od.expectWord("od");
            od.expectEnd();
            return i;
        }
        if (kw == "if") {
            c.expectWord("if");
            Instr i;
            i.kind = Instr::Kind::If;
            i.test = parseTest(c);
            c.expectWord("then");
            c.expectEnd();
            i.body = parseInstructions();
            Cursor closer(next());
            std::string ck = closer.word();
            closer.expectEnd();
            if (ck == "else") {
                i.kind = Instr::Kind::IfElse;
                i.elseBody = parseInstructions();
                Cursor fi(next());
                fi.expectWord("fi");
                fi.expectEnd();
            } else if (ck != "fi") {
                closer.fail("expected 'else' or 'fi'");
            }
            return i;
        }
        // assignment: <var> := term  or  <Array>[...] := term
        std::string name = identifier(c);
        if (c.tryConsume('[')) {
            std::vector<Term> idx;
            idx.push_back(parseTerm(c));
            while (c.tryConsume(',')) idx.push_back(parseTerm(c));
            c.expect(']');
            c.expect(':');
            c.expect('=');
            Term rhs = parseTerm(c);
            c.expectEnd();
            return Instr::assignArray(name, std::move(idx), std::move(rhs));
        }
        c.expect(':');
        c.expect('=');
        Term rhs = parseTerm(c);
        c.expectEnd();
        return Instr::assign(name, std::move(rhs));
    }

    Test parseTest(Cursor& c) {
        Test t;
        if (c.tryConsume('@')) {
            std::string name = identifier(c);
            auto it = defined_.find(name);
            if (it == defined_.end()) c.fail("scheme " + name + " is not defined");
            t.nested = it->second;
            return t;
        }
        t.qf = parseFormula(c);
        return t;
    }

    Formula parseFormula(Cursor& c) {  // lowest precedence: |
        Formula f = parseConjunction(c);
        while (c.tryConsume('|')) f = Formula::disj(std::move(f), parseConjunction(c));
        return f;
    }

    Formula parseConjunction(Cursor& c) {
        Formula f = parseUnary(c);
        while (c.peek() == '&') {
            c.tryConsume('&');
            f = Formula::conj(std::move(f), parseUnary(c));
        }
        return f;
    }

    Formula parseUnary(Cursor& c) {
        if (c.tryConsume('!')) {
            if (c.peek() == '=') c.fail("'!=' needs a left-hand term");
            return Formula::neg(parseUnary(c));
        }
        if (c.tryConsume('(')) {
            Formula f = parseFormula(c);
            c.expect(')');
            return f;
        }
        return parseAtom(c);
    }

    Formula parseAtom(Cursor& c) {
        std::string w = c.peekWord();
        if (!w.empty() && !std::isdigit(static_cast<unsigned char>(w[0])) &&
            !reservedWords().count(w)) {
            // could be R(...) — look ahead past the word for '('
            Cursor probe = c;
            probe.word();
            if (probe.tryConsume('(')) {
                c.word();
                c.tryConsume('(');
                std::vector<Term> args;
                args.push_back(parseTerm(c));
                while (c.tryConsume(',')) args.push_back(parseTerm(c));
                c.expect(')');
                return Formula::atom(w, std::move(args));
            }
        }
        if (w == "succ") {
            c.word();
            c.expect('(');
            Term a = parseTerm(c);
            c.expect(',');
            Term b = parseTerm(c);
            c.expect(')');
            return Formula::succ(std::move(a), std::move(b));
        }
        Term lhs = parseTerm(c);
        if (c.tryConsume("!=")) {
            Term rhs = parseTerm(c);
            return Formula::neg(Formula::eq(std::move(lhs), std::move(rhs)));
        }
        c.expect('=');
        Term rhs = parseTerm(c);
        return Formula::eq(std::move(lhs), std::move(rhs));
    }

    Term parseTerm(Cursor& c) {
        if (c.peek() == '0') {
            c.tryConsume('0');
            return Term::zero();
        }
        if (std::isdigit(static_cast<unsigned char>(c.peek())))
            c.fail("only 0 and max are literal constants");
        std::string w = c.peekWord();
        if (w == "max") {
            c.word();
            return Term::max();
        }
        if (w.empty() || reservedWords().count(w)) c.fail("expected a term");
        c.word();
        if (c.tryConsume('[')) {
            std::vector<Term> idx;
            idx.push_back(parseTerm(c));
            while (c.tryConsume(',')) idx.push_back(parseTerm(c));
            c.expect(']');
            return Term::read(w, std::move(idx));
        }
        if (sig_.constantIndex(w)) return Term::sigConst(w);
        return Term::var(w);
    }
};

}  // namespace

SchemePtr parseScheme(const std::string& text, const ParseOptions& opts) {
    return SchemeFileParser(text, opts).parse();
}

}  // namespace schemata
