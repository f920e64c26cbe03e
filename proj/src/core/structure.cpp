#include "schemata/structure.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace schemata {

namespace {

struct Line {
    int number = 0;
    std::string text;
};

// Strips comments, drops blank lines, keeps 1-based line numbers.
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

class LineCursor {
public:
    LineCursor(const Line& line) : line_(line) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_.number, static_cast<int>(pos_) + 1);
    }

    void skipSpace() {
        while (pos_ < line_.text.size() && std::isspace(static_cast<unsigned char>(line_.text[pos_])))
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

    void expect(char c) {
        if (!tryConsume(c)) fail(std::string("expected '") + c + "'");
    }

    std::string ident() {
        skipSpace();
        size_t start = pos_;
        while (pos_ < line_.text.size()) {
            char c = line_.text[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$')
                ++pos_;
            else
                break;
        }
        if (start == pos_) fail("expected identifier");
        return line_.text.substr(start, pos_ - start);
    }

    int number() {
        skipSpace();
        size_t start = pos_;
        while (pos_ < line_.text.size() && std::isdigit(static_cast<unsigned char>(line_.text[pos_])))
            ++pos_;
        if (start == pos_) fail("expected number");
        return std::stoi(line_.text.substr(start, pos_ - start));
    }

    // First whitespace-delimited word of the line, without advancing.
    std::string keyword() {
        skipSpace();
        size_t end = pos_;
        while (end < line_.text.size() && !std::isspace(static_cast<unsigned char>(line_.text[end])))
            ++end;
        return line_.text.substr(pos_, end - pos_);
    }

private:
    const Line& line_;
    size_t pos_ = 0;
};

Tuple parseTuple(LineCursor& cur, int arity) {
    cur.expect('(');
    Tuple t;
    for (int i = 0; i < arity; ++i) {
        if (i > 0) cur.expect(',');
        t.push_back(cur.number());
    }
    cur.expect(')');
    return t;
}

}  // namespace

Structure::Structure(std::string name, Signature signature, int size,
                     std::vector<std::vector<Tuple>> relationData,
                     std::vector<Element> constantData)
    : name_(std::move(name)),
      signature_(std::move(signature)),
      size_(size),
      relationData_(std::move(relationData)),
      constantData_(std::move(constantData)) {
    if (size_ < 2) throw ValidationError("structure " + name_ + ": size at least 2 required");
    if (relationData_.size() != signature_.relations().size())
        throw ValidationError("structure " + name_ + ": relation data does not match signature");
    if (constantData_.size() != signature_.constants().size())
        throw ValidationError("structure " + name_ + ": constant data does not match signature");
    for (size_t r = 0; r < relationData_.size(); ++r) {
        int arity = signature_.relations()[r].arity;
        for (const auto& t : relationData_[r]) {
            if (static_cast<int>(t.size()) != arity)
                throw ValidationError("structure " + name_ + ": arity mismatch in relation " +
                                      signature_.relations()[r].name);
            for (Element e : t)
                if (e < 0 || e >= size_)
                    throw ValidationError("structure " + name_ + ": element " + std::to_string(e) +
                                          " out of range in relation " +
                                          signature_.relations()[r].name);
        }
        auto& data = relationData_[r];
        std::sort(data.begin(), data.end());
        data.erase(std::unique(data.begin(), data.end()), data.end());
    }
    for (Element e : constantData_)
        if (e < 0 || e >= size_)
            throw ValidationError("structure " + name_ + ": constant value " + std::to_string(e) +
                                  " out of range");
}

const std::vector<Tuple>& Structure::relation(const std::string& name) const {
    auto idx = signature_.relationIndex(name);
    if (!idx) throw ValidationError("no relation named " + name);
    return relationData_[*idx];
}

bool Structure::holds(int relationIndex, const Tuple& tuple) const {
    const auto& data = relationData_[relationIndex];
    return std::binary_search(data.begin(), data.end(), tuple);
}

Element Structure::constant(const std::string& name) const {
    auto idx = signature_.constantIndex(name);
    if (!idx) throw ValidationError("no constant named " + name);
    return constantData_[*idx];
}

Structure parseStructure(const std::string& text) {
    auto lines = significantLines(text);
    size_t li = 0;
    auto next = [&]() -> const Line& {
        if (li >= lines.size()) throw ParseError("unexpected end of document", lines.empty() ? 1 : lines.back().number, 1);
        return lines[li++];
    };

    LineCursor header(next());
    if (header.keyword() != "structure") header.fail("expected 'structure <name>' header");
    header.ident();
    LineCursor hc(lines[li - 1]);
    hc.ident();  // "structure"
    std::string name = hc.ident();

    LineCursor sz(next());
    if (sz.ident() != "size") sz.fail("expected 'size <n>'");
    int size = sz.number();

    LineCursor sig(next());
    if (sig.ident() != "signature") sig.fail("expected 'signature' line");
    std::vector<RelationDecl> rels;
    std::vector<std::string> consts;
    if (sig.keyword() != "rel") sig.fail("expected 'rel' section");
    sig.ident();
    while (!sig.atEnd() && sig.peek() != ';') {
        std::string rn = sig.ident();
        sig.expect('/');
        int arity = sig.number();
        rels.push_back({rn, arity});
    }
    sig.expect(';');
    if (sig.keyword() != "const") sig.fail("expected 'const' section");
    sig.ident();
    while (!sig.atEnd()) consts.push_back(sig.ident());
    Signature signature(rels, consts);

    std::vector<std::vector<Tuple>> relationData(rels.size());
    std::vector<bool> relSeen(rels.size(), false);
    std::vector<Element> constantData(consts.size(), -1);
    std::vector<bool> constSeen(consts.size(), false);

    while (li < lines.size()) {
        LineCursor cur(next());
        std::string kw = cur.ident();
        if (kw == "rel") {
            std::string rn = cur.ident();
            auto idx = signature.relationIndex(rn);
            if (!idx) cur.fail("relation " + rn + " not in signature");
            if (relSeen[*idx]) cur.fail("duplicate line for relation " + rn);
            relSeen[*idx] = true;
            cur.expect(':');
            bool first = true;
            while (!cur.atEnd()) {
                if (!first) cur.expect(';');
                if (cur.atEnd()) break;  // trailing separator
                relationData[*idx].push_back(parseTuple(cur, rels[*idx].arity));
                first = false;
            }
        } else if (kw == "const") {
            std::string cn = cur.ident();
            auto idx = signature.constantIndex(cn);
            if (!idx) cur.fail("constant " + cn + " not in signature");
            if (constSeen[*idx]) cur.fail("duplicate line for constant " + cn);
            constSeen[*idx] = true;
            cur.expect('=');
            constantData[*idx] = cur.number();
        } else {
            cur.fail("expected 'rel' or 'const' line");
        }
    }
    for (size_t i = 0; i < relSeen.size(); ++i)
        if (!relSeen[i]) throw ValidationError("missing data line for relation " + rels[i].name);
    for (size_t i = 0; i < constSeen.size(); ++i)
        if (!constSeen[i]) throw ValidationError("missing data line for constant " + consts[i]);

    return Structure(name, signature, size, std::move(relationData), std::move(constantData));
}

std::string serializeStructure(const Structure& s) {
    std::ostringstream out;
    out << "structure " << s.name() << "\n";
    out << "size " << s.size() << "\n";
    out << "signature rel";
    for (const auto& r : s.signature().relations()) out << ' ' << r.name << '/' << r.arity;
    out << "; const";
    for (const auto& c : s.signature().constants()) out << ' ' << c;
    out << "\n";
    for (size_t r = 0; r < s.signature().relations().size(); ++r) {
        out << "rel " << s.signature().relations()[r].name << ":";
        bool first = true;
        for (const auto& t : s.relation(static_cast<int>(r))) {
            out << (first ? " " : "; ") << '(';
            for (size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << t[i];
            out << ')';
            first = false;
        }
        out << "\n";
    }
    for (size_t c = 0; c < s.signature().constants().size(); ++c)
        out << "const " << s.signature().constants()[c] << " = " << s.constant(static_cast<int>(c))
            << "\n";
    return out.str();
}

bool isSubstructure(const Structure& a, const Structure& b) {
    if (a.signature() != b.signature()) throw ValidationError("signature mismatch");
    if (a.size() > b.size()) return false;
    for (size_t c = 0; c < a.signature().constants().size(); ++c)
        if (a.constant(static_cast<int>(c)) != b.constant(static_cast<int>(c))) return false;
    for (size_t r = 0; r < a.signature().relations().size(); ++r) {
        std::vector<Tuple> restricted;
        for (const auto& t : b.relation(static_cast<int>(r))) {
            bool inside = std::all_of(t.begin(), t.end(), [&](Element e) { return e < a.size(); });
            if (inside) restricted.push_back(t);
        }
        if (restricted != a.relation(static_cast<int>(r))) return false;
    }
    return true;
}

Structure applyPermutation(const Structure& a, const std::vector<Element>& pi) {
    if (static_cast<int>(pi.size()) != a.size()) throw ValidationError("permutation size mismatch");
    std::vector<bool> hit(a.size(), false);
    for (Element e : pi) {
        if (e < 0 || e >= a.size() || hit[e]) throw ValidationError("not a bijection");
        hit[e] = true;
    }
    std::vector<std::vector<Tuple>> relationData;
    for (size_t r = 0; r < a.signature().relations().size(); ++r) {
        std::vector<Tuple> mapped;
        for (const auto& t : a.relation(static_cast<int>(r))) {
            Tuple m(t.size());
            for (size_t i = 0; i < t.size(); ++i) m[i] = pi[t[i]];
            mapped.push_back(std::move(m));
        }
        relationData.push_back(std::move(mapped));
    }
    std::vector<Element> constantData;
    for (size_t c = 0; c < a.signature().constants().size(); ++c)
        constantData.push_back(pi[a.constant(static_cast<int>(c))]);
    return Structure(a.name(), a.signature(), a.size(), std::move(relationData),
                     std::move(constantData));
}

Structure restrictStructure(const Structure& a, int m, const std::string& name) {
    std::vector<std::vector<Tuple>> relationData;
    for (size_t r = 0; r < a.signature().relations().size(); ++r) {
        std::vector<Tuple> kept;
        for (const auto& t : a.relation(static_cast<int>(r)))
            if (std::all_of(t.begin(), t.end(), [&](Element e) { return e < m; }))
                kept.push_back(t);
        relationData.push_back(std::move(kept));
    }
    std::vector<Element> constantData;
    for (size_t c = 0; c < a.signature().constants().size(); ++c) {
        Element e = a.constant(static_cast<int>(c));
        if (e >= m)
            throw ValidationError("restriction drops constant " + a.signature().constants()[c]);
        constantData.push_back(e);
    }
    return Structure(name.empty() ? a.name() : name, a.signature(), m, std::move(relationData),
                     std::move(constantData));
}

}  // namespace schemata
