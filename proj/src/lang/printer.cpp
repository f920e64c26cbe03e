#include <map>
#include <sstream>

#include "schemata/scheme_io.hpp"

namespace schemata {

namespace {

void printTerm(std::ostream& out, const Term& t) {
    switch (t.kind) {
        case Term::Kind::Zero:
            out << '0';
            return;
        case Term::Kind::Max:
            out << "max";
            return;
        case Term::Kind::Var:
        case Term::Kind::SigConst:
            out << t.name;
            return;
        case Term::Kind::ArrayRead:
            out << t.name << '[';
            for (size_t i = 0; i < t.args.size(); ++i) {
                if (i) out << ", ";
                printTerm(out, t.args[i]);
            }
            out << ']';
            return;
    }
}

int precedence(const Formula& f) {
    switch (f.kind) {
        case Formula::Kind::Or:
            return 0;
        case Formula::Kind::And:
            return 1;
        case Formula::Kind::Not:
            // !(a = b) prints as a != b, which binds like an atom
            return f.children[0].kind == Formula::Kind::Eq ? 3 : 2;
        default:
            return 3;
    }
}

void printFormula(std::ostream& out, const Formula& f, int minPrec) {
    int prec = precedence(f);
    bool parens = prec < minPrec;
    if (parens) out << '(';
    switch (f.kind) {
        case Formula::Kind::Or:
            printFormula(out, f.children[0], 0);
            out << " | ";
            printFormula(out, f.children[1], 1);
            break;
        case Formula::Kind::And:
            printFormula(out, f.children[0], 1);
            out << " & ";
            printFormula(out, f.children[1], 2);
            break;
        case Formula::Kind::Not:
            if (f.children[0].kind == Formula::Kind::Eq) {
                const Formula& eq = f.children[0];
                printTerm(out, eq.terms[0]);
                out << " != ";
                printTerm(out, eq.terms[1]);
            } else {
                out << '!';
                printFormula(out, f.children[0], 2);
            }
            break;
        case Formula::Kind::Eq:
            printTerm(out, f.terms[0]);
            out << " = ";
            printTerm(out, f.terms[1]);
            break;
        case Formula::Kind::Succ:
            out << "succ(";
            printTerm(out, f.terms[0]);
            out << ", ";
            printTerm(out, f.terms[1]);
            out << ')';
            break;
        case Formula::Kind::Rel:
            out << f.rel << '(';
            for (size_t i = 0; i < f.terms.size(); ++i) {
                if (i) out << ", ";
                printTerm(out, f.terms[i]);
            }
            out << ')';
            break;
    }
    if (parens) out << ')';
}

void printTest(std::ostream& out, const Test& t) {
    if (t.isNested())
        out << '@' << t.nested->name;
    else
        printFormula(out, *t.qf, 0);
}

void printInstructions(std::ostream& out, const std::vector<Instr>& instrs, int depth) {
    std::string pad(2 * static_cast<size_t>(depth), ' ');
    for (const auto& i : instrs) {
        out << pad;
        switch (i.kind) {
            case Instr::Kind::AssignVar:
                out << i.var << " := ";
                printTerm(out, i.rhs);
                out << '\n';
                break;
            case Instr::Kind::AssignArray:
                out << i.array << '[';
                for (size_t k = 0; k < i.indices.size(); ++k) {
                    if (k) out << ", ";
                    printTerm(out, i.indices[k]);
                }
                out << "] := ";
                printTerm(out, i.rhs);
                out << '\n';
                break;
            case Instr::Kind::Guess:
                out << "guess " << i.var << '\n';
                break;
            case Instr::Kind::While:
                out << "while ";
                printTest(out, i.test);
                out << " do\n";
                printInstructions(out, i.body, depth + 1);
                out << pad << "od\n";
                break;
            case Instr::Kind::If:
                out << "if ";
                printTest(out, i.test);
                out << " then\n";
                printInstructions(out, i.body, depth + 1);
                out << pad << "fi\n";
                break;
            case Instr::Kind::IfElse:
                out << "if ";
                printTest(out, i.test);
                out << " then\n";
                printInstructions(out, i.body, depth + 1);
                out << pad << "else\n";
                printInstructions(out, i.elseBody, depth + 1);
                out << pad << "fi\n";
                break;
        }
    }
}

void collectDependencies(const SchemePtr& s, std::vector<SchemePtr>& order,
                         std::map<std::string, SchemePtr>& seen);

void collectFromInstrs(const std::vector<Instr>& instrs, std::vector<SchemePtr>& order,
                       std::map<std::string, SchemePtr>& seen) {
    for (const auto& i : instrs) {
        if (i.test.isNested()) collectDependencies(i.test.nested, order, seen);
        collectFromInstrs(i.body, order, seen);
        collectFromInstrs(i.elseBody, order, seen);
    }
}

void collectDependencies(const SchemePtr& s, std::vector<SchemePtr>& order,
                         std::map<std::string, SchemePtr>& seen) {
    if (auto it = seen.find(s->name); it != seen.end()) {
        if (it->second != s)
            throw ValidationError("two distinct schemes named " + s->name + " cannot be printed");
        return;
    }
    if (s->bodyKind == Scheme::BodyKind::Forall)
        collectDependencies(s->inner, order, seen);
    else
        collectFromInstrs(s->instructions, order, seen);
    seen.emplace(s->name, s);
    order.push_back(s);
}

void printOne(std::ostream& out, const Scheme& s) {
    out << "scheme " << s.name << '\n';
    out << "mode " << (s.mode == Mode::Npsb ? "npsb" : "npsa")
        << (s.successorMode ? " successor" : "") << '\n';
    out << "signature rel";
    for (const auto& r : s.signature.relations()) out << ' ' << r.name << '/' << r.arity;
    out << "; const";
    for (const auto& c : s.signature.constants()) out << ' ' << c;
    out << '\n';
    if (!s.arrays.empty()) {
        out << "arrays";
        for (const auto& a : s.arrays) out << ' ' << a.name << '/' << a.dimension;
        out << '\n';
    }
    if (s.bodyKind == Scheme::BodyKind::Forall) {
        out << "forall";
        for (const auto& q : s.quantified) out << ' ' << q;
        out << " of " << s.inner->name << '\n';
    } else {
        if (!s.freeVars.empty()) {
            out << "free";
            for (const auto& v : s.freeVars) out << ' ' << v;
            out << '\n';
        }
        out << "input(";
        for (size_t i = 0; i < s.ioVars.size(); ++i) out << (i ? ", " : "") << s.ioVars[i];
        out << ")\n";
        printInstructions(out, s.instructions, 1);
        out << "output(";
        for (size_t i = 0; i < s.ioVars.size(); ++i) out << (i ? ", " : "") << s.ioVars[i];
        out << ")\n";
    }
    out << "end\n";
}

}  // namespace

std::string printScheme(const SchemePtr& s) {
    std::vector<SchemePtr> order;
    std::map<std::string, SchemePtr> seen;
    collectDependencies(s, order, seen);
    std::ostringstream out;
    for (size_t i = 0; i < order.size(); ++i) {
        if (i) out << '\n';
        printOne(out, *order[i]);
    }
    return out.str();
}

}  // namespace schemata
