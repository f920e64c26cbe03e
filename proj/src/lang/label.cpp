#include "schemata/passes.hpp"

namespace schemata {

namespace {

void emitInstrs(const std::vector<Instr>& instrs, std::vector<LabeledLine>& lines) {
    for (const auto& i : instrs) {
        switch (i.kind) {
            case Instr::Kind::AssignVar: {
                LabeledLine l;
                l.kind = LabeledLine::Kind::AssignVar;
                l.var = i.var;
                l.rhs = i.rhs;
                lines.push_back(std::move(l));
                break;
            }
            case Instr::Kind::AssignArray: {
                LabeledLine l;
                l.kind = LabeledLine::Kind::AssignArray;
                l.array = i.array;
                l.indices = i.indices;
                l.rhs = i.rhs;
                lines.push_back(std::move(l));
                break;
            }
            case Instr::Kind::Guess: {
                LabeledLine l;
                l.kind = LabeledLine::Kind::Guess;
                l.var = i.var;
                lines.push_back(std::move(l));
                break;
            }
            case Instr::Kind::While: {
                int head = static_cast<int>(lines.size());
                LabeledLine h;
                h.kind = LabeledLine::Kind::Test;
                h.test = i.test;
                lines.push_back(std::move(h));
                emitInstrs(i.body, lines);
                int od = static_cast<int>(lines.size());
                LabeledLine j;
                j.kind = LabeledLine::Kind::Jump;
                j.trueTarget = head;
                j.marker = "od";
                lines.push_back(std::move(j));
                lines[head].trueTarget = head + 1;
                lines[head].falseTarget = od + 1;
                break;
            }
            case Instr::Kind::If: {
                int head = static_cast<int>(lines.size());
                LabeledLine h;
                h.kind = LabeledLine::Kind::Test;
                h.test = i.test;
                lines.push_back(std::move(h));
                emitInstrs(i.body, lines);
                int fi = static_cast<int>(lines.size());
                LabeledLine j;
                j.kind = LabeledLine::Kind::Jump;
                j.trueTarget = fi + 1;
                j.marker = "fi";
                lines.push_back(std::move(j));
                lines[head].trueTarget = head + 1;
                lines[head].falseTarget = fi;
                break;
            }
            case Instr::Kind::IfElse: {
                int head = static_cast<int>(lines.size());
                LabeledLine h;
                h.kind = LabeledLine::Kind::Test;
                h.test = i.test;
                lines.push_back(std::move(h));
                emitInstrs(i.body, lines);
                int el = static_cast<int>(lines.size());
                LabeledLine je;
                je.kind = LabeledLine::Kind::Jump;
                je.marker = "else";
                lines.push_back(std::move(je));
                emitInstrs(i.elseBody, lines);
                int fi = static_cast<int>(lines.size());
                LabeledLine jf;
                jf.kind = LabeledLine::Kind::Jump;
                jf.trueTarget = fi + 1;
                jf.marker = "fi";
                lines.push_back(std::move(jf));
                lines[el].trueTarget = fi;
                lines[head].trueTarget = head + 1;
                lines[head].falseTarget = el + 1;
                break;
            }
        }
    }
}

}  // namespace

LabeledScheme label(const SchemePtr& s) {
    if (s->bodyKind != Scheme::BodyKind::Instructions)
        throw ValidationError("label requires an instructions-body scheme");
    LabeledScheme out;
    out.source = s;
    LabeledLine in;
    in.kind = LabeledLine::Kind::Input;
    in.trueTarget = 1;
    out.lines.push_back(std::move(in));
    emitInstrs(s->instructions, out.lines);
    LabeledLine outp;
    outp.kind = LabeledLine::Kind::Output;
    out.lines.push_back(std::move(outp));
    return out;
}

}  // namespace schemata
