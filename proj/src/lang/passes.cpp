#include <algorithm>
#include <functional>

#include "schemata/passes.hpp"

namespace schemata {

namespace {

bool instrsContainIf(const std::vector<Instr>& instrs) {
    for (const auto& i : instrs) {
        if (i.kind == Instr::Kind::If || i.kind == Instr::Kind::IfElse) return true;
        if (instrsContainIf(i.body) || instrsContainIf(i.elseBody)) return true;
    }
    return false;
}

bool testsContainIf(const std::vector<Instr>& instrs);

bool schemeContainsIf(const Scheme& s) {
    if (s.bodyKind == Scheme::BodyKind::Forall) return schemeContainsIf(*s.inner);
    return instrsContainIf(s.instructions) || testsContainIf(s.instructions);
}

bool testsContainIf(const std::vector<Instr>& instrs) {
    for (const auto& i : instrs) {
        if (i.test.isNested() && schemeContainsIf(*i.test.nested)) return true;
        if (testsContainIf(i.body) || testsContainIf(i.elseBody)) return true;
    }
    return false;
}

class Desugarer {
public:
    explicit Desugarer(const Scheme& s) : s_(s) {}

    std::shared_ptr<Scheme> run() {
        auto out = std::make_shared<Scheme>(s_);
        out->instructions = rewrite(s_.instructions);
        for (const auto& f : flags_) {
            out->ioVars.push_back(f);
            out->instructions.push_back(Instr::assign(f, Term::max()));
        }
        return out;
    }

private:
    const Scheme& s_;
    int counter_ = 0;
    std::vector<std::string> flags_;

    std::string freshFlag() {
        std::string f = "$f" + std::to_string(++counter_);
        flags_.push_back(f);
        return f;
    }

    // flag = 0 conjoined onto a test. For nested-scheme tests the guard is
    // embedded into the inner scheme (a qf formula cannot be conjoined with
    // a scheme), as a diverge-unless-zero prologue on the flag.
    Test guardedTest(const std::string& flag, const Test& t) {
        Test out;
        if (!t.isNested()) {
            out.qf = Formula::conj(Formula::eq(Term::var(flag), Term::zero()), *t.qf);
            return out;
        }
        const Scheme& forall = *t.nested;
        auto inner = std::make_shared<Scheme>(*forall.inner);
        inner->name = forall.inner->name + "$g" + std::to_string(counter_);
        inner->freeVars.push_back(flag);
        Instr spin;
        spin.kind = Instr::Kind::While;
        spin.test.qf = Formula::neg(Formula::eq(Term::var(flag), Term::zero()));
        spin.body.push_back(Instr::assign(inner->ioVars[0], Term::var(inner->ioVars[0])));
        inner->instructions.insert(inner->instructions.begin(), std::move(spin));
        auto guarded = std::make_shared<Scheme>(forall);
        guarded->name = forall.name + "$g" + std::to_string(counter_);
        guarded->inner = validateScheme(inner);
        out.nested = validateScheme(guarded);
        return out;
    }

    Test rewriteTest(const Test& t) {
        if (!t.isNested() || !schemeContainsIf(*t.nested)) return t;
        auto forall = std::make_shared<Scheme>(*t.nested);
        forall->inner = Desugarer(*t.nested->inner).run();
        // keep the name only if nothing changed; otherwise mark the rewrite
        forall->name = t.nested->name + "$d";
        auto innerMut = std::const_pointer_cast<Scheme>(forall->inner);
        innerMut->name = t.nested->inner->name + "$d";
        forall->inner = validateScheme(innerMut);
        Test out;
        out.nested = validateScheme(forall);
        return out;
    }

    std::vector<Instr> rewrite(const std::vector<Instr>& instrs) {
        std::vector<Instr> out;
        for (const auto& i : instrs) {
            switch (i.kind) {
                case Instr::Kind::AssignVar:
                case Instr::Kind::AssignArray:
                case Instr::Kind::Guess:
                    out.push_back(i);
                    break;
                case Instr::Kind::While: {
                    Instr w;
                    w.kind = Instr::Kind::While;
                    w.test = rewriteTest(i.test);
                    w.body = rewrite(i.body);
                    out.push_back(std::move(w));
                    break;
                }
                case Instr::Kind::If: {
                    std::string f = freshFlag();
                    out.push_back(Instr::assign(f, Term::zero()));
                    Instr w;
                    w.kind = Instr::Kind::While;
                    w.test = guardedTest(f, rewriteTest(i.test));
                    w.body.push_back(Instr::assign(f, Term::max()));
                    auto body = rewrite(i.body);
                    w.body.insert(w.body.end(), body.begin(), body.end());
                    out.push_back(std::move(w));
                    break;
                }
                case Instr::Kind::IfElse: {
                    std::string f = freshFlag();
                    out.push_back(Instr::assign(f, Term::zero()));
                    Instr w1;
                    w1.kind = Instr::Kind::While;
                    w1.test = guardedTest(f, rewriteTest(i.test));
                    w1.body.push_back(Instr::assign(f, Term::max()));
                    auto thenBody = rewrite(i.body);
                    w1.body.insert(w1.body.end(), thenBody.begin(), thenBody.end());
                    out.push_back(std::move(w1));
                    Instr w2;
                    w2.kind = Instr::Kind::While;
                    w2.test.qf = Formula::eq(Term::var(f), Term::zero());
                    w2.body.push_back(Instr::assign(f, Term::max()));
                    auto elseBody = rewrite(i.elseBody);
                    w2.body.insert(w2.body.end(), elseBody.begin(), elseBody.end());
                    out.push_back(std::move(w2));
                    break;
                }
            }
        }
        return out;
    }
};

}  // namespace

SchemePtr desugar(const SchemePtr& s) {
    if (!schemeContainsIf(*s)) return s;
    if (s->bodyKind == Scheme::BodyKind::Forall) {
        auto out = std::make_shared<Scheme>(*s);
        out->name = s->name + "$d";
        auto inner = std::const_pointer_cast<Scheme>(desugar(s->inner));
        if (inner == s->inner) inner = std::make_shared<Scheme>(*s->inner);
        inner->name = s->inner->name + "$d";
        out->inner = validateScheme(inner);
        return validateScheme(out);
    }
    Desugarer d(*s);
    auto out = d.run();
    out->name = s->name + "$d";
    return validateScheme(out);
}

namespace {

class Normalizer {
public:
    explicit Normalizer(const Scheme& s) : s_(s) {}

    bool alreadyNormal() const {
        if (s_.arrays.size() > 1) return false;
        if (s_.arrays.empty()) return false;  // needs the dummy array
        return !anyTestReads(s_.instructions) && !anyNestedOperandReads(s_.instructions);
    }

    std::shared_ptr<Scheme> run() {
        auto out = std::make_shared<Scheme>(s_);
        out->name = s_.name + "$n";
        out->instructions = hoist(s_.instructions);
        for (const auto& v : hoistVars_) {
            out->ioVars.push_back(v);
            out->instructions.push_back(Instr::assign(v, Term::max()));
        }
        mergeArrays(*out);
        return validateScheme(out);
    }

private:
    const Scheme& s_;
    int counter_ = 0;
    std::vector<std::string> hoistVars_;

    static bool anyTestReads(const std::vector<Instr>& instrs) {
        for (const auto& i : instrs) {
            if ((i.kind == Instr::Kind::While || i.kind == Instr::Kind::If ||
                 i.kind == Instr::Kind::IfElse) &&
                !i.test.isNested() && i.test.qf->containsRead())
                return true;
            if (anyTestReads(i.body) || anyTestReads(i.elseBody)) return true;
        }
        return false;
    }

    static bool termHasNestedRead(const Term& t) {
        if (t.kind != Term::Kind::ArrayRead) return false;
        for (const auto& a : t.args)
            if (a.containsRead()) return true;
        return false;
    }

    static bool anyNestedOperandReads(const std::vector<Instr>& instrs) {
        for (const auto& i : instrs) {
            if (i.kind == Instr::Kind::AssignVar && termHasNestedRead(i.rhs)) return true;
            if (i.kind == Instr::Kind::AssignArray)
                for (const auto& idx : i.indices)
                    if (idx.containsRead()) return true;
            if (anyNestedOperandReads(i.body) || anyNestedOperandReads(i.elseBody)) return true;
        }
        return false;
    }

    std::string freshVar() {
        std::string v = "$r" + std::to_string(++counter_);
        hoistVars_.push_back(v);
        return v;
    }

    // Returns a read-free term; emits hoisting assignments into pre.
    Term hoistToAtomic(const Term& t, std::vector<Instr>& pre) {
        if (t.kind != Term::Kind::ArrayRead) return t;
        Term flat = flattenRead(t, pre);
        std::string v = freshVar();
        pre.push_back(Instr::assign(v, std::move(flat)));
        return Term::var(v);
    }

    // Returns an ArrayRead whose index terms are read-free.
    Term flattenRead(const Term& t, std::vector<Instr>& pre) {
        std::vector<Term> args;
        for (const auto& a : t.args) args.push_back(hoistToAtomic(a, pre));
        return Term::read(t.name, std::move(args));
    }

    Formula hoistFormula(const Formula& f, std::vector<Instr>& pre) {
        Formula out = f;
        out.children.clear();
        for (const auto& c : f.children) out.children.push_back(hoistFormula(c, pre));
        out.terms.clear();
        for (const auto& t : f.terms) out.terms.push_back(hoistToAtomic(t, pre));
        return out;
    }

    std::vector<Instr> hoist(const std::vector<Instr>& instrs) {
        std::vector<Instr> out;
        for (const auto& i : instrs) {
            switch (i.kind) {
                case Instr::Kind::Guess:
                    out.push_back(i);
                    break;
                case Instr::Kind::AssignVar: {
                    std::vector<Instr> pre;
                    Term rhs = i.rhs.kind == Term::Kind::ArrayRead ? flattenRead(i.rhs, pre)
                                                                   : hoistToAtomic(i.rhs, pre);
                    for (auto& p : pre) out.push_back(std::move(p));
                    out.push_back(Instr::assign(i.var, std::move(rhs)));
                    break;
                }
                case Instr::Kind::AssignArray: {
                    std::vector<Instr> pre;
                    std::vector<Term> idx;
                    for (const auto& x : i.indices) idx.push_back(hoistToAtomic(x, pre));
                    for (auto& p : pre) out.push_back(std::move(p));
                    out.push_back(Instr::assignArray(i.array, std::move(idx), i.rhs));
                    break;
                }
                case Instr::Kind::While: {
                    if (i.test.isNested())
                        throw ValidationError("normalize_for_translation requires a level-1 scheme");
                    std::vector<Instr> pre;
                    Formula t = hoistFormula(*i.test.qf, pre);
                    for (const auto& p : pre) out.push_back(p);
                    Instr w;
                    w.kind = Instr::Kind::While;
                    w.test.qf = std::move(t);
                    w.body = hoist(i.body);
                    w.body.insert(w.body.end(), pre.begin(), pre.end());
                    out.push_back(std::move(w));
                    break;
                }
                case Instr::Kind::If:
                case Instr::Kind::IfElse:
                    throw ValidationError("normalize_for_translation requires a desugared scheme");
            }
        }
        return out;
    }

    static void mergeArrays(Scheme& s) {
        if (s.arrays.empty()) {
            s.arrays.push_back({"$arr", 1});
            return;
        }
        if (s.arrays.size() == 1) return;
        int tagBits = 0;
        while ((1u << tagBits) < s.arrays.size()) ++tagBits;
        int maxDim = 0;
        for (const auto& a : s.arrays) maxDim = std::max(maxDim, a.dimension);

        std::vector<std::string> names;
        std::vector<int> dims;
        for (const auto& a : s.arrays) {
            names.push_back(a.name);
            dims.push_back(a.dimension);
        }
        auto ordinal = [&](const std::string& n) {
            return static_cast<int>(std::find(names.begin(), names.end(), n) - names.begin());
        };
        auto mapIndices = [&](const std::string& array, std::vector<Term> idx) {
            int ord = ordinal(array);
            std::vector<Term> out;
            for (int b = tagBits - 1; b >= 0; --b)
                out.push_back((ord >> b) & 1 ? Term::max() : Term::zero());
            for (auto& t : idx) out.push_back(std::move(t));
            for (int p = static_cast<int>(idx.size()); p < maxDim; ++p)
                out.push_back(Term::zero());
            return out;
        };

        std::function<Term(const Term&)> mapTerm = [&](const Term& t) -> Term {
            if (t.kind != Term::Kind::ArrayRead) return t;
            std::vector<Term> args;
            for (const auto& a : t.args) args.push_back(mapTerm(a));
            return Term::read("$B", mapIndices(t.name, std::move(args)));
        };
        std::function<Formula(const Formula&)> mapFormula = [&](const Formula& f) {
            Formula out = f;
            for (auto& c : out.children) c = mapFormula(c);
            for (auto& t : out.terms) t = mapTerm(t);
            return out;
        };
        std::function<void(std::vector<Instr>&)> mapInstrs = [&](std::vector<Instr>& instrs) {
            for (auto& i : instrs) {
                switch (i.kind) {
                    case Instr::Kind::AssignVar:
                        i.rhs = mapTerm(i.rhs);
                        break;
                    case Instr::Kind::AssignArray: {
                        std::vector<Term> idx;
                        for (auto& x : i.indices) idx.push_back(mapTerm(x));
                        i.indices = mapIndices(i.array, std::move(idx));
                        i.array = "$B";
                        i.rhs = mapTerm(i.rhs);
                        break;
                    }
                    case Instr::Kind::Guess:
                        break;
                    default:
                        if (!i.test.isNested()) i.test.qf = mapFormula(*i.test.qf);
                        mapInstrs(i.body);
                        mapInstrs(i.elseBody);
                }
            }
        };
        mapInstrs(s.instructions);
        s.arrays = {{"$B", tagBits + maxDim}};
    }
};

}  // namespace

SchemePtr normalizeForTranslation(const SchemePtr& s) {
    if (s->bodyKind != Scheme::BodyKind::Instructions || s->level != 1)
        throw ValidationError("normalize_for_translation requires a level-1 scheme");
    if (s->mode != Mode::Npsb)
        throw ValidationError("normalize_for_translation requires an NPSB scheme");
    if (instrsContainIf(s->instructions))
        throw ValidationError("normalize_for_translation requires a desugared scheme");
    if (!s->capturedArrays.empty())
        throw ValidationError("scheme references arrays it does not declare");
    Normalizer n(*s);
    if (n.alreadyNormal()) return s;
    return n.run();
}

}  // namespace schemata
