#include "schemata/ast.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace schemata {

bool Formula::containsRead() const {
    for (const auto& t : terms)
        if (t.containsRead()) return true;
    for (const auto& c : children)
        if (c.containsRead()) return true;
    return false;
}

namespace {

class Validator {
public:
    explicit Validator(Scheme& s) : s_(s) {}

    void run() {
        checkNames();
        if (s_.bodyKind == Scheme::BodyKind::Forall)
            validateForall();
        else
            validateInstructions();
        finishCaptured();
    }

private:
    Scheme& s_;
    std::map<std::string, int> capturedDims_;
    int maxNestedLevel_ = 0;
    std::vector<std::string> bound_;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ValidationError("scheme " + s_.name + ": " + msg);
    }

    void checkNames() {
        std::set<std::string> seen;
        auto declare = [&](const std::string& n, const char* what) {
            if (n == "succ") fail(std::string(what) + " may not be named succ");
            if (s_.signature.hasSymbol(n))
                fail(std::string(what) + " " + n + " collides with a signature symbol");
            if (!seen.insert(n).second) fail("duplicate name " + n);
        };
        for (const auto& v : s_.ioVars) declare(v, "variable");
        for (const auto& v : s_.freeVars) declare(v, "variable");
        for (const auto& a : s_.arrays) {
            declare(a.name, "array");
            if (a.dimension < 1) fail("array " + a.name + " must have positive dimension");
        }
        if (s_.bodyKind == Scheme::BodyKind::Instructions && s_.ioVars.empty())
            fail("at least one input-output variable required");
    }

    bool isVar(const std::string& n) const { return s_.isIoVar(n) || s_.isFreeVar(n); }

    void useArray(const std::string& name, int dim) {
        if (const ArrayDecl* d = s_.findArray(name)) {
            if (d->dimension != dim)
                fail("array " + name + " has dimension " + std::to_string(d->dimension) +
                     ", used with " + std::to_string(dim) + " indices");
            return;
        }
        auto [it, inserted] = capturedDims_.emplace(name, dim);
        if (!inserted && it->second != dim)
            fail("array " + name + " used with inconsistent dimensions");
    }

    void checkTerm(const Term& t) {
        switch (t.kind) {
            case Term::Kind::Zero:
            case Term::Kind::Max:
                return;
            case Term::Kind::Var:
                if (!isVar(t.name)) fail("unknown variable " + t.name);
                return;
            case Term::Kind::SigConst:
                if (!s_.signature.constantIndex(t.name)) fail("unknown constant " + t.name);
                return;
            case Term::Kind::ArrayRead:
                useArray(t.name, static_cast<int>(t.args.size()));
                for (const auto& a : t.args) checkTerm(a);
                return;
        }
    }

    void checkFormula(const Formula& f) {
        switch (f.kind) {
            case Formula::Kind::And:
            case Formula::Kind::Or:
            case Formula::Kind::Not:
                for (const auto& c : f.children) checkFormula(c);
                return;
            case Formula::Kind::Eq:
                for (const auto& t : f.terms) checkTerm(t);
                return;
            case Formula::Kind::Succ:
                if (!s_.successorMode) fail("succ atom outside built-in-successor mode");
                for (const auto& t : f.terms) checkTerm(t);
                return;
            case Formula::Kind::Rel: {
                auto idx = s_.signature.relationIndex(f.rel);
                if (!idx) fail("unknown relation " + f.rel);
                int arity = s_.signature.relations()[*idx].arity;
                if (arity != static_cast<int>(f.terms.size()))
                    fail("relation " + f.rel + " expects " + std::to_string(arity) + " arguments");
                for (const auto& t : f.terms) checkTerm(t);
                return;
            }
        }
    }

    void checkAssignTarget(const std::string& v) {
        if (s_.isFreeVar(v)) fail("free variable " + v + " may not be assigned or guessed");
        if (!s_.isIoVar(v)) fail("unknown variable " + v);
    }

    void checkTest(const Test& t) {
        if (t.isNested()) {
            const Scheme& inner = *t.nested;
            if (inner.bodyKind != Scheme::BodyKind::Forall || inner.level % 2 != 0)
                fail("nested test " + inner.name + " must be a scheme of even level");
            if (inner.mode != s_.mode || inner.successorMode != s_.successorMode)
                fail("nested test " + inner.name + " has a different mode");
            if (!(inner.signature == s_.signature))
                fail("nested test " + inner.name + " is over a different signature");
            for (const auto& fv : inner.freeVars)
                if (!isVar(fv))
                    fail("free variable " + fv + " of nested test " + inner.name +
                         " is not an io/free variable here");
            maxNestedLevel_ = std::max(maxNestedLevel_, inner.level);
            for (const auto& b : inner.boundVars)
                if (std::find(bound_.begin(), bound_.end(), b) == bound_.end())
                    bound_.push_back(b);
            for (const auto& cap : inner.capturedArrays) useArray(cap.name, cap.dimension);
        } else {
            checkFormula(*t.qf);
        }
    }

    void checkInstrs(const std::vector<Instr>& instrs) {
        for (const auto& i : instrs) {
            switch (i.kind) {
                case Instr::Kind::AssignVar:
                    checkAssignTarget(i.var);
                    checkTerm(i.rhs);
                    break;
                case Instr::Kind::Guess:
                    checkAssignTarget(i.var);
                    break;
                case Instr::Kind::AssignArray:
                    useArray(i.array, static_cast<int>(i.indices.size()));
                    for (const auto& t : i.indices) checkTerm(t);
                    if (s_.mode == Mode::Npsb && i.rhs.kind != Term::Kind::Max)
                        fail("NPSB arrays are binary write-once: only '" + i.array +
                             "[...] := max' is allowed");
                    checkTerm(i.rhs);
                    break;
                case Instr::Kind::While:
                case Instr::Kind::If:
                    checkTest(i.test);
                    checkInstrs(i.body);
                    break;
                case Instr::Kind::IfElse:
                    checkTest(i.test);
                    checkInstrs(i.body);
                    checkInstrs(i.elseBody);
                    break;
            }
        }
    }

    void validateInstructions() {
        checkInstrs(s_.instructions);
        s_.level = maxNestedLevel_ == 0 ? 1 : maxNestedLevel_ + 1;
        s_.boundVars = bound_;
    }

    void validateForall() {
        if (!s_.inner) fail("forall scheme without inner scheme");
        const Scheme& inner = *s_.inner;
        if (inner.level % 2 != 1) fail("forall must quantify over a scheme of odd level");
        if (inner.mode != s_.mode || inner.successorMode != s_.successorMode ||
            !(inner.signature == s_.signature))
            fail("forall scheme must match the mode and signature of its inner scheme");
        if (s_.quantified.empty()) fail("forall needs at least one quantified variable");
        std::set<std::string> q;
        for (const auto& v : s_.quantified) {
            if (!q.insert(v).second) fail("duplicate quantified variable " + v);
            if (!inner.isFreeVar(v))
                fail("quantified variable " + v + " is not a free variable of " + inner.name);
        }
        if (!s_.ioVars.empty()) fail("forall schemes have no input-output variables");
        if (!s_.arrays.empty()) fail("forall schemes declare no arrays");
        s_.freeVars.clear();
        for (const auto& v : inner.freeVars)
            if (!q.count(v)) s_.freeVars.push_back(v);
        s_.boundVars.clear();
        for (const auto& v : inner.ioVars) s_.boundVars.push_back(v);
        for (const auto& v : inner.boundVars)
            if (std::find(s_.boundVars.begin(), s_.boundVars.end(), v) == s_.boundVars.end())
                s_.boundVars.push_back(v);
        for (const auto& v : s_.quantified)
            if (std::find(s_.boundVars.begin(), s_.boundVars.end(), v) == s_.boundVars.end())
                s_.boundVars.push_back(v);
        s_.level = inner.level + 1;
        for (const auto& cap : inner.capturedArrays) capturedDims_.emplace(cap.name, cap.dimension);
    }

    void finishCaptured() {
        s_.capturedArrays.clear();
        for (const auto& [name, dim] : capturedDims_) s_.capturedArrays.push_back({name, dim});
    }
};

}  // namespace

std::shared_ptr<Scheme> validateScheme(std::shared_ptr<Scheme> s) {
    Validator(*s).run();
    return s;
}

}  // namespace schemata
