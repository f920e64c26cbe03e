#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "schemata/signature.hpp"

namespace schemata {

enum class Mode { Npsb, Npsa };

/// Standard semantics zeroes arrays for every nested-test evaluation (Def. 3
/// style); passed-arrays hands the current array snapshot across instead.
enum class Semantics { Standard, PassedArrays };

struct ArrayDecl {
    std::string name;
    int dimension = 1;

    bool operator==(const ArrayDecl&) const = default;
};

/// A term of the scheme language: a variable, a signature constant, one of
/// the special constants 0 / max, or an array read A[t1,...,td].
struct Term {
    enum class Kind { Var, SigConst, Zero, Max, ArrayRead };
    Kind kind = Kind::Zero;
    std::string name;        // Var, SigConst: symbol; ArrayRead: array name
    std::vector<Term> args;  // ArrayRead index terms

    static Term var(std::string n) { return {Kind::Var, std::move(n), {}}; }
    static Term sigConst(std::string n) { return {Kind::SigConst, std::move(n), {}}; }
    static Term zero() { return {Kind::Zero, "", {}}; }
    static Term max() { return {Kind::Max, "", {}}; }
    static Term read(std::string array, std::vector<Term> idx) {
        return {Kind::ArrayRead, std::move(array), std::move(idx)};
    }
    bool containsRead() const {
        if (kind == Kind::ArrayRead) return true;
        for (const auto& a : args)
            if (a.containsRead()) return true;
        return false;
    }
    bool operator==(const Term&) const = default;
};

/// Quantifier-free boolean combination of atoms over sigma ∪ {0, max}
/// (plus succ in built-in-successor mode).
struct Formula {
    enum class Kind { And, Or, Not, Rel, Eq, Succ };
    Kind kind = Kind::Eq;
    std::vector<Formula> children;  // And/Or: 2, Not: 1
    std::string rel;                // Rel atom
    std::vector<Term> terms;        // Rel args; Eq/Succ: exactly 2

    static Formula conj(Formula a, Formula b) {
        Formula f;
        f.kind = Kind::And;
        f.children = {std::move(a), std::move(b)};
        return f;
    }
    static Formula disj(Formula a, Formula b) {
        Formula f;
        f.kind = Kind::Or;
        f.children = {std::move(a), std::move(b)};
        return f;
    }
    static Formula neg(Formula a) {
        Formula f;
        f.kind = Kind::Not;
        f.children = {std::move(a)};
        return f;
    }
    static Formula eq(Term a, Term b) {
        Formula f;
        f.kind = Kind::Eq;
        f.terms = {std::move(a), std::move(b)};
        return f;
    }
    static Formula atom(std::string r, std::vector<Term> ts) {
        Formula f;
        f.kind = Kind::Rel;
        f.rel = std::move(r);
        f.terms = std::move(ts);
        return f;
    }
    static Formula succ(Term a, Term b) {
        Formula f;
        f.kind = Kind::Succ;
        f.terms = {std::move(a), std::move(b)};
        return f;
    }
    bool containsRead() const;
    bool operator==(const Formula&) const = default;
};

struct Scheme;
using SchemePtr = std::shared_ptr<const Scheme>;

/// A while/if test: either a quantifier-free formula or a nested scheme of
/// even level (Definition 3).
struct Test {
    std::optional<Formula> qf;
    SchemePtr nested;  // non-null iff nested scheme test

    bool isNested() const { return nested != nullptr; }
};

struct Instr {
    enum class Kind { AssignVar, AssignArray, Guess, While, If, IfElse };
    Kind kind = Kind::Guess;
    std::string var;           // AssignVar / Guess target
    Term rhs;                  // AssignVar / AssignArray right-hand side
    std::string array;         // AssignArray target
    std::vector<Term> indices; // AssignArray index terms
    Test test;                 // While / If / IfElse
    std::vector<Instr> body;
    std::vector<Instr> elseBody;

    static Instr assign(std::string v, Term t) {
        Instr i;
        i.kind = Kind::AssignVar;
        i.var = std::move(v);
        i.rhs = std::move(t);
        return i;
    }
    static Instr assignArray(std::string a, std::vector<Term> idx, Term t) {
        Instr i;
        i.kind = Kind::AssignArray;
        i.array = std::move(a);
        i.indices = std::move(idx);
        i.rhs = std::move(t);
        return i;
    }
    static Instr guess(std::string v) {
        Instr i;
        i.kind = Kind::Guess;
        i.var = std::move(v);
        return i;
    }
};

/// A program scheme. Level-1 and odd-level schemes carry instruction bodies;
/// even-level schemes are universal closures of the previous odd level.
struct Scheme {
    std::string name;
    Mode mode = Mode::Npsb;
    bool successorMode = false;
    Signature signature;
    std::vector<ArrayDecl> arrays;  // arrays declared by this scheme

    std::vector<std::string> ioVars;
    std::vector<std::string> freeVars;
    std::vector<std::string> boundVars;  // computed, levels >= 2

    enum class BodyKind { Instructions, Forall };
    BodyKind bodyKind = BodyKind::Instructions;
    std::vector<Instr> instructions;      // Instructions
    std::vector<std::string> quantified;  // Forall
    SchemePtr inner;                      // Forall

    int level = 1;  // computed

    /// Arrays referenced but not declared here: owned by an enclosing scheme
    /// (dimension inferred from the use sites). Reading them is only
    /// meaningful under passed-arrays semantics.
    std::vector<ArrayDecl> capturedArrays;

    bool declaresArray(const std::string& n) const {
        for (const auto& a : arrays)
            if (a.name == n) return true;
        return false;
    }
    const ArrayDecl* findArray(const std::string& n) const {
        for (const auto& a : arrays)
            if (a.name == n) return &a;
        return nullptr;
    }
    bool isIoVar(const std::string& n) const {
        for (const auto& v : ioVars)
            if (v == n) return true;
        return false;
    }
    bool isFreeVar(const std::string& n) const {
        for (const auto& v : freeVars)
            if (v == n) return true;
        return false;
    }
};

/// Validates an assembled scheme in place: variable discipline, NPSB write
/// restriction, arity checks, level classification, captured arrays.
/// Returns the same object with level / boundVars / capturedArrays filled in.
std::shared_ptr<Scheme> validateScheme(std::shared_ptr<Scheme> s);

}  // namespace schemata
