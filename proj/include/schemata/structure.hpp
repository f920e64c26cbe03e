#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "schemata/signature.hpp"

namespace schemata {

using Tuple = std::vector<Element>;

/// A finite relational structure with universe 0..n-1, n >= 2. Immutable
/// after construction; safe to share across threads.
class Structure {
public:
    /// Validates everything: size >= 2, tuple arities, element ranges, and
    /// that every signature symbol has an entry. Relation data is stored
    /// sorted and deduplicated.
    Structure(std::string name, Signature signature, int size,
              std::vector<std::vector<Tuple>> relationData, std::vector<Element> constantData);

    const std::string& name() const { return name_; }
    const Signature& signature() const { return signature_; }
    int size() const { return size_; }

    const std::vector<Tuple>& relation(int index) const { return relationData_[index]; }
    const std::vector<Tuple>& relation(const std::string& name) const;
    bool holds(int relationIndex, const Tuple& tuple) const;
    Element constant(int index) const { return constantData_[index]; }
    Element constant(const std::string& name) const;

    bool operator==(const Structure&) const = default;

private:
    std::string name_;
    Signature signature_;
    int size_ = 0;
    std::vector<std::vector<Tuple>> relationData_;  // per relation, sorted + deduped
    std::vector<Element> constantData_;
};

/// An expansion A' of A by named constants (one per free variable of a scheme).
struct Expansion {
    const Structure* base = nullptr;
    std::vector<std::pair<std::string, Element>> bindings;
};

/// Parses the structure document format. Rejects everything invalid with
/// ParseError (syntax) or ValidationError (semantics).
Structure parseStructure(const std::string& text);

/// Canonical document form; parseStructure(serializeStructure(s)) == s,
/// and serialization of a parse of a canonical document is bit-identical.
std::string serializeStructure(const Structure& s);

/// True iff A's universe 0..nA-1, embedded identically into B's universe,
/// induces exactly A: every relation of A equals B's relation restricted to
/// A's universe, and constants agree. Throws on signature mismatch.
bool isSubstructure(const Structure& a, const Structure& b);

/// The isomorphic copy of A under the bijection pi (applied to every tuple
/// component and constant). Throws if pi is not a bijection on 0..n-1.
Structure applyPermutation(const Structure& a, const std::vector<Element>& pi);

/// Restriction of A to universe 0..m-1: keeps the tuples that fit. Constants
/// must fit (throws otherwise). The canonical way to build substructures.
Structure restrictStructure(const Structure& a, int m, const std::string& name = "");

}  // namespace schemata
