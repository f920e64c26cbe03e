#pragma once

#include <optional>
#include <string>
#include <vector>

#include "schemata/common.hpp"

namespace schemata {

struct RelationDecl {
    std::string name;
    int arity = 1;

    bool operator==(const RelationDecl&) const = default;
};

/// A relational vocabulary: relation symbols with positive arities plus
/// constant symbols. Names are unique across both lists and order is
/// significant (it fixes the canonical document form).
class Signature {
public:
    Signature() = default;
    Signature(std::vector<RelationDecl> relations, std::vector<std::string> constants);

    const std::vector<RelationDecl>& relations() const { return relations_; }
    const std::vector<std::string>& constants() const { return constants_; }

    std::optional<int> relationIndex(const std::string& name) const;
    std::optional<int> constantIndex(const std::string& name) const;
    bool hasSymbol(const std::string& name) const;

    bool operator==(const Signature&) const = default;

private:
    std::vector<RelationDecl> relations_;
    std::vector<std::string> constants_;
};

/// sigma_b = <P, Q, T1, T2, T3, C, D>; partitioned Petri nets.
const Signature& sigmaB();
/// sigma_a = <T1, T3, M, C>; general 1-in-1-out / 2-in-2-out Petri nets.
const Signature& sigmaA();
/// sigma_2 = <E>; graphs.
const Signature& sigma2();
/// <E, C>; the digraph-with-source vocabulary of the Proposition 14 sentence.
const Signature& sigma2c();

}  // namespace schemata
