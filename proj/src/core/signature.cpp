#include "schemata/signature.hpp"

#include <set>

namespace schemata {

Signature::Signature(std::vector<RelationDecl> relations, std::vector<std::string> constants)
    : relations_(std::move(relations)), constants_(std::move(constants)) {
    std::set<std::string> seen;
    for (const auto& r : relations_) {
        if (r.arity < 1) throw ValidationError("relation " + r.name + ": arity must be positive");
        if (!seen.insert(r.name).second)
            throw ValidationError("duplicate symbol name: " + r.name);
    }
    for (const auto& c : constants_) {
        if (!seen.insert(c).second) throw ValidationError("duplicate symbol name: " + c);
    }
}

std::optional<int> Signature::relationIndex(const std::string& name) const {
    for (size_t i = 0; i < relations_.size(); ++i)
        if (relations_[i].name == name) return static_cast<int>(i);
    return std::nullopt;
}

std::optional<int> Signature::constantIndex(const std::string& name) const {
    for (size_t i = 0; i < constants_.size(); ++i)
        if (constants_[i] == name) return static_cast<int>(i);
    return std::nullopt;
}

bool Signature::hasSymbol(const std::string& name) const {
    return relationIndex(name).has_value() || constantIndex(name).has_value();
}

const Signature& sigmaB() {
    static const Signature sig({{"P", 1}, {"Q", 1}, {"T1", 2}, {"T2", 3}, {"T3", 4}},
                               {"C", "D"});
    return sig;
}

const Signature& sigmaA() {
    static const Signature sig({{"T1", 2}, {"T3", 4}, {"M", 1}}, {"C"});
    return sig;
}

const Signature& sigma2() {
    static const Signature sig({{"E", 2}}, {});
    return sig;
}

const Signature& sigma2c() {
    static const Signature sig({{"E", 2}}, {"C"});
    return sig;
}

}  // namespace schemata
