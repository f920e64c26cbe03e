#pragma once

#include <string>

#include "schemata/ast.hpp"

namespace schemata {

struct ParseOptions {
    /// Accept `$`-prefixed identifiers (reserved for compiler-introduced
    /// variables/arrays). Off for user-facing parses.
    bool allowInternalNames = false;
};

/// Parses a scheme file: one or more `scheme <name> ... end` definitions,
/// where `@name` in test position refers to an earlier definition. Returns
/// the entry scheme (the last definition) with nested schemes embedded.
SchemePtr parseScheme(const std::string& text, const ParseOptions& opts = {});

/// Canonical source form of a scheme: its nested-test dependencies first
/// (innermost first), the scheme itself last. parseScheme ∘ printScheme is
/// the identity.
std::string printScheme(const SchemePtr& s);

}  // namespace schemata
