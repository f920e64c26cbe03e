#pragma once

#include "schemata/ast.hpp"

namespace schemata {

/// Rewrites every if / if-then-else into while instructions with fresh
/// `$`-prefixed flag variables; flags are appended to the io variables and
/// forced to max before output, so verdicts are unchanged.
SchemePtr desugar(const SchemePtr& s);

/// Theorem 4 preconditioning for a desugared level-1 NPSB scheme: hoists
/// array reads out of tests (fresh variables, re-read before every test
/// evaluation), flattens nested reads in assignment operands, and merges all
/// arrays into a single array (0/max tag prefix plus 0-padding). Adds a
/// one-dimensional dummy array when the scheme has none. The result has
/// exactly one array symbol, appearing only in assignment instructions, and
/// is verdict-equivalent.
SchemePtr normalizeForTranslation(const SchemePtr& s);

/// Flattened, line-numbered view of an Instructions-body scheme.
struct LabeledLine {
    enum class Kind { Input, Output, AssignVar, AssignArray, Guess, Test, Jump };
    Kind kind = Kind::Jump;
    std::string var;
    Term rhs;
    std::string array;
    std::vector<Term> indices;
    Test test;
    int trueTarget = -1;   // Test: branch when true; Jump: unconditional target
    int falseTarget = -1;  // Test: branch when false
    std::string marker;    // "od" / "else" / "fi" for jump lines
};

struct LabeledScheme {
    SchemePtr source;
    std::vector<LabeledLine> lines;  // lines[0] is line 1 (input); back is output

    int lineCount() const { return static_cast<int>(lines.size()); }
};

/// Numbers the lines of a level-1 / odd-level scheme exactly as the canonical
/// printed form lays them out (line 1 = input, last line = output) and
/// computes control-flow successors.
LabeledScheme label(const SchemePtr& s);

}  // namespace schemata
