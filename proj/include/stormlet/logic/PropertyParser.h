#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "stormlet/logic/Formula.h"

namespace stormlet::logic {

struct Property {
    /// Source text as given.
    std::string text;
    /// A P or R operator.
    StateFormulaPtr formula;
};

/// Parses one property. Throws SourceError(SyntaxError) with line and column.
Property parseProperty(std::string_view text);

/// One property per non-empty line; `//` starts a comment. Line numbers in diagnostics refer
/// to the file.
std::vector<Property> parsePropertyFile(std::string_view text);

}  // namespace stormlet::logic
