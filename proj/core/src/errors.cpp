#include "hdml/errors.hpp"

namespace hdml {

UnknownCellError::UnknownCellError(const std::string& cell)
    : Error("unknown cell '" + cell + "'"), cell_(cell) {}

MissingLabelError::MissingLabelError(const std::string& cell)
    : Error("edge '" + cell + "' has no label"), cell_(cell) {}

ParseError::ParseError(std::size_t position, const std::string& message)
    : Error("syntax error at " + std::to_string(position) + ": " + message),
      position_(position) {}

UnknownSymbolError::UnknownSymbolError(std::size_t position, const std::string& symbol)
    : Error("unknown symbol '" + symbol + "' at " + std::to_string(position)),
      position_(position),
      symbol_(symbol) {}

}  // namespace hdml
