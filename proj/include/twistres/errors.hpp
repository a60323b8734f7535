#pragma once

#include <stdexcept>
#include <string>

namespace twistres {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define TWISTRES_ERROR(Name)                                                   \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {}   \
    }

TWISTRES_ERROR(CompositionNonzero);
TWISTRES_ERROR(UnknownGenerator);
TWISTRES_ERROR(SpecMismatch);
TWISTRES_ERROR(ZeroElement);
TWISTRES_ERROR(NonInvertibleTruncation);
TWISTRES_ERROR(DegreeRaising);
TWISTRES_ERROR(CutoffTooSmall);
TWISTRES_ERROR(RestrictionFailure);
TWISTRES_ERROR(ChainMapFailure);
TWISTRES_ERROR(AugmentationError);
TWISTRES_ERROR(MissingLift);
TWISTRES_ERROR(ValidationError);
TWISTRES_ERROR(OutOfScope);

#undef TWISTRES_ERROR

/// Parse failure carrying a 1-based source position.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error("ParseError at " + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

} // namespace twistres
