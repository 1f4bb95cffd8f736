#pragma once

#include <stdexcept>
#include <string>

namespace qwlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A field containing NaN/Inf entries.
struct InvalidFieldError : Error { using Error::Error; };

// Constructor parameter outside its documented domain (width <= 0, delta outside (0,1], ...).
struct ParameterError : Error { using Error::Error; };

// Mixed norm over an empty time window.
struct EmptyWindowError : Error { using Error::Error; };

// A time that is not a nonnegative integer multiple of delta where one is required.
struct TimeGridError : Error { using Error::Error; };

// Two fields or a field and a multiplier table living on different rings.
struct GridMismatchError : Error { using Error::Error; };

// Eigenvalue collision |sin(delta p)| < 1e-10; message names the offending frequency.
struct DegenerateSymbolError : Error { using Error::Error; };

// Vanishing denominator in a derivative closed form.
struct SingularityError : Error { using Error::Error; };

// Non-admissible exponent pair fed to an estimate.
struct PairError : Error { using Error::Error; };

// Slope fit on fewer than 3 points.
struct FitError : Error { using Error::Error; };

// Anything else outside an operation's stated domain (t=0 decay ratio, zero input, ...).
struct DomainError : Error { using Error::Error; };

// Config file grammar or semantic violation; carries a 1-based line number (0 = whole file).
struct ConfigError : Error {
    int line;
    explicit ConfigError(const std::string& what, int line_ = 0) : Error(what), line(line_) {}
};

}
