#pragma once

#include <stdexcept>
#include <string>

namespace qg {

// Base class for all structured errors raised by the toolkit. The CLI maps
// ConfigError to exit code 2 and NonConvergent to exit code 3.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ZeroConstantTerm : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };

struct OutsideDomain : Error { using Error::Error; };
struct BadParams : Error { using Error::Error; };
struct DegenerateMetric : Error { using Error::Error; };
struct SingularTransform : Error { using Error::Error; };
struct FormMismatch : Error { using Error::Error; };

struct NotKilling : Error { using Error::Error; };
struct NotEinstein : Error { using Error::Error; };
struct BackgroundNotFlat : Error { using Error::Error; };

struct BadOrder : Error { using Error::Error; };
struct NonConvergent : Error { using Error::Error; };
struct MissingField : Error { using Error::Error; };
struct MissingGaugeRates : Error { using Error::Error; };
struct BadObserver : Error { using Error::Error; };

struct DegenerateCoupling : Error { using Error::Error; };
struct NotAdmissible : Error { using Error::Error; };
struct SingularFactor : Error { using Error::Error; };
struct DegenerateChange : Error { using Error::Error; };

struct ConfigError : Error { using Error::Error; };

} // namespace qg
