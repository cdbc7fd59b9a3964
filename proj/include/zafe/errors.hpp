#ifndef ZAFE_ERRORS_HPP
#define ZAFE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zafe {

// Machine-readable failure categories. The CLI maps these onto its exit-code
// contract: degenerate-parameter failures exit 3, usage errors exit 2,
// everything else computational exits 1.
enum class ErrorCode {
    domain,
    pole,
    degenerate,
    precision,
    quadrature,
    oscillation,
    convergence,
    window,
    band,
    validity,
    nonfinite,
    usage,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

    const char* code_name() const noexcept {
        switch (code_) {
            case ErrorCode::domain: return "E_DOMAIN";
            case ErrorCode::pole: return "E_POLE";
            case ErrorCode::degenerate: return "E_DEGENERATE";
            case ErrorCode::precision: return "E_PRECISION";
            case ErrorCode::quadrature: return "E_QUADRATURE";
            case ErrorCode::oscillation: return "E_OSCILLATION";
            case ErrorCode::convergence: return "E_CONVERGENCE";
            case ErrorCode::window: return "E_WINDOW";
            case ErrorCode::band: return "E_BAND";
            case ErrorCode::validity: return "E_VALIDITY";
            case ErrorCode::nonfinite: return "E_NONFINITE";
            case ErrorCode::usage: return "E_USAGE";
        }
        return "E_UNKNOWN";
    }

    int exit_status() const noexcept {
        switch (code_) {
            case ErrorCode::degenerate:
            case ErrorCode::band: return 3;
            case ErrorCode::usage: return 2;
            default: return 1;
        }
    }

private:
    ErrorCode code_;
};

struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error(ErrorCode::domain, w) {}
};
struct PoleError : Error {
    explicit PoleError(const std::string& w) : Error(ErrorCode::pole, w) {}
};
struct DegenerateError : Error {
    explicit DegenerateError(const std::string& w) : Error(ErrorCode::degenerate, w) {}
};
struct PrecisionError : Error {
    explicit PrecisionError(const std::string& w) : Error(ErrorCode::precision, w) {}
};
struct QuadratureError : Error {
    explicit QuadratureError(const std::string& w) : Error(ErrorCode::quadrature, w) {}
};
struct OscillationError : Error {
    explicit OscillationError(const std::string& w) : Error(ErrorCode::oscillation, w) {}
};
struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string& w) : Error(ErrorCode::convergence, w) {}
};
struct WindowError : Error {
    explicit WindowError(const std::string& w) : Error(ErrorCode::window, w) {}
};
struct BandError : Error {
    explicit BandError(const std::string& w) : Error(ErrorCode::band, w) {}
};
struct ValidityError : Error {
    explicit ValidityError(const std::string& w) : Error(ErrorCode::validity, w) {}
};
struct NonFiniteError : Error {
    explicit NonFiniteError(const std::string& w) : Error(ErrorCode::nonfinite, w) {}
};
struct UsageError : Error {
    explicit UsageError(const std::string& w) : Error(ErrorCode::usage, w) {}
};

}  // namespace zafe

#endif
