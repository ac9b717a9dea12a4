#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cohcheck {

struct SourcePos {
    int line = 1;
    int column = 1;

    friend auto operator<=>(const SourcePos&, const SourcePos&) = default;
};

struct SourceSpan {
    std::string file;
    SourcePos start;
    SourcePos end;

    friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

std::string to_string(const SourceSpan& span);

// Stable error codes. Tests and the JSON output match on these strings.
namespace codes {
inline constexpr const char* DuplicateName = "E001";
inline constexpr const char* UnboundVariable = "E002";
inline constexpr const char* NotContractible = "E003";
inline constexpr const char* TypeMismatch = "E004";
inline constexpr const char* ArityMismatch = "E005";
inline constexpr const char* UnknownName = "E006";
inline constexpr const char* EndpointTypeMismatch = "E007";
inline constexpr const char* UnsupportedDepth = "E008";
inline constexpr const char* HookFailure = "E009";
inline constexpr const char* EmptyCarrier = "E010";
inline constexpr const char* DuplicateDecl = "E011";
inline constexpr const char* ParseError = "P001";
inline constexpr const char* ParseDuplicateDecl = "P002";
inline constexpr const char* LemmaFailure = "L001";
}  // namespace codes

struct Diagnostic {
    std::string code;
    std::string message;
    SourceSpan span;
};

/// Base exception for every user-facing failure. Carries a stable code and,
/// once known, the source span it should be reported against.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message, std::optional<SourceSpan> span = std::nullopt)
        : std::runtime_error(message), code_(std::move(code)), span_(std::move(span)) {}

    const std::string& code() const { return code_; }
    const std::optional<SourceSpan>& span() const { return span_; }
    void set_span_if_unset(const SourceSpan& span) {
        if (!span_) span_ = span;
    }

    Diagnostic diagnostic() const { return {code_, what(), span_.value_or(SourceSpan{})}; }

private:
    std::string code_;
    std::optional<SourceSpan> span_;
};

class ParseError : public Error {
public:
    ParseError(std::string code, const std::string& message, SourceSpan span,
               std::vector<std::string> expected = {})
        : Error(std::move(code), message, std::move(span)), expected_(std::move(expected)) {}

    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::vector<std::string> expected_;
};

}  // namespace cohcheck
