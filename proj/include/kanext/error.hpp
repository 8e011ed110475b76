#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kanext {

/// Broken axiom or law found while validating tables.
enum class ViolationKind {
    duplicate_identifier,
    dangling_reference,
    missing_identity,
    identity_ill_typed,
    composition_ill_typed,
    composition_conflict,
    composition_not_total,
    identity_law,
    associativity,
    mapping_missing,
    domain_codomain_mismatch,
    identity_not_preserved,
    composition_not_preserved,
    component_missing,
    component_ill_typed,
    naturality,
    function_ill_typed,
    duplicate_label,
    shape_mismatch,
};

inline const char* code_of(ViolationKind k)
{
    switch (k) {
    case ViolationKind::duplicate_identifier: return "duplicate_identifier";
    case ViolationKind::dangling_reference: return "dangling_reference";
    case ViolationKind::missing_identity: return "missing_identity";
    case ViolationKind::identity_ill_typed: return "identity_ill_typed";
    case ViolationKind::composition_ill_typed: return "composition_ill_typed";
    case ViolationKind::composition_conflict: return "composition_conflict";
    case ViolationKind::composition_not_total: return "composition_not_total";
    case ViolationKind::identity_law: return "identity_law";
    case ViolationKind::associativity: return "associativity";
    case ViolationKind::mapping_missing: return "mapping_missing";
    case ViolationKind::domain_codomain_mismatch: return "domain_codomain_mismatch";
    case ViolationKind::identity_not_preserved: return "identity_not_preserved";
    case ViolationKind::composition_not_preserved: return "composition_not_preserved";
    case ViolationKind::component_missing: return "component_missing";
    case ViolationKind::component_ill_typed: return "component_ill_typed";
    case ViolationKind::naturality: return "naturality";
    case ViolationKind::function_ill_typed: return "function_ill_typed";
    case ViolationKind::duplicate_label: return "duplicate_label";
    case ViolationKind::shape_mismatch: return "shape_mismatch";
    }
    return "unknown";
}

inline const char* describe(ViolationKind k)
{
    switch (k) {
    case ViolationKind::duplicate_identifier: return "identifier declared twice";
    case ViolationKind::dangling_reference: return "reference to an undeclared identifier";
    case ViolationKind::missing_identity: return "missing identity for an object";
    case ViolationKind::identity_ill_typed: return "identity morphism is not an endomorphism of its object";
    case ViolationKind::composition_ill_typed: return "composition entry has wrong domain or codomain";
    case ViolationKind::composition_conflict: return "composition entry given twice with different results";
    case ViolationKind::composition_not_total: return "composition not total on composable pair";
    case ViolationKind::identity_law: return "identity law fails";
    case ViolationKind::associativity: return "associativity fails";
    case ViolationKind::mapping_missing: return "mapping missing";
    case ViolationKind::domain_codomain_mismatch: return "domain/codomain not preserved";
    case ViolationKind::identity_not_preserved: return "identity not preserved";
    case ViolationKind::composition_not_preserved: return "composition not preserved";
    case ViolationKind::component_missing: return "component missing";
    case ViolationKind::component_ill_typed: return "component has wrong domain or codomain";
    case ViolationKind::naturality: return "naturality square fails";
    case ViolationKind::function_ill_typed: return "function is not total between the declared sets";
    case ViolationKind::duplicate_label: return "duplicate element label";
    case ViolationKind::shape_mismatch: return "shapes or endpoints do not match";
    }
    return "unknown violation";
}

struct Violation {
    ViolationKind kind;
    std::string detail;
    std::vector<std::string> ids;  // offending identifiers
};

inline std::string to_string(const Violation& v)
{
    std::string s = describe(v.kind);
    if (!v.detail.empty())
        s += ": " + v.detail;
    return s;
}

/// Base of every engine error. `code()` is a stable machine-readable tag.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what) : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Violation> violations)
        : Error("validation", summarize(violations)), violations_(std::move(violations))
    {}
    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    static std::string summarize(const std::vector<Violation>& vs)
    {
        std::string s = std::to_string(vs.size()) + " violation(s)";
        for (std::size_t i = 0; i < vs.size() && i < 3; ++i)
            s += (i == 0 ? ": " : "; ") + to_string(vs[i]);
        return s;
    }
    std::vector<Violation> violations_;
};

class NotFound : public Error {
public:
    NotFound(const std::string& kind, const std::string& name) : Error("not_found", kind + " not found: " + name) {}
};

/// Thrown when an exhaustive search would exceed its configured cap.
class GuardExceeded : public Error {
public:
    GuardExceeded(const std::string& what, double estimate, double cap)
        : Error("guard_exceeded",
                what + ": search-space estimate " + std::to_string(estimate) + " exceeds cap " + std::to_string(cap)),
          estimate_(estimate), cap_(cap)
    {}
    double estimate() const noexcept { return estimate_; }
    double cap() const noexcept { return cap_; }

private:
    double estimate_;
    double cap_;
};

class Mismatch : public Error {
public:
    explicit Mismatch(const std::string& what) : Error("mismatch", what) {}
};

class UniversalityViolation : public Error {
public:
    UniversalityViolation(const std::string& what, std::size_t survivors)
        : Error("universality", what + " (" + std::to_string(survivors) + " candidate(s) survived)"),
          survivors_(survivors)
    {}
    std::size_t survivors() const noexcept { return survivors_; }

private:
    std::size_t survivors_;
};

class UnsupportedForm : public Error {
public:
    explicit UnsupportedForm(const std::string& what) : Error("unsupported_form", what) {}
};

/// A colimit or limit required in a finite target category does not exist.
class MissingUniversal : public Error {
public:
    MissingUniversal(const std::string& what, std::string at) : Error("colimit_missing", what), at_(std::move(at)) {}
    const std::string& at() const noexcept { return at_; }

private:
    std::string at_;
};

class EmptyApproximation : public Error {
public:
    EmptyApproximation(const std::string& what, std::string at) : Error("empty_approximation", what), at_(std::move(at))
    {}
    const std::string& at() const noexcept { return at_; }

private:
    std::string at_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error("invalid_argument", what) {}
};

}  // namespace kanext
