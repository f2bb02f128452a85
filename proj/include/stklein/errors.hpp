#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stklein {

/// Base class for every error raised by the library. `code()` is a stable
/// snake_case identifier used in machine-readable CLI output.
class Error : public std::runtime_error {
public:
    Error(std::string_view code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    std::string_view code() const noexcept { return code_; }

private:
    std::string_view code_;
};

/// Input outside the domain of a formula (imaginary momentum, |v| >= 1, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error("domain_error", what) {}
};

/// Vector-to-scalar offset ratio r_A/V >= 1: no Klein gap exists.
class InvalidGapCondition : public Error {
public:
    explicit InvalidGapCondition(const std::string& what)
        : Error("invalid_gap_condition", what) {}
};

/// Transmitted and reflected spinor ratios coincide; amplitudes undefined.
class DegenerateChannels : public Error {
public:
    explicit DegenerateChannels(const std::string& what)
        : Error("degenerate_channels", what) {}
};

/// The electron never crosses the front (v_m >= v_g, or j_i <= 0).
class NoScattering : public Error {
public:
    explicit NoScattering(const std::string& what) : Error("no_scattering", what) {}
};

class NoRoot : public Error {
public:
    explicit NoRoot(const std::string& what) : Error("no_root", what) {}
};

/// Static step inside the Klein gap: no propagating transmitted channel.
class EvanescentStatic : public Error {
public:
    explicit EvanescentStatic(const std::string& what)
        : Error("evanescent_static", what) {}
};

/// A physical identity that must hold did not (e.g. R != 1 inside the gap).
class InternalConsistencyError : public Error {
public:
    explicit InternalConsistencyError(const std::string& what)
        : Error("internal_consistency", what) {}
};

}  // namespace stklein
