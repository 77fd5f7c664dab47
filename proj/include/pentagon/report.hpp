#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pentagon {

/// Input or shape problem: the request itself is malformed (CLI exit 2).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A mathematically meaningful failure on well-formed input (CLI exit 1),
/// e.g. NotCongruent, Singular, NotGalois, SpanViolation.
struct MathError : std::runtime_error {
    std::string code;
    MathError(std::string c, const std::string& what)
        : std::runtime_error(c + ": " + what), code(std::move(c)) {}
};

struct Violation {
    std::string axiom;
    std::int64_t nonzero_entries = 0;
};

/// Result of an exact residual check: pass iff no violations were recorded.
struct CheckReport {
    std::string name;
    bool pass = true;
    std::vector<Violation> violations;

    explicit CheckReport(std::string n = "") : name(std::move(n)) {}

    void record(const std::string& axiom, std::int64_t nonzero) {
        if (nonzero != 0) {
            violations.push_back({axiom, nonzero});
            pass = false;
        }
    }

    void merge(const CheckReport& other) {
        for (const auto& v : other.violations)
            record(other.name.empty() ? v.axiom : other.name + "." + v.axiom,
                   v.nonzero_entries);
    }

    void require(const std::string& context) const {
        if (!pass) {
            std::string axioms;
            for (const auto& v : violations) {
                if (!axioms.empty()) axioms += ", ";
                axioms += v.axiom;
            }
            throw MathError("CheckFailed", context + " failed: " + axioms);
        }
    }
};

}  // namespace pentagon
