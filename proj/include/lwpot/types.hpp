#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lwpot {

/// Argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A numerical procedure failed to reach its accuracy contract
/// (series cap exhausted, step underflow, bracket exhaustion, ...).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A cross-check between two independent computation paths disagreed.
struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Sampled real function: strictly increasing abscissae paired with values,
/// optionally carrying derivative samples.
struct GridFunction {
    std::vector<double> xs;
    std::vector<double> values;
    std::vector<double> derivatives;  // empty when not carried

    std::size_t size() const { return xs.size(); }
    bool has_derivatives() const { return !derivatives.empty(); }

    void validate() const {
        if (xs.size() != values.size())
            throw DomainError("GridFunction: xs/values length mismatch");
        if (!derivatives.empty() && derivatives.size() != xs.size())
            throw DomainError("GridFunction: derivative length mismatch");
        for (std::size_t i = 1; i < xs.size(); ++i)
            if (!(xs[i] > xs[i - 1]))
                throw DomainError("GridFunction: abscissae not strictly increasing");
    }
};

/// Sign selectors for the two square roots entering the confluent
/// hypergeometric parameters; any combination yields a valid fundamental
/// system, the bound-state normalization uses (+,+).
struct SignPair {
    int sign_c = +1;
    int sign_s0 = +1;
};

}  // namespace lwpot
