#pragma once

#include <stdexcept>
#include <string>

namespace relopt {

// Thrown when a series or quadrature could not reach the requested
// tolerance. Carries the best estimate obtained so far.
class accuracy_error : public std::runtime_error {
public:
    accuracy_error(const std::string& what, double partial_value, long terms_used)
        : std::runtime_error(what), partial(partial_value), terms(terms_used) {}

    double partial; // best estimate at the point of failure
    long terms;     // series terms or quadrature intervals consumed
};

// Thrown when a requested operating point cannot satisfy its constraints
// (e.g. BER target unreachable under the transmit-power cap).
class infeasible_error : public std::runtime_error {
public:
    infeasible_error(const std::string& what, double required, double best)
        : std::runtime_error(what), required_value(required), best_achievable(best) {}

    double required_value;  // e.g. transmit power needed to meet the target
    double best_achievable; // e.g. best BER reachable at the cap
};

} // namespace relopt
