#ifndef SCATQ_ERRORS_HPP
#define SCATQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace scatq {

// Invalid mathematical parameters (failed preconditions); message names the condition.
class parameter_error : public std::invalid_argument {
public:
    explicit parameter_error(const std::string& what) : std::invalid_argument(what) {}
};

// An exact computation was requested beyond the configured enumeration/sweep budget.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// Two internal routes that must agree (theorem formula vs. solver, equation vs.
// enumeration) disagreed. Never resolved silently.
class selfcheck_error : public std::logic_error {
public:
    explicit selfcheck_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace scatq

#endif
