#ifndef TRAVERSE_ERRORS_HPP
#define TRAVERSE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace traverse {

/// Malformed user input: files, labels, out-of-universe vertices, bad flags.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Well-formed input that cannot be executed (infeasible workload, bad thresholds).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace traverse

#endif
