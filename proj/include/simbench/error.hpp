#pragma once

#include <stdexcept>
#include <string>

namespace simbench {

// Raised for invalid configuration (bad parameters, unknown metric names,
// inconsistent run setup). Maps to CLI exit code 1.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised for unusable input data (unreadable files, malformed records,
// corpora too small for the requested operation). Maps to CLI exit code 2.
class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace simbench
