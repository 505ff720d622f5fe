#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace cxhyp {

using Complex = std::complex<double>;
using Mat3 = Eigen::Matrix3cd;
using Vec3 = Eigen::Vector3cd;

inline constexpr double kPi = 3.14159265358979323846;

// All library errors carry a stable category slug so the CLI can emit a
// machine-readable reason line without string matching on prose.
class Error : public std::runtime_error {
public:
    Error(std::string category, const std::string& msg)
        : std::runtime_error(msg), category_(std::move(category)) {}
    const std::string& category() const { return category_; }

private:
    std::string category_;
};

inline Error invalid_input(const std::string& msg) { return Error("invalid-input", msg); }
inline Error format_error(const std::string& msg) { return Error("format", msg); }
inline Error config_error(const std::string& msg) { return Error("configuration", msg); }
inline Error resource_error(const std::string& msg) { return Error("resource", msg); }

} // namespace cxhyp
