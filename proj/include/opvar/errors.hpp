#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace opvar {

namespace detail {
inline std::string tolerance_suffix(double requested, double achieved) {
    char buf[80];
    std::snprintf(buf, sizeof(buf), " (requested %.3e; achieved %.3e)",
                  requested, achieved);
    return buf;
}
} // namespace detail

/// Thrown when an adaptive scheme cannot reach its requested tolerance.
/// Carries the best error bound actually achieved so callers can decide
/// whether the partial result is still usable.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double requested, double achieved,
                  double value = 0.0)
        : std::runtime_error(what + detail::tolerance_suffix(requested, achieved)),
          requested_(requested), achieved_(achieved), value_(value) {}

    double requested() const { return requested_; }
    double achieved() const { return achieved_; }
    double value() const { return value_; }

private:
    double requested_;
    double achieved_;
    double value_;
};

/// Thrown by the Panjer engine when the lattice cutoff leaves too much
/// probability mass unaccounted for.
class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& what, double missing_mass)
        : std::runtime_error(what), missing_mass_(missing_mass) {}

    double missing_mass() const { return missing_mass_; }

private:
    double missing_mass_;
};

} // namespace opvar
