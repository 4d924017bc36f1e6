#pragma once

#include <stdexcept>
#include <string>

namespace bergman {

struct NotGammaUnitary : std::runtime_error {
    explicit NotGammaUnitary(const std::string& msg) : std::runtime_error(msg) {}
};

struct DeterminantNotOne : std::runtime_error {
    explicit DeterminantNotOne(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotInAlgebra : std::runtime_error {
    explicit NotInAlgebra(const std::string& msg) : std::runtime_error(msg) {}
};

struct BasisNotClosed : std::runtime_error {
    explicit BasisNotClosed(const std::string& msg) : std::runtime_error(msg) {}
};

struct NormalizationUnknown : std::runtime_error {
    explicit NormalizationUnknown(const std::string& msg) : std::runtime_error(msg) {}
};

struct CutoffTooLarge : std::runtime_error {
    explicit CutoffTooLarge(const std::string& msg) : std::runtime_error(msg) {}
};

struct LeakageExceeded : std::runtime_error {
    explicit LeakageExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

struct TruncationNotConverged : std::runtime_error {
    explicit TruncationNotConverged(const std::string& msg) : std::runtime_error(msg) {}
};

struct FitIllConditioned : std::runtime_error {
    explicit FitIllConditioned(const std::string& msg) : std::runtime_error(msg) {}
};

struct PoleHit : std::runtime_error {
    explicit PoleHit(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigInvalid : std::runtime_error {
    explicit ConfigInvalid(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace bergman
