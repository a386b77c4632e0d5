#pragma once

#include <stdexcept>
#include <string>

namespace sphalu {

// Base class for all library errors. The CLI maps subclasses onto exit codes:
// input/parse problems -> 2, numerical failures -> 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- input / structural errors ---
struct NotSquare : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct InvalidSpec : Error {
    using Error::Error;
};
struct KOutOfRange : Error {
    using Error::Error;
};

struct NotCommuting : Error {
    double defect;
    NotCommuting(const std::string& msg, double defect_) : Error(msg), defect(defect_) {}
};
struct NotCrissCross : Error {
    double defect;
    NotCrissCross(const std::string& msg, double defect_) : Error(msg), defect(defect_) {}
};
struct ProductNotCommuting : Error {
    double defect;
    ProductNotCommuting(const std::string& msg, double defect_) : Error(msg), defect(defect_) {}
};

// --- numerical failures ---
struct NotHermitian : Error {
    using Error::Error;
};
struct NotPsd : Error {
    using Error::Error;
};
struct ConvergenceFailure : Error {
    using Error::Error;
};
struct TriangularizationFailure : Error {
    using Error::Error;
};
struct CertificationFailure : Error {
    using Error::Error;
};
struct IndexAnomalous : Error {
    using Error::Error;
};

}  // namespace sphalu
