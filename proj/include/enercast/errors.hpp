#ifndef ENERCAST_ERRORS_HPP
#define ENERCAST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace enercast {

/// Base class for all enercast errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Vector/matrix dimension mismatch.
struct ShapeError : Error {
    using Error::Error;
};

/// Malformed input file (CSV, holiday list, JSON artifact).
struct FormatError : Error {
    using Error::Error;
};

/// Requested span lies outside the available data.
struct RangeError : Error {
    using Error::Error;
};

/// MAPE-family loss or metric asked to divide by a (near-)zero target.
struct DegenerateTargetError : Error {
    using Error::Error;
};

/// Anchored encoding given a nonpositive anchor entry.
struct DegenerateAnchorError : Error {
    using Error::Error;
};

/// Feature builder is missing a required lag or aggregation period.
struct InsufficientHistoryError : Error {
    using Error::Error;
};

/// Sample schema does not match the artifact schema.
struct SchemaError : Error {
    using Error::Error;
};

/// Anchored artifact asked to predict on a sample without an anchor.
struct MissingAnchorError : Error {
    using Error::Error;
};

/// Invalid configuration value (synth config, metric parameters, ...).
struct ValidationError : Error {
    using Error::Error;
};

/// Scenario evaluation found no complete window in the test span.
struct EmptyScenarioError : Error {
    using Error::Error;
};

/// Training produced a non-finite loss.
struct DivergedTrainingError : Error {
    DivergedTrainingError(const std::string& msg, int epoch_index)
        : Error(msg), epoch(epoch_index) {}
    int epoch;
};

/// Bad command line or config file usage.
struct UsageError : Error {
    using Error::Error;
};

} // namespace enercast

#endif // ENERCAST_ERRORS_HPP
