#ifndef ENERCAST_SAMPLE_HPP
#define ENERCAST_SAMPLE_HPP

#include "enercast/time.hpp"

#include <optional>
#include <string>
#include <vector>

namespace enercast {

/// One prediction instance: fixed-dimension input, target vector,
/// optional anchor (the 24 loads one week prior, for anchored targets)
/// and the day it belongs to. schema_id names the feature layout the
/// input follows; artifacts refuse samples from a different schema.
struct FeatureSample {
    std::vector<double> input;
    std::vector<double> target;
    std::optional<std::vector<double>> anchor;
    Date day_id;
    std::string schema_id;
    /// Absolute hour of the first target entry (for plot/report output).
    HourIndex target_start_hour = 0;
};

} // namespace enercast

#endif // ENERCAST_SAMPLE_HPP
