#pragma once
#include <cstdint>
#include <optional>

namespace qpartial {

/// Step-3 operator order. ReflectionThenOracle reflects about the global
/// average and then spends one extra oracle query on the target flip;
/// OracleThenReflection is a plain global Grover iteration.
enum class Step3Ordering {
    ReflectionThenOracle,  // "A"
    OracleThenReflection,  // "B"
};

/// Integer iteration counts for one run, plus the rounding residuals left
/// over from the real-valued asymptotic schedule.
struct QuerySchedule {
    std::int64_t j1 = 0;
    std::int64_t j2 = 0;
    Step3Ordering ordering = Step3Ordering::ReflectionThenOracle;
    std::optional<double> theta;  // set only for sure-success runs
    std::optional<double> phi;
    double j1_residual = 0;  // j1_real - j1
    double j2_residual = 0;

    std::int64_t total_queries() const { return j1 + j2 + 1; }
};

}  // namespace qpartial
