#pragma once

#include <stdexcept>
#include <string>

namespace sbd {

// Error taxonomy. Each class corresponds to a distinct failure mode that
// callers may want to catch separately; everything derives from SbdError.
class SbdError : public std::runtime_error {
public:
    explicit SbdError(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public SbdError {
public:
    using SbdError::SbdError;
};

// Assumption 1 violated: the kernel integral did not converge.
class DivergentIntegralError : public SbdError {
public:
    using SbdError::SbdError;
};

// Expected point count above the configured cap.
class OverflowError : public SbdError {
public:
    using SbdError::SbdError;
};

// Two duel times collided exactly in floating point.
class NondistinctDuelTimesError : public SbdError {
public:
    using SbdError::SbdError;
};

class InvestigationBudgetError : public SbdError {
public:
    using SbdError::SbdError;
};

// Incremental and recomputed jump-engine rates diverged.
class RateDriftError : public SbdError {
public:
    using SbdError::SbdError;
};

class GridMismatchError : public SbdError {
public:
    using SbdError::SbdError;
};

class BracketFailureError : public SbdError {
public:
    using SbdError::SbdError;
};

class BurnInTimeoutError : public SbdError {
public:
    using SbdError::SbdError;
};

} // namespace sbd
