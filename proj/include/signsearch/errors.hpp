#pragma once

#include <stdexcept>

namespace signsearch {

// One exception type per failure contract. All carry a human-readable message.

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyFrameError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptySequenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TooManyGapsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateSkeletonError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct JointSetMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyLexiconError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct VersionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParamError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct LabelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EigenConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace signsearch
