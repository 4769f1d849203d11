#pragma once

#include <stdexcept>
#include <string>

namespace vilenkin {

// A digit vector that does not belong to the group it is used with.
class InvalidElement : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An index, level or coordinate beyond the truncation level of the context.
class ResolutionExceeded : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// A numeric parameter outside its admissible range (alpha, p, n = 0, ...).
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace vilenkin
