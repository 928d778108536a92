#pragma once

#include <stdexcept>
#include <string>

namespace esp {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define ESP_DEFINE_ERROR(NAME)                                 \
    struct NAME : Error {                                      \
        explicit NAME(const std::string& msg) : Error(msg) {}  \
    }

ESP_DEFINE_ERROR(NotPrime);
ESP_DEFINE_ERROR(ParseError);
ESP_DEFINE_ERROR(IndexOutOfRange);
ESP_DEFINE_ERROR(DimensionMismatch);
ESP_DEFINE_ERROR(TooLarge);
ESP_DEFINE_ERROR(NotMFamily);
ESP_DEFINE_ERROR(NotAField);
ESP_DEFINE_ERROR(SameVertex);
ESP_DEFINE_ERROR(DifferentSides);
ESP_DEFINE_ERROR(NoConvergence);
ESP_DEFINE_ERROR(NoWitness);
ESP_DEFINE_ERROR(PreconditionFailed);

#undef ESP_DEFINE_ERROR

}  // namespace esp
