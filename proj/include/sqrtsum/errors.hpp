#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace sqrtsum {

// All library errors carry a stable machine-readable code next to the
// human-readable message. The CLI maps BudgetExceeded to exit 3 and every
// other code to exit 2.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define SQRTSUM_DEFINE_ERROR(Name)                                        \
    class Name : public Error {                                           \
    public:                                                               \
        explicit Name(const std::string& msg) : Error(#Name, msg) {}      \
    }

SQRTSUM_DEFINE_ERROR(BadModulus);
SQRTSUM_DEFINE_ERROR(BadJ);
SQRTSUM_DEFINE_ERROR(EmptyInterval);
SQRTSUM_DEFINE_ERROR(NotAResidue);
SQRTSUM_DEFINE_ERROR(RangeError);
SQRTSUM_DEFINE_ERROR(InvalidParams);
SQRTSUM_DEFINE_ERROR(BudgetExceeded);
SQRTSUM_DEFINE_ERROR(DegenerateChoice);
SQRTSUM_DEFINE_ERROR(UnknownTag);

#undef SQRTSUM_DEFINE_ERROR

}  // namespace sqrtsum
