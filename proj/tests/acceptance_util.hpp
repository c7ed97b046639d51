// Shared reporting for the acceptance binaries: one pass/fail line per
// criterion, nonzero exit when anything fails.

#ifndef SPEX_TESTS_ACCEPTANCE_UTIL_HPP
#define SPEX_TESTS_ACCEPTANCE_UTIL_HPP

#include <string>

namespace acceptance {

class Runner {
public:
    void report(const std::string& criterion, bool pass, const std::string& detail);
    int failures() const { return failures_; }
    int exit_code() const;

private:
    int failures_ = 0;
    int total_ = 0;
};

} // namespace acceptance

#endif
