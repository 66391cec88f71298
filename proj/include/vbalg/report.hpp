#ifndef VBALG_REPORT_HPP
#define VBALG_REPORT_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace vbalg {

// A list of violated conditions; empty means the object passed.
struct Report {
    std::vector<std::string> issues;

    bool ok() const { return issues.empty(); }
    void add(std::string s) { issues.push_back(std::move(s)); }
    void merge(const Report& o, const std::string& prefix = {}) {
        for (const auto& s : o.issues) issues.push_back(prefix + s);
    }
};

// Thrown when an operation's documented precondition does not hold.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
    PreconditionError(const std::string& what, Report r)
        : std::invalid_argument(what), report(std::move(r)) {}
    Report report;
};

}  // namespace vbalg

#endif
