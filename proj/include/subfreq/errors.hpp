#ifndef SUBFREQ_ERRORS_HPP
#define SUBFREQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace subfreq {

// Malformed input file; line is 1-based, 0 when not tied to a line.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what),
          line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// A requested object exceeds a configured size bound (pattern ids past
// 64 bits, nets or codes past their enumeration caps).
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace subfreq

#endif
