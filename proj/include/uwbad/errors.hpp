#ifndef UWBAD_ERRORS_HPP
#define UWBAD_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uwbad {

// Bad argument values: wrong sizes, out-of-range parameters, empty selections.
class argument_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Numeric domain violations (log of zero, division by zero counts).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A fit cannot be produced from the given data (e.g. zero variance).
class degenerate_fit_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed file content; carries the offending 1-based line number.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Wrong file kind, unknown version, unexpected header.
class format_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operation invoked on an object in the wrong state (e.g. unset threshold).
class state_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Signal detection failed (e.g. all-zero waveform).
class detection_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace uwbad

#endif
