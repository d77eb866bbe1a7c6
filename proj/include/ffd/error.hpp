#ifndef FFD_ERROR_HPP
#define FFD_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ffd {

// Base for all recoverable runtime failures raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input that cannot be interpreted at all (bad pcap header,
// bad CSV row, bad config file).
class FormatError : public Error {
public:
    using Error::Error;
};

// A persisted snapshot failed its checksum or version check.
class IntegrityError : public Error {
public:
    using Error::Error;
};

// Per-line failure while reading a passive-DNS log. Carries the 1-based
// line number so the caller can decide between skip and abort.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

}  // namespace ffd

#endif  // FFD_ERROR_HPP
