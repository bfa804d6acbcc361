#ifndef TURBOBEC_ERRORS_HPP
#define TURBOBEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace turbobec {

/// Malformed input data: spec files, interleaver files, masks, CLI payloads.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Argument outside an operation's documented domain.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Problem size exceeds what an exhaustive routine will attempt.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// The dual-termination system is singular for this interleaver.
class TerminationUnsupported : public std::runtime_error {
public:
    explicit TerminationUnsupported(const std::string& what) : std::runtime_error(what) {}
};

/// No 1<->2 legal-vertex transition exists; cannot happen after a genuine stall.
class SelectionUnavailable : public std::logic_error {
public:
    explicit SelectionUnavailable(const std::string& what) : std::logic_error(what) {}
};

/// Received word disagrees with every codeword; impossible on a true BEC.
class ChannelContractViolated : public std::runtime_error {
public:
    explicit ChannelContractViolated(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace turbobec

#endif
