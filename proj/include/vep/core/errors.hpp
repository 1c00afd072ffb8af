#pragma once

#include <stdexcept>
#include <string>

namespace vep {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EncodingError : Error { using Error::Error; };
struct DecodeError : Error { using Error::Error; };
struct KeyError : Error { using Error::Error; };

struct IncompleteBlockError : Error { using Error::Error; };
struct InvalidMessageError : Error { using Error::Error; };
struct IntegrityViolation : Error { using Error::Error; };

struct Busy : Error { using Error::Error; };

struct InsufficientFunds : Error { using Error::Error; };
struct Replay : Error { using Error::Error; };
struct InvalidTx : Error { using Error::Error; };

struct DomainError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

} // namespace vep
