#pragma once

#include <stdexcept>
#include <string>

namespace eaifd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or unusable input data (CSV shape, empty relation, schema mismatch).
class DataError : public Error {
public:
    using Error::Error;
};

/// Unreadable, inconsistent or locked state directory.
class StateError : public Error {
public:
    using Error::Error;
};

/// A caller broke an operation's precondition.
class ContractError : public Error {
public:
    using Error::Error;
};

/// A transversal store was resumed against a hypergraph it was not computed for.
class StaleStoreError : public ContractError {
public:
    using ContractError::ContractError;
};

} // namespace eaifd
