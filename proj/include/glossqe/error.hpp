#pragma once

#include <stdexcept>
#include <string>

namespace glossqe {

/// Bad or unreadable input data: corpus, topics, qrels, runs, lexicons, index files.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public DataError {
public:
    using DataError::DataError;
};

/// A caller broke a documented precondition.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace glossqe
