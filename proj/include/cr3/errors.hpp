#pragma once

#include <stdexcept>
#include <string>

namespace cr3 {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonDivisible : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct InternalInconsistency : Error { using Error::Error; };
struct UsageError : Error { using Error::Error; };

// ledger loading / evaluation
struct SchemaError : Error { using Error::Error; };
struct CycleError : Error { using Error::Error; };
struct DanglingChild : Error { using Error::Error; };
struct BadDeclaredValue : Error { using Error::Error; };
struct ScaleNotExact : Error { using Error::Error; };

}  // namespace cr3
