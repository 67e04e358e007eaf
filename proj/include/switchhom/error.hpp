#pragma once

#include <stdexcept>
#include <string>

namespace switchhom {

// Base of every exception thrown by the library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An argument is outside the domain of the operation (bad type id, unknown
// vertex, alphabet mismatch, ...).
struct domain_error : error {
    using error::error;
};

// Malformed graph, permutation or group input.
struct validation_error : domain_error {
    using domain_error::domain_error;
};

// A structural precondition does not hold, e.g. the group is not
// switch-commutative or a required homomorphism is missing.
struct contract_error : error {
    using error::error;
};

// A configured size cap was exceeded.
struct resource_error : error {
    using error::error;
};

// A search ran out of its time budget; the answer is unknown.
struct search_timeout : resource_error {
    search_timeout() : resource_error("search exceeded its time budget; outcome unknown") {}
};

}
