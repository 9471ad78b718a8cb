#pragma once

#include <stdexcept>
#include <string>

namespace qh {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct bad_parameters : error {
    using error::error;
};
struct context_mismatch : error {
    using error::error;
};
struct ring_mismatch : error {
    using error::error;
};
struct no_module_structure : error {
    using error::error;
};
struct no_factorization : error {
    using error::error;
};
struct not_a_cycle : error {
    using error::error;
};
struct class_not_found : error {
    using error::error;
};
struct invalid_morse_data : error {
    using error::error;
};
struct parse_error : error {
    using error::error;
};

} // namespace qh
