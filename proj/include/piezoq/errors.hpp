// Copyright (c) the piezoq developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef PIEZOQ_ERRORS_HPP
#define PIEZOQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace piezoq {

// Bad user input: malformed files, violated invariants, out-of-domain queries.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Numeric failure at run time: non-convergence, singular systems, degenerate data.
class SolveError : public std::runtime_error {
public:
    explicit SolveError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace piezoq

#endif
