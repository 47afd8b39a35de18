// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LEAKY_ERRORS_HPP
#define LEAKY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace leaky
{

// Invalid physical input (non-positive density, speed, frequency, ...).
class DomainError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

// API misuse, e.g. coupling the same surface twice.
class UsageError : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

// Matrix structure assumed by a specialised solver path does not hold.
class StructureError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Operator determinant dimension exceeds the configured memory cap.
class SizeError : public std::length_error
{
public:
  using std::length_error::length_error;
};

// Failure reported by the dense eigensolver / factorisation backend.
class BackendError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Model configuration that a routine does not support.
class UnsupportedError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace leaky

#endif  // LEAKY_ERRORS_HPP
