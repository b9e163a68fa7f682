#pragma once

#include <stdexcept>
#include <string>

namespace symplan {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An input that must be a finite real was NaN or infinite.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

// Two circle points were (nearly) antipodal where a shortest arc is required.
class AntipodalError : public Error {
 public:
  using Error::Error;
};

// Two circle points coincide where a direction between them is required.
class EqualPointsError : public Error {
 public:
  using Error::Error;
};

// Path concatenation was attempted across mismatched circle endpoints.
class EndpointMismatchError : public Error {
 public:
  using Error::Error;
};

// A query point lies outside the region an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A quantity that must be an integer came out too far from one.
class IntegralityError : public Error {
 public:
  using Error::Error;
};

// A closed-form region lookup was asked exactly on a region boundary.
class OnBoundaryError : public Error {
 public:
  using Error::Error;
};

// Two 4-adjacent in-domain grid vertices carry different values; the grid
// resolution does not separate the regions.
class AdjacentValueJumpError : public Error {
 public:
  using Error::Error;
};

// A grid order or color count outside the supported range.
class BadGridError : public Error {
 public:
  using Error::Error;
};

// Malformed input text (cover files and similar).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace symplan
