#pragma once

#include <stdexcept>
#include <string>

namespace vermasig {

/// A weight (or weight tuple) lies on one of the excluded hyperplanes.
class GenericityError : public std::domain_error {
public:
  explicit GenericityError(const std::string &what) : std::domain_error(what) {}
};

/// Arguments outside an operation's documented domain.
class DomainError : public std::domain_error {
public:
  explicit DomainError(const std::string &what) : std::domain_error(what) {}
};

/// A quantum integer in the working range vanishes at the chosen q.
class RootOfUnityError : public std::domain_error {
public:
  explicit RootOfUnityError(const std::string &what) : std::domain_error(what) {}
};

/// A point lies on the hyperplane arrangement t_i = z_k or t_i = t_j.
class ArrangementError : public std::domain_error {
public:
  explicit ArrangementError(const std::string &what) : std::domain_error(what) {}
};

/// Malformed textual input (rationals, lists, types).
class ParseError : public std::invalid_argument {
public:
  explicit ParseError(const std::string &what) : std::invalid_argument(what) {}
};

}  // namespace vermasig
