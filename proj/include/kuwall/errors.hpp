#pragma once

#include <stdexcept>
#include <string>

namespace kuwall {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// A coordinate (rank, c1, 8*c2) of a character is not an integer.
class NonIntegralCoordinates : public Error {
public:
    using Error::Error;
};

/// The derived wall-search box is larger than the configured limit.
class BoundOverflow : public Error {
public:
    using Error::Error;
};

class NegativeDim : public Error {
public:
    using Error::Error;
};

class UnknownObject : public Error {
public:
    using Error::Error;
};

/// An operation needed the degree-3 part of a character and it was absent.
class MissingDegreeThree : public Error {
public:
    using Error::Error;
};

} // namespace kuwall
