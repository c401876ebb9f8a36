#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace echinf {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// d_out * d_in != 0; witness is a column of d_in (a basis element of the higher degree).
class CompositionNonzero : public Error {
public:
    CompositionNonzero(std::size_t witness, const std::string& what) : Error(what), witness(witness) {}
    std::size_t witness;
};

class NotChainMap : public Error {
public:
    NotChainMap(std::size_t witness, const std::string& what) : Error(what), witness(witness) {}
    std::size_t witness;
};

class GradingMismatch : public Error {
public:
    using Error::Error;
};

class NotSubcomplex : public Error {
public:
    NotSubcomplex(std::size_t witness, const std::string& what) : Error(what), witness(witness) {}
    std::size_t witness;
};

class NonUnitPivot : public Error {
public:
    NonUnitPivot(std::size_t up, std::size_t down, const std::string& what) : Error(what), up(up), down(down) {}
    std::size_t up;
    std::size_t down;
};

class CyclicMatching : public Error {
public:
    using Error::Error;
};

// Raised when a computed long exact sequence is not exact; always an engine bug.
class ExactnessFailure : public Error {
public:
    ExactnessFailure(std::size_t node, const std::string& what) : Error(what), node(node) {}
    std::size_t node;
};

class NotStabilized : public Error {
public:
    using Error::Error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

}  // namespace echinf
