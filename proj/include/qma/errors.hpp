#pragma once

#include <stdexcept>
#include <string>

namespace qma {

// Base class for all engine errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// qfield
struct PoleError : Error {
    explicit PoleError(const std::string& w) : Error(w) {}
};
struct ZeroPointError : Error {
    explicit ZeroPointError(const std::string& w) : Error(w) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error(w) {}
};

// tensorspace
struct ShapeError : Error {
    explicit ShapeError(const std::string& w) : Error(w) {}
};
struct PositionError : Error {
    explicit PositionError(const std::string& w) : Error(w) {}
};
struct SlotError : Error {
    explicit SlotError(const std::string& w) : Error(w) {}
};

// rmatrix
struct QNumberZeroError : Error {
    explicit QNumberZeroError(const std::string& w) : Error(w) {}
};
struct NotEvenHeckeError : Error {
    explicit NotEvenHeckeError(const std::string& w) : Error(w) {}
};
struct NotClosedError : Error {
    explicit NotClosedError(const std::string& w) : Error(w) {}
};
struct NotInvertibleError : Error {
    explicit NotInvertibleError(const std::string& w) : Error(w) {}
};
struct UnknownFamilyError : Error {
    explicit UnknownFamilyError(const std::string& w) : Error(w) {}
};

// symfun
struct DNotInvertibleError : Error {
    explicit DNotInvertibleError(const std::string& w) : Error(w) {}
};

// verifier
struct InputError : Error {
    explicit InputError(const std::string& w) : Error(w) {}
};
struct ValidationError : Error {
    explicit ValidationError(const std::string& w) : Error(w) {}
};

} // namespace qma
