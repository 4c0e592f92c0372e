#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace polarcover {

/// Machine-readable failure categories; reports carry the string form.
enum class ErrorCode {
    usage,
    parse,
    precondition,
    degree,
    invalid_subspace,
    singular_transform,
    degenerate_line,
    degenerate_geometry,
    identically_zero,
    exclusion,
    sampling_failure,
    resample,
    config,
    internal,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

class ParseError : public Error {
  public:
    ParseError(std::size_t position, const std::string& what)
        : Error(ErrorCode::parse, "at offset " + std::to_string(position) + ": " + what), position_(position) {}
    std::size_t position() const noexcept { return position_; }

  private:
    std::size_t position_;
};

}  // namespace polarcover
