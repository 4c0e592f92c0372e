#pragma once

#include <string>
#include <string_view>

#include "polarcover/poly.hpp"

namespace polarcover {

/// Canonical text: terms in descending grlex order joined by " + " / " - ",
/// e.g. `3/2*Z0^2*Y5 - Z1*Y5^2`; the zero polynomial prints as `0`.
/// Function-field coefficients print parenthesized: `(b0 + 2*b1)*Z0`.
std::string to_text(const Poly& p);

/// Parses the text form over the given field and frame. Whitespace between
/// tokens is optional; errors carry the byte offset of the offending token.
Poly parse_poly(std::string_view text, const Field& field, const FramePtr& frame);

/// Two-line document: `vars: Z0,Z1,...` header followed by the polynomial.
std::string to_document(const Poly& p);
Poly parse_document(std::string_view text, const Field& field);

/// Scalar in the coefficient syntax of the text format.
Scalar parse_scalar(std::string_view text, const Field& field);

}  // namespace polarcover
