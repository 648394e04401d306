#pragma once

namespace nullpoint {

/// Values of the two Airy functions and their derivatives at a common point.
struct AiryQuad {
  double ai;   // Ai(x)
  double bi;   // Bi(x)
  double aip;  // Ai'(x)
  double bip;  // Bi'(x)
};

/// Evaluates Ai, Bi, Ai', Bi' at a real argument.
///
/// Accurate to about 1e-12 relative over [-15, 15] and 1e-9 beyond, which is
/// what the triangular-barrier determinant needs. Throws std::domain_error
/// for non-finite input or |x| > 80 (Bi would overflow a double).
AiryQuad airy_eval(double x);

}  // namespace nullpoint
