#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "fmlim/rational.hpp"
#include "fmlim/structure.hpp"
#include "fmlim/types.hpp"

namespace fmlim {

struct FmtpSides {
  Rational lhs;  // |A ∩ f^-1(B)| / n
  Rational rhs;  // Σ_{y∈B} |f^-1(y) ∩ A| / n
  bool holds() const { return lhs == rhs; }
};

/// Both sides of the mass transport identity for A, B ⊆ domain.
FmtpSides check_fmtp(const FiniteMapping& F, const std::vector<Element>& A, const std::vector<Element>& B);

/// Companion function s(τ, t) for a measure over rank-R types.
struct CompanionCertificate {
  struct Value {
    LocalType tau;  // rank R
    LocalType t;    // rank r
    Rational s;
  };
  std::size_t R = 0;
  std::size_t r = 0;
  std::vector<Value> values;

  /// s(τ, t), 0 when not listed.
  Rational value(const LocalType& tau, const LocalType& t) const;
};

/// A balance equation (t1, t2) that cannot hold.
struct Violation {
  LocalType t1;
  LocalType t2;
  Rational lhs;
  /// Smallest right-hand side the s-values allow.
  Rational rhs;
  std::string reason;
};

using CertificateResult = std::variant<CompanionCertificate, Violation>;

CertificateResult restricted_fmtp_certificate(const TypeMeasure& mu, std::size_t r);

/// Re-checks a certificate against μ from scratch (nullopt when it holds).
std::optional<std::string> verify_certificate(const TypeMeasure& mu, const CompanionCertificate& certificate);

/// Measure with floating-point masses, as it would come from a limit object.
struct RealTypeMeasure {
  std::size_t rank = 0;
  std::vector<std::pair<LocalType, double>> entries;
};

inline constexpr int kApproximationRetries = 24;

/// Rational measure on the same support with positive masses, TV < ε, and
/// satisfying the restricted FMTP. Returns μ itself when it already does.
TypeMeasure approximate_measure(const TypeMeasure& mu, const Rational& epsilon, std::size_t r);
TypeMeasure approximate_measure(const RealTypeMeasure& mu, const Rational& epsilon, std::size_t r);

/// TV between a real measure and a rational one (exact in the double values).
Rational total_variation(const RealTypeMeasure& a, const TypeMeasure& b);

struct RealizabilityReport {
  bool clean = true;
  bool acyclic = true;
  bool certified = true;
  std::vector<std::string> problems;
  bool ok() const { return clean && acyclic && certified; }
};

RealizabilityReport check_realizability_preconditions(const TypeMeasure& mu, std::size_t cutLength, std::size_t r);

}  // namespace fmlim
