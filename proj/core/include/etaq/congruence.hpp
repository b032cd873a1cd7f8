#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "etaq/arith.hpp"
#include "etaq/product_spec.hpp"

namespace etaq {

// Default search sizes; callers may override all of them.
inline constexpr Exponent kDefaultScanHorizon = 10'000;
inline constexpr Exponent kDefaultRefuteHorizon = 100'000;
inline constexpr Exponent kDefaultMaxSturmPrecision = 2'000'000;
inline constexpr Exponent kMinimumTermsPerProgression = 50;

enum class CandidateStatus { empirical, certified, refuted };

std::string_view to_string(CandidateStatus s);

// c(l n + a) = 0 (mod l), observed for every l n + a < horizon.
struct CongruenceCandidate {
  std::int64_t ell = 0;
  std::int64_t a = 0;
  Exponent horizon = 0;
  CandidateStatus status = CandidateStatus::empirical;

  friend bool operator==(const CongruenceCandidate&, const CongruenceCandidate&) = default;
};

enum class CertificateRoute { DivisorReduction, SturmThetaFixpoint, EmpiricalOnly, Refuted };

std::string_view to_string(CertificateRoute r);

struct Witness {
  std::int64_t n = 0;          // c(l n + a) != 0 (mod l)
  std::uint64_t residue = 0;   // c(l n + a) mod l
};

struct Certificate {
  CertificateRoute route = CertificateRoute::EmpiricalOnly;
  std::int64_t ell = 0;
  std::int64_t a = 0;
  std::optional<Witness> witness;
  // Coefficients compared in the theta-fixpoint test.
  std::optional<Exponent> sturm_bound;
  // 24a = 24b + sum a_i (mod l); present when l > 3 and the spec is reciprocal.
  std::optional<std::int64_t> b;
  // (l^2 - 1) / 24 when l > 3, else 0.
  std::int64_t delta_ell = 0;
  // Spec left after removing factors with l | d (DivisorReduction only).
  std::optional<ProductSpec> reduced_spec;
  // First exponent m with theta^{l-1} F != F (mod l), when that test refuted.
  std::optional<Exponent> fixpoint_mismatch;
  // Search extent behind an EmpiricalOnly or Refuted outcome.
  Exponent horizon = 0;
  std::string note;

  bool certified() const {
    return route == CertificateRoute::DivisorReduction ||
           route == CertificateRoute::SturmThetaFixpoint;
  }
  CandidateStatus status() const;
};

struct PrimeBound {
  std::vector<std::int64_t> primes;
  // False when the class bound is not known to hold (odd j or a
  // non-reciprocal spec); the primes are then the divisor primes plus every
  // prime up to the caller's cap.
  bool exhaustive = true;
};

// {p | N} together with {p <= max(5, j + 4)} for even j.
PrimeBound prime_bound(const ProductSpec& spec, std::int64_t cap_for_odd = 0);

struct ScanOptions {
  Exponent horizon = kDefaultScanHorizon;
  // Explicit primes; replaces prime_bound when set.
  std::optional<std::vector<std::int64_t>> primes;
  // Prime cap used for specs outside the even-j class.
  std::int64_t cap_for_odd = 13;
};

// Every (l, a) whose computed progression terms all vanish mod l.
std::vector<CongruenceCandidate> scan(const ProductSpec& spec, const ScanOptions& options = {});

// The unique a in [0, l) with 24a = sum a_i (mod l). Requires the reciprocal
// class, l > max(5, j + 3) and l not dividing N.
std::int64_t forced_residue(const ProductSpec& spec, Prime ell);

// b with 24a = 24b + sum a_i (mod l), for l > 3.
std::int64_t shifted_residue(const ProductSpec& spec, Prime ell, std::int64_t a);

// Least n with c(l n + a) != 0 (mod l) and l n + a < horizon; EmpiricalOnly
// when none exists below the horizon.
Certificate refute(const ProductSpec& spec, Prime ell, std::int64_t a,
                   Exponent horizon = kDefaultRefuteHorizon);

// The spec with every factor whose d is divisible by l removed.
ProductSpec divisor_reduce(const ProductSpec& spec, Prime ell);

struct CertifyOptions {
  Exponent horizon = kDefaultRefuteHorizon;
  Exponent max_sturm_precision = kDefaultMaxSturmPrecision;
};

// Rigorous status of c(l n + a) = 0 (mod l): divisor reduction, the
// theta^{l-1} fixpoint test on F_l up to a Sturm bound, or a bounded search.
// Throws PrecisionShortfall when the Sturm comparison would exceed
// max_sturm_precision.
Certificate certify(const ProductSpec& spec, Prime ell, std::int64_t a,
                    const CertifyOptions& options = {});

struct ClassifyRow {
  std::int64_t N = 0;
  ProductSpec spec;
  std::vector<CongruenceCandidate> candidates;  // empirical or certified only
  std::vector<Certificate> certificates;         // parallel to candidates
};

// Scan and certify c_N for N in [from, to], where
// sum c_N(n) q^n = prod 1 / ((1 - q^n)(1 - q^{N n})).
std::vector<ClassifyRow> classify_cN(std::int64_t from, std::int64_t to,
                                     Exponent horizon = 5'000);

struct AuditResidue {
  std::int64_t a = 0;
  Certificate certificate;
};

struct AuditPrime {
  std::int64_t ell = 0;
  std::int64_t forced_a = 0;
  std::vector<AuditResidue> residues;  // a = 0 .. l-1
  // Largest witness n over a != forced_a.
  std::int64_t max_unforced_witness = 0;
  // Fixpoint test at the forced residue.
  Certificate forced_certificate;
  std::vector<std::string> anomalies;
};

struct AuditReport {
  ProductSpec spec;
  std::vector<AuditPrime> primes;
  std::vector<std::int64_t> skipped;  // primes in range not above the bound or dividing N
  bool all_refuted() const;
};

// For every prime l in [lo, hi] with l > max(5, j + 4) and l not dividing N,
// refutes all residues a and records survivors as anomalies. Requires even j.
AuditReport theorem12_audit(const ProductSpec& spec, std::int64_t lo, std::int64_t hi,
                            Exponent horizon = kDefaultRefuteHorizon);

}  // namespace etaq
