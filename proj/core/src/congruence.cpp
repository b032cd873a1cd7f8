#include "etaq/congruence.hpp"

#include <algorithm>
#include <string>

#include "etaq/eisenstein.hpp"
#include "etaq/error.hpp"
#include "etaq/expand.hpp"
#include "etaq/series.hpp"
#include "parallel.hpp"

namespace etaq {
namespace {

// Ramanujan's congruences for p(n); by the known classification these are the
// only ones of the form p(l n + a) = 0 (mod l).
constexpr std::pair<std::int64_t, std::int64_t> kPartitionCongruences[] = {{5, 4}, {7, 5}, {11, 6}};

void require_residue(Prime ell, std::int64_t a) {
  if (a < 0 || a >= ell.signed_value()) {
    throw InvalidArgument("residue a = " + std::to_string(a) + " outside [0, " + std::to_string(ell.value()) + ")");
  }
}

// Fields shared by every certificate for (spec, l, a).
Certificate base_certificate(const ProductSpec& spec, Prime ell, std::int64_t a) {
  Certificate c;
  c.ell = ell.signed_value();
  c.a = a;
  if (ell.value() > 3) {
    c.delta_ell = delta_ell(ell);
    if (spec.is_reciprocal()) c.b = shifted_residue(spec, ell, a);
  }
  return c;
}

std::uint64_t coefficient_mod(const ProductSpec& spec, Exponent n, Prime ell) {
  const auto c = expand_product(spec, n + 1, ell);
  return c.residues()[static_cast<std::size_t>(n)];
}

// l | N means the fixpoint route does not apply; so does l <= max(5, j + 3).
bool sturm_route_applies(const ProductSpec& spec, Prime ell) {
  const auto j = spec.parts_count();
  if (!j || *j % 2 != 0) return false;
  const std::int64_t l = ell.signed_value();
  return spec.level() % l != 0 && l > std::max<std::int64_t>(5, *j + 3);
}

// N^2 prod_{p | N} (1 - 1/p^2), the index of Gamma_1(N) in SL_2(Z) up to +-1.
Integer gamma1_index(std::int64_t n) {
  Integer mu = Integer(static_cast<long>(n)) * n;
  for (auto p : prime_divisors(n)) {
    mu /= p * p;
    mu *= p * p - 1;
  }
  return mu;
}

Certificate certify_by_fixpoint(const ProductSpec& spec, Prime ell, std::int64_t a, const CertifyOptions& options) {
  const std::int64_t l = ell.signed_value();
  const std::int64_t forced = forced_residue(spec, ell);
  if (a != forced) {
    auto cert = refute(spec, ell, a, options.horizon);
    cert.note = "a differs from the forced residue " + std::to_string(forced);
    return cert;
  }
  auto cert = base_certificate(spec, ell, a);
  const std::int64_t weight = 12 * *spec.parts_count() * cert.delta_ell;
  // theta^{l-1} F - F is congruent to a form of weight k_F + l^2 - 1 and level N.
  Integer numer = Integer(static_cast<long>(weight + l * l - 1)) * gamma1_index(spec.level());
  Integer bound;
  mpz_cdiv_q_ui(bound.get_mpz_t(), numer.get_mpz_t(), 12);
  bound += 1;
  if (bound > options.max_sturm_precision) {
    throw PrecisionShortfall("theta-fixpoint test needs " + bound.get_str() + " coefficients, limit is " +
                             std::to_string(options.max_sturm_precision));
  }
  const Exponent sturm = bound.get_si();
  cert.sturm_bound = sturm;

  const auto F = build_F(spec, ell, sturm).series;
  const auto diff = sub(theta_power(F, l - 1), F);
  const Exponent m = diff.valuation();
  if (m == diff.precision()) {
    cert.route = CertificateRoute::SturmThetaFixpoint;
    cert.note = "theta^(l-1) F = F (mod l) through the Sturm bound";
    return cert;
  }
  // sum d(l n + delta sum a_i + a) q^n equals a unit times sum c(l n + a) q^n,
  // so the first nonzero terms sit at the same n.
  const Exponent start = cert.delta_ell * *spec.parts_sum() + a;
  const std::int64_t n = (m - start) / l;
  const std::uint64_t residue = coefficient_mod(spec, l * n + a, ell);
  if (residue == 0 || (m - start) % l != 0 || n < 0) {
    throw Error("internal: fixpoint mismatch at q^" + std::to_string(m) + " does not map to a coefficient witness");
  }
  cert.route = CertificateRoute::Refuted;
  cert.fixpoint_mismatch = m;
  cert.witness = Witness{n, residue};
  cert.note = "theta^(l-1) F differs from F (mod l)";
  return cert;
}

}  // namespace

std::string_view to_string(CandidateStatus s) {
  switch (s) {
    case CandidateStatus::empirical: return "empirical";
    case CandidateStatus::certified: return "certified";
    case CandidateStatus::refuted: return "refuted";
  }
  return "empirical";
}

std::string_view to_string(CertificateRoute r) {
  switch (r) {
    case CertificateRoute::DivisorReduction: return "DivisorReduction";
    case CertificateRoute::SturmThetaFixpoint: return "SturmThetaFixpoint";
    case CertificateRoute::EmpiricalOnly: return "EmpiricalOnly";
    case CertificateRoute::Refuted: return "Refuted";
  }
  return "EmpiricalOnly";
}

CandidateStatus Certificate::status() const {
  if (route == CertificateRoute::Refuted) return CandidateStatus::refuted;
  if (certified()) return CandidateStatus::certified;
  return CandidateStatus::empirical;
}

PrimeBound prime_bound(const ProductSpec& spec, std::int64_t cap_for_odd) {
  PrimeBound out;
  out.primes = prime_divisors(spec.level());
  std::int64_t cap = cap_for_odd;
  const auto j = spec.parts_count();
  if (j && *j % 2 == 0) {
    cap = std::max<std::int64_t>(5, *j + 4);
  } else {
    out.exhaustive = false;
  }
  for (auto p : primes_up_to(cap)) out.primes.push_back(p);
  std::sort(out.primes.begin(), out.primes.end());
  out.primes.erase(std::unique(out.primes.begin(), out.primes.end()), out.primes.end());
  return out;
}

std::vector<CongruenceCandidate> scan(const ProductSpec& spec, const ScanOptions& options) {
  const auto primes = options.primes ? *options.primes : prime_bound(spec, options.cap_for_odd).primes;
  for (auto p : primes) {
    Prime checked(p);
    if (options.horizon < kMinimumTermsPerProgression * p) {
      throw InvalidArgument("horizon " + std::to_string(options.horizon) + " is below " +
                            std::to_string(kMinimumTermsPerProgression) + " terms per progression for l = " +
                            std::to_string(checked.value()));
    }
  }
  auto per_prime = detail::parallel_map(primes, [&](std::int64_t p) {
    const Prime ell(p);
    const auto c = expand_product(spec, options.horizon, ell);
    const auto& r = c.residues();
    std::vector<CongruenceCandidate> found;
    for (std::int64_t a = 0; a < p; ++a) {
      bool vanishes = true;
      for (Exponent m = a; m < options.horizon; m += p) {
        if (r[static_cast<std::size_t>(m)] != 0) {
          vanishes = false;
          break;
        }
      }
      if (vanishes) found.push_back({p, a, options.horizon, CandidateStatus::empirical});
    }
    return found;
  });
  std::vector<CongruenceCandidate> out;
  for (auto& v : per_prime) out.insert(out.end(), v.begin(), v.end());
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return std::pair(x.ell, x.a) < std::pair(y.ell, y.a);
  });
  return out;
}

std::int64_t forced_residue(const ProductSpec& spec, Prime ell) {
  const auto j = spec.parts_count();
  if (!j) throw InvalidArgument("forced residue needs a spec with only negative exponents");
  const std::int64_t l = ell.signed_value();
  if (l <= std::max<std::int64_t>(5, *j + 3)) {
    throw InvalidArgument("no forced residue: l = " + std::to_string(l) + " <= max(5, j + 3) = " +
                          std::to_string(std::max<std::int64_t>(5, *j + 3)));
  }
  if (spec.level() % l == 0) {
    throw InvalidArgument("no forced residue: l = " + std::to_string(l) + " divides N = " +
                          std::to_string(spec.level()));
  }
  return static_cast<std::int64_t>(mul_mod(mod(*spec.parts_sum(), ell), inv_mod(24, ell), ell));
}

std::int64_t shifted_residue(const ProductSpec& spec, Prime ell, std::int64_t a) {
  const auto s = spec.parts_sum();
  if (!s) throw InvalidArgument("shifted residue needs a spec with only negative exponents");
  if (ell.value() <= 3) throw InvalidArgument("shifted residue needs l > 3");
  const std::uint64_t shift = mul_mod(mod(*s, ell), inv_mod(24, ell), ell);
  return static_cast<std::int64_t>((mod(a, ell) + ell.value() - shift) % ell.value());
}

Certificate refute(const ProductSpec& spec, Prime ell, std::int64_t a, Exponent horizon) {
  require_residue(ell, a);
  if (horizon < 1) throw InvalidArgument("horizon must be positive");
  auto cert = base_certificate(spec, ell, a);
  const std::int64_t l = ell.signed_value();
  // Witnesses are almost always tiny; grow the expansion geometrically.
  Exponent h = std::min<Exponent>(horizon, std::max<Exponent>(1024, 8 * l));
  while (true) {
    const auto c = expand_product(spec, h, ell);
    const auto& r = c.residues();
    for (Exponent m = a; m < h; m += l) {
      if (r[static_cast<std::size_t>(m)] != 0) {
        cert.route = CertificateRoute::Refuted;
        cert.witness = Witness{(m - a) / l, r[static_cast<std::size_t>(m)]};
        cert.horizon = h;
        return cert;
      }
    }
    if (h >= horizon) break;
    h = std::min(horizon, 2 * h);
  }
  cert.route = CertificateRoute::EmpiricalOnly;
  cert.horizon = horizon;
  cert.note = "no witness below the horizon";
  return cert;
}

ProductSpec divisor_reduce(const ProductSpec& spec, Prime ell) {
  const std::int64_t l = ell.signed_value();
  if (!spec.has_factor_divisible_by(l)) {
    throw InvalidArgument("no factor of '" + spec.to_string() + "' has d divisible by " + std::to_string(l));
  }
  std::vector<EtaFactor> kept;
  for (const auto& f : spec.factors()) {
    if (f.d % l != 0) kept.push_back(f);
  }
  return ProductSpec(std::move(kept));
}

Certificate certify(const ProductSpec& spec, Prime ell, std::int64_t a, const CertifyOptions& options) {
  require_residue(ell, a);
  const std::int64_t l = ell.signed_value();

  if (spec.has_factor_divisible_by(l)) {
    const auto reduced = divisor_reduce(spec, ell);
    Certificate cert;
    if (reduced.empty()) {
      // The whole product lives on exponents divisible by l with constant term 1.
      cert = base_certificate(spec, ell, a);
      if (a != 0) {
        cert.route = CertificateRoute::DivisorReduction;
        cert.note = "series is supported on multiples of l";
      } else {
        cert.route = CertificateRoute::Refuted;
        cert.witness = Witness{0, 1 % ell.value()};
      }
    } else if (reduced == ProductSpec({{1, -1}})) {
      const bool known = std::any_of(std::begin(kPartitionCongruences), std::end(kPartitionCongruences),
                                     [&](const auto& c) { return c.first == l && c.second == a; });
      if (known) {
        cert = base_certificate(spec, ell, a);
        cert.route = CertificateRoute::DivisorReduction;
        cert.note = "reduces to p(l n + a) = 0 (mod l), one of Ramanujan's congruences";
      } else {
        cert = refute(spec, ell, a, options.horizon);
        cert.note = "reduces to p(n), which has no congruence at (l, a)";
      }
    } else {
      cert = certify(reduced, ell, a, options);
      const auto own = base_certificate(spec, ell, a);
      cert.b = own.b;
      if (cert.witness) {
        // The two progressions differ by a unit factor, so the witness index carries over.
        cert.witness->residue = coefficient_mod(spec, l * cert.witness->n + a, ell);
      }
      cert.note = cert.note.empty() ? "decided on the reduced spec" : cert.note + " (on the reduced spec)";
    }
    cert.reduced_spec = reduced;
    return cert;
  }

  if (sturm_route_applies(spec, ell)) return certify_by_fixpoint(spec, ell, a, options);

  auto cert = refute(spec, ell, a, options.horizon);
  if (cert.route == CertificateRoute::EmpiricalOnly) {
    if (l <= 3) {
      cert.note = "l <= 3 is outside the certified routes; checked to the horizon only";
    } else if (!spec.parts_count() || *spec.parts_count() % 2 != 0) {
      cert.note = "odd or undefined j: no bound or fixpoint certificate; checked to the horizon only";
    } else {
      cert.note = "l <= max(5, j + 3): checked to the horizon only";
    }
  }
  return cert;
}

std::vector<ClassifyRow> classify_cN(std::int64_t from, std::int64_t to, Exponent horizon) {
  if (from < 2) throw InvalidArgument("classification needs N >= 2");
  std::vector<std::int64_t> levels;
  for (std::int64_t n = from; n <= to; ++n) levels.push_back(n);
  return detail::parallel_map(levels, [&](std::int64_t n) {
    ClassifyRow row;
    row.N = n;
    row.spec = ProductSpec::reciprocal({1, n});
    ScanOptions scan_options;
    scan_options.horizon = horizon;
    CertifyOptions certify_options;
    certify_options.horizon = horizon;
    for (auto cand : scan(row.spec, scan_options)) {
      auto cert = certify(row.spec, Prime(cand.ell), cand.a, certify_options);
      if (cert.route == CertificateRoute::Refuted) continue;
      cand.status = cert.status();
      row.candidates.push_back(cand);
      row.certificates.push_back(std::move(cert));
    }
    return row;
  });
}

bool AuditReport::all_refuted() const {
  return std::all_of(primes.begin(), primes.end(), [](const AuditPrime& p) { return p.anomalies.empty(); });
}

AuditReport theorem12_audit(const ProductSpec& spec, std::int64_t lo, std::int64_t hi, Exponent horizon) {
  const auto j = spec.parts_count();
  if (!j || *j % 2 != 0) throw InvalidArgument("the bound audit needs a reciprocal spec with even j");
  AuditReport report;
  report.spec = spec;
  std::vector<std::int64_t> audited;
  for (auto p : primes_up_to(hi)) {
    if (p < lo) continue;
    if (p <= std::max<std::int64_t>(5, *j + 4) || spec.level() % p == 0) {
      report.skipped.push_back(p);
    } else {
      audited.push_back(p);
    }
  }
  report.primes = detail::parallel_map(audited, [&](std::int64_t p) {
    const Prime ell(p);
    AuditPrime out;
    out.ell = p;
    out.forced_a = forced_residue(spec, ell);
    for (std::int64_t a = 0; a < p; ++a) {
      auto cert = refute(spec, ell, a, horizon);
      if (cert.route != CertificateRoute::Refuted) {
        out.anomalies.push_back("no witness for a = " + std::to_string(a) + " below " + std::to_string(horizon));
      } else if (a != out.forced_a) {
        out.max_unforced_witness = std::max(out.max_unforced_witness, cert.witness->n);
      }
      out.residues.push_back({a, std::move(cert)});
    }
    CertifyOptions options;
    options.horizon = horizon;
    out.forced_certificate = certify(spec, ell, out.forced_a, options);
    const auto& direct = out.residues[static_cast<std::size_t>(out.forced_a)].certificate;
    if (out.forced_certificate.route != CertificateRoute::Refuted) {
      out.anomalies.push_back("theta-fixpoint test did not refute the forced residue");
    } else if (direct.witness && direct.witness->n != out.forced_certificate.witness->n) {
      out.anomalies.push_back("fixpoint witness n = " + std::to_string(out.forced_certificate.witness->n) +
                              " disagrees with direct search n = " + std::to_string(direct.witness->n));
    }
    return out;
  });
  return report;
}

}  // namespace etaq
