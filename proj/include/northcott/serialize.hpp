#ifndef NORTHCOTT_SERIALIZE_HPP
#define NORTHCOTT_SERIALIZE_HPP

#include <string>

#include <json.hpp>

#include "northcott/abelian.hpp"
#include "northcott/heights.hpp"
#include "northcott/towers.hpp"

namespace northcott {

using nlohmann::json;

/// Integers travel as decimal strings so nothing is lost to doubles.
json to_json(const mpz_class& v);
mpz_class mpz_from_json(const json& j);

/// {lo, hi, mid}: decimal strings rounded outward, mid a double.
json interval_json(const HeightInterval& h, unsigned digits = 15);

/// {modulus, generators: [[exponent, ...], ...]}.
json field_to_json(const AbelianField& f);
AbelianField field_from_json(const json& j);

/// {schema, groups, primes, steps: [{step, witness, N, exponent,
/// quantity_lo, quantity_hi, quantity_mid, p_prev, checks}], ok}.
json tower_certificate(const TowerSpec& spec, const TowerReport& report);

struct CertificateCheck {
    TowerReport report;
    bool reproduced = false;  // rebuilt certificate equals the input
    std::string mismatch;

    bool ok() const { return reproduced && report.ok(); }
};

/// Rebuilds the tower from the recorded primes (no search), re-runs every
/// check and compares the regenerated certificate with the input.
/// Malformed certificates raise DomainError.
CertificateCheck verify_certificate(const json& cert);

}  // namespace northcott

#endif  // NORTHCOTT_SERIALIZE_HPP
