#include "northcott/serialize.hpp"

#include "northcott/errors.hpp"
#include "northcott/real.hpp"

namespace northcott {

json to_json(const mpz_class& v) { return v.get_str(); }

mpz_class mpz_from_json(const json& j) {
    if (j.is_number_integer()) return mpz_class(j.get<long>());
    if (!j.is_string()) throw DomainError("expected an integer string");
    mpz_class v;
    if (v.set_str(j.get<std::string>(), 10) != 0) throw DomainError("bad integer " + j.get<std::string>());
    return v;
}

json interval_json(const HeightInterval& h, unsigned digits) {
    return {{"lo", to_decimal(h.lo, digits, Rounding::Down)},
            {"hi", to_decimal(h.hi, digits, Rounding::Up)},
            {"mid", h.midpoint()}};
}

json field_to_json(const AbelianField& f) {
    json gens = json::array();
    for (const auto& g : f.generators()) {
        json v = json::array();
        for (const auto& a : g) v.push_back(to_json(a));
        gens.push_back(std::move(v));
    }
    return {{"modulus", to_json(f.modulus())}, {"generators", std::move(gens)}};
}

AbelianField field_from_json(const json& j) {
    if (!j.is_object() || !j.contains("modulus") || !j.contains("generators")) throw DomainError("field needs modulus and generators");
    const mpz_class m = mpz_from_json(j.at("modulus"));
    if (m < 1) throw DomainError("modulus must be positive");
    std::vector<Character> gens;
    for (const auto& g : j.at("generators")) {
        Character chi;
        for (const auto& a : g) chi.push_back(mpz_from_json(a));
        gens.push_back(std::move(chi));
    }
    return AbelianField::from_generators(m == 1 ? PrimePowers{} : factorize(m), gens);
}

json tower_certificate(const TowerSpec& spec, const TowerReport& report) {
    json groups = json::array();
    for (const auto& g : spec.groups) groups.push_back(g.to_string());
    json primes = json::array();
    for (const auto& step : spec.primes) {
        json s = json::array();
        for (const auto& p : step) s.push_back(to_json(p));
        primes.push_back(std::move(s));
    }
    json steps = json::array();
    for (const auto& r : report.steps) {
        steps.push_back({{"step", r.step},
                         {"witness", field_to_json(r.witness)},
                         {"witness_degree", r.witness.degree()},
                         {"N", to_json(r.norm)},
                         {"exponent", to_json(r.exponent)},
                         {"quantity_lo", to_decimal(r.quantity.lo, 15, Rounding::Down)},
                         {"quantity_hi", to_decimal(r.quantity.hi, 15, Rounding::Up)},
                         {"quantity_mid", r.quantity.midpoint()},
                         {"p_prev", to_json(r.p_prev)},
                         {"checks",
                          {{"disjoint", r.disjoint},
                           {"exceeds_prev", r.exceeds_prev},
                           {"increasing", r.increasing},
                           {"escalation", r.escalation}}}});
    }
    return {{"schema", 1}, {"groups", groups}, {"primes", primes}, {"steps", steps}, {"ok", report.ok()}};
}

CertificateCheck verify_certificate(const json& cert) {
    if (!cert.is_object()) throw DomainError("certificate must be a JSON object");
    if (cert.value("schema", 0) != 1) throw DomainError("unsupported certificate schema");
    std::vector<GroupSpec> groups;
    std::vector<std::vector<mpz_class>> primes;
    try {
        for (const auto& g : cert.at("groups")) groups.push_back(parse_group(g.get<std::string>()));
        for (const auto& step : cert.at("primes")) {
            std::vector<mpz_class> ps;
            for (const auto& p : step) ps.push_back(mpz_from_json(p));
            primes.push_back(std::move(ps));
        }
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed certificate: ") + e.what());
    }
    TowerSpec spec = tower_from_primes(groups, primes);
    CertificateCheck out;
    out.report = verify_tower(spec);
    json again = tower_certificate(spec, out.report);
    out.reproduced = again == cert;
    if (!out.reproduced) {
        json diff = json::diff(cert, again);
        out.mismatch = diff.empty() ? "certificate differs" : diff.front().value("path", std::string("/"));
    }
    return out;
}

}  // namespace northcott
