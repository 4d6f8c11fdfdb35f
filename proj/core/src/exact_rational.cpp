#include "curlspec/exact_rational.hpp"

#include <stdexcept>

#include <json.hpp>

#include "curlspec/bessel.hpp"

namespace curlspec::exact {

BigRational pi_lower_bound() { return BigRational(157, 50); }

std::vector<Hypothesis> NegativityCertificate::hypotheses() const {
  return {
      {"r_at_least_two_fifths", "1 - s^2/(157/50)^2 - (2/5)^2 > 0", r_lower_check.sign() > 0},
      {"partial_sum_j0_negative", "sum_{m<=M} (-1)^m/(m!m!) (s/2)^(2m) < 0", sum_j0.sign() < 0},
      {"partial_sum_j2_positive", "sum_{m<=M} (-1)^m/(m!(m+2)!) (s/2)^(2m+2) > 0", sum_j2.sign() > 0},
      {"combined_bound_negative", "7/5 sum_j0 + 3/5 sum_j2 + 36 (3/4)^(M+1)/(M+1)! < 0",
       combined.sign() < 0},
  };
}

NegativityCertificate certify_negativity(const BigRational& s, int terms) {
  if (s.sign() <= 0 || s > BigRational(3)) throw std::invalid_argument("certify_negativity: s must lie in (0, 3]");
  if (terms < 1) throw std::invalid_argument("certify_negativity: M must be >= 1");

  NegativityCertificate cert;
  cert.s = s;
  cert.terms = terms;
  const BigRational pi_low = pi_lower_bound();
  const BigRational two_fifths(2, 5);
  cert.r_lower_check = BigRational(1) - (s * s) / (pi_low * pi_low) - two_fifths * two_fifths;
  cert.sum_j0 = bessel::taylor_partial_sum({0, terms, s});
  cert.sum_j2 = bessel::taylor_partial_sum({2, terms, s});
  cert.remainder_term = BigRational(2) * bessel::taylor_remainder_bound(terms);
  cert.combined = BigRational(7, 5) * cert.sum_j0 + BigRational(3, 5) * cert.sum_j2 + cert.remainder_term;

  cert.verdict = true;
  for (const auto& h : cert.hypotheses()) cert.verdict = cert.verdict && h.holds;
  return cert;
}

NegativityCertificate reference_certificate() { return certify_negativity(BigRational(287, 100), 5); }

std::map<std::string, BigRational> reference_golden_values() {
  return {
      {"r_lower_check", BigRational::parse("11291/2464900")},
      {"sum_j0", BigRational::parse("-314127831054337257779422849/1474560000000000000000000000")},
      {"sum_j2", BigRational::parse("170519275716150776952821694135817/353894400000000000000000000000000")},
      {"combined", BigRational::parse("-143509674278087403655101304183/589824000000000000000000000000000")},
  };
}

std::vector<std::pair<std::string, BigRational>> certificate_values(const NegativityCertificate& cert) {
  return {
      {"pi_lower_bound", pi_lower_bound()},
      {"r_lower_check", cert.r_lower_check},
      {"sum_j0", cert.sum_j0},
      {"sum_j2", cert.sum_j2},
      {"remainder_term", cert.remainder_term},
      {"combined", cert.combined},
  };
}

std::string to_json(const NegativityCertificate& cert) {
  nlohmann::ordered_json out;
  out["s"] = cert.s.to_string();
  out["M"] = cert.terms;
  out["pi_lower_bound"] = pi_lower_bound().to_string();
  out["hypotheses"] = nlohmann::ordered_json::array();
  for (const auto& h : cert.hypotheses()) {
    out["hypotheses"].push_back({{"name", h.name}, {"statement", h.statement}, {"holds", h.holds}});
  }
  out["values"] = nlohmann::ordered_json::array();
  for (const auto& [name, value] : certificate_values(cert)) {
    out["values"].push_back(
        {{"name", name}, {"num", value.numerator_string()}, {"den", value.denominator_string()}});
  }
  out["verdict"] = cert.verdict;
  return out.dump(2) + "\n";
}

std::map<std::string, BigRational> parse_golden_values(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("golden file is not valid JSON: ") + e.what());
  }
  if (!doc.contains("values") || !doc["values"].is_array()) {
    throw std::invalid_argument("golden file lacks a \"values\" array");
  }
  std::map<std::string, BigRational> out;
  for (const auto& entry : doc["values"]) {
    if (!entry.contains("name") || !entry.contains("num") || !entry.contains("den")) {
      throw std::invalid_argument("golden entry needs name, num and den");
    }
    const auto num = entry["num"].get<std::string>();
    const auto den = entry["den"].get<std::string>();
    out.emplace(entry["name"].get<std::string>(), BigRational::parse(num + "/" + den));
  }
  return out;
}

std::vector<std::string> golden_mismatches(const NegativityCertificate& cert,
                                           const std::map<std::string, BigRational>& golden) {
  std::map<std::string, BigRational> computed;
  for (auto& [name, value] : certificate_values(cert)) computed.emplace(name, value);
  std::vector<std::string> bad;
  for (const auto& [name, expected] : golden) {
    const auto it = computed.find(name);
    if (it == computed.end() || !(it->second == expected)) bad.push_back(name);
  }
  return bad;
}

bool factorial_lower_bound_holds(int max_m) {
  BigInteger fact = 2;   // 2!
  BigInteger three = 9;  // 3^2
  for (int m = 2; m <= max_m; ++m) {
    if (m > 2) {
      fact *= m;
      three *= 3;
    }
    // m! >= (2/9) 3^m  <=>  9 m! >= 2 * 3^m
    if (9 * fact < 2 * three) return false;
  }
  return true;
}

}  // namespace curlspec::exact
