#pragma once

// JSON forms of the reports. Field names are stable; exact rationals are
// written as "num/den" strings next to their double values.

#include "hypo/analysis.hpp"
#include "hypo/classifier.hpp"
#include "hypo/counterexamples.hpp"
#include "hypo/diophantine.hpp"
#include "hypo/modesolver.hpp"
#include "hypo/torusfn.hpp"

#include <json.hpp>

namespace hypo {

nlohmann::json complex_json(Complex z);
nlohmann::json to_json(const SignCertificate& cert);
nlohmann::json to_json(const DiophantineReport& report);
nlohmann::json to_json(const ArithmeticInput& input);
nlohmann::json to_json(const ReducedTest& test);
nlohmann::json to_json(const Verdict& verdict);
nlohmann::json to_json(const Lemma36Report& report);
nlohmann::json to_json(const LiouvilleReport& report);
nlohmann::json to_json(const DecayProfile& profile);
nlohmann::json to_json(const CheckResult& check);
/// Internals and checks; the coefficient fields are dumped separately.
nlohmann::json to_json(const CounterexampleReport& report);
nlohmann::json to_json(const VerifySummary& summary);
nlohmann::json to_json(const ModeDiagnostic& diagnostic);

}  // namespace hypo
