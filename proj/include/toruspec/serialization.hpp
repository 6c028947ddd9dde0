#ifndef TORUSPEC_SERIALIZATION_HPP
#define TORUSPEC_SERIALIZATION_HPP

#include "toruspec/classifier.hpp"
#include "toruspec/decay.hpp"
#include "toruspec/diophantine.hpp"
#include "toruspec/mode_solver.hpp"
#include "toruspec/system.hpp"

#include <json.hpp>

#include <string>

namespace toruspec {

using Json = nlohmann::ordered_json;

// --- exact values -----------------------------------------------------------
Json to_json(const ExactReal& a);
ExactReal exact_real_from_json(const Json& j);

// --- systems ----------------------------------------------------------------
Json to_json(const SystemSpec& sys);
SystemSpec system_from_json(const Json& j);
SystemSpec load_system(const std::string& path);

// --- fields -----------------------------------------------------------------
Json to_json(const PartialFourierField& u);
PartialFourierField field_from_json(const Json& j);
PartialFourierField load_field(const std::string& path);

// --- witnesses and verdicts -------------------------------------------------
Json to_json(const WitnessSequence& w);
WitnessSequence witness_from_json(const Json& j);
Json to_json(const ScanTable& t);
Json to_json(const SaVerdict& v);
Json to_json(const GsVerdict& v);
Json to_json(const DecayReport& r);
Json to_json(const FiniteTypeReport& r);
Json to_json(const Verdict& v);
Json to_json(const ClassifyResult& r);
Json to_json(const SolveReport& r);

// --- CSV --------------------------------------------------------------------
/// Columns: xi, m_xi_num, m_xi_den (certified upper enclosure for irrational
/// tags, exact value for rational ones).
std::string scan_table_csv(const ScanTable& t);

/// Columns: band, sup, fit (the fitted line evaluated at the band).
std::string decay_csv(const DecayReport& r);

/// Grid dump of one slice: t coordinates, re, im.
std::string grid_dump_csv(const PartialFourierField& u, std::int64_t xi);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace toruspec

#endif
