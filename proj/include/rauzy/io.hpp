#pragma once

#include <memory>
#include <string>

#include "rauzy/analysis.hpp"
#include "rauzy/evolution.hpp"
#include "rauzy/scheme.hpp"
#include "rauzy/source.hpp"

namespace rauzy {

// Word-source config: key=value lines, '#' comments. Keys:
//   type=purely_morphic|morphic|sturmian_cf|eventually_periodic
//   morphism=<path to .morph file, relative to the config file>
//   digits=<comma-separated positive ints>   (sturmian_cf)
//   digit_rule=cycle|ramp                    (default cycle)
//   swap=0|1                                 (sturmian_cf letter convention)
//   preperiod=<word>, period=<word>          (eventually_periodic)
std::unique_ptr<IWordSource> load_source_config(const std::string& path);
std::unique_ptr<IWordSource> parse_source_config(const std::string& text,
                                                 const std::string& base_dir);

std::string scheme_to_json(const Scheme& s);
Scheme scheme_from_json(const std::string& json_text);

std::string protocol_to_json(const Protocol& p);
Protocol protocol_from_json(const std::string& json_text);

std::string analysis_to_json(const std::string& source_desc, const ComplexityProfile& cp,
                             const RecurrenceProfile& rp, const PeriodicityVerdict& pv,
                             const URVerdict& uv, const BalanceReport& br);

std::string profile_to_csv(const ComplexityProfile& cp);
std::string recurrence_to_csv(const RecurrenceProfile& rp);

std::string validation_to_json(const ValidationReport& rep);

} // namespace rauzy
