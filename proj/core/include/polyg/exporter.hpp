#pragma once

#include <json.hpp>

#include "polyg/bounds.hpp"
#include "polyg/engine.hpp"
#include "polyg/interp.hpp"

namespace polyg {

/// Layered DAG rendering; boundary ports appear as plain points.
std::string diagram_dot(const Signature& sig, const Diagram& d, const std::string& name);

nlohmann::json diagram_json(const Signature& sig, const Diagram& d);

/// Rules of a program (computation ones, or all with `include_structure`).
std::string program_dot(const Program& p, const std::string& only_rule = "",
                        bool include_structure = false);
nlohmann::json program_json(const Program& p, const std::string& only_rule = "",
                            bool include_structure = false);

nlohmann::json trace_json(const Program& p, const Trace& t);
nlohmann::json check_json(const Program& p, const SimpleReport& rep);
nlohmann::json bounds_json(const Program& p, const Interpretation& it, CellId fn,
                           const BoundReport& rep);

}  // namespace polyg
