#ifndef COFIL_SERIALIZE_HPP
#define COFIL_SERIALIZE_HPP

#include <nlohmann/json_fwd.hpp>

#include "cofil/coalgebra.hpp"
#include "cofil/comodule.hpp"
#include "cofil/frobkernel.hpp"
#include "cofil/growth.hpp"

// JSON text forms of every externally visible structure.  All emitters are
// deterministic: term maps and entry lists are kept sorted, so identical
// inputs produce byte-identical output.
namespace cofil {

nlohmann::json model_to_json(const FilteredHopfModel& model);
ModelPtr model_from_json(const nlohmann::json& j);

nlohmann::json element_to_json(const FilteredHopfModel& model, const HopfElement& f);
HopfElement element_from_json(const FilteredHopfModel& model, const nlohmann::json& j);

nlohmann::json coalgebra_to_json(const FiniteCoalgebra& c);

nlohmann::json comodule_to_json(const Comodule& m);
Comodule comodule_from_json(const nlohmann::json& j);

nlohmann::json operator_module_to_json(const GaOperatorModule& m);
GaOperatorModule operator_module_from_json(const nlohmann::json& j);

nlohmann::json growth_profile_to_json(const GrowthProfile& p);
std::string growth_profile_to_csv(const GrowthProfile& p);

nlohmann::json support_report_to_json(const SupportReport& r);
nlohmann::json injectivity_verdict_to_json(const InjectivityVerdict& v);
nlohmann::json hom_probe_to_json(const HomProbeReport& r);

}  // namespace cofil

#endif
