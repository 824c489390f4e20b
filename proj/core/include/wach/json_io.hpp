#pragma once

#include <json.hpp>

#include "wach/characters.hpp"
#include "wach/families.hpp"
#include "wach/filtered_phi.hpp"
#include "wach/gamma_solver.hpp"
#include "wach/reduction.hpp"

namespace wach {

using ojson = nlohmann::ordered_json;

ojson to_json(const PiSeries& s);
PiSeries pi_series_from_json(const ojson& j, const PrecisionBudget& bud);

ojson to_json(const TauSeries& t);
ojson to_json(const CrystChar& x);
ojson to_json(const FundCharExp& e);
ojson to_json(const ReductionResult& r);
ojson to_json(const AdmissibilityDetail& d);
ojson to_json(const ClassificationVerdict& v);
ojson to_json(const FiltMod2& D);
FiltMod2 filtmod_from_json(const ojson& j, const PrecisionBudget& bud);
ojson to_json(const VerifyReport& r);
ojson to_json(const DoubledDiag& d);

}  // namespace wach
