#pragma once

#include <json.hpp>

#include "nabla_kit/core_numerics.hpp"
#include "nabla_kit/differences.hpp"
#include "nabla_kit/families.hpp"
#include "nabla_kit/identities.hpp"
#include "nabla_kit/means.hpp"
#include "nabla_kit/positivity.hpp"

namespace nabla_kit {

using json = nlohmann::json;

void to_json(json& j, const TolerancePolicy& t);
void from_json(const json& j, TolerancePolicy& t);
void to_json(json& j, const QuadratureScheme& s);
void from_json(const json& j, QuadratureScheme& s);
void to_json(json& j, const Matrix& m);
void from_json(const json& j, Matrix& m);
void to_json(json& j, const IdentityReport& r);
void from_json(const json& j, IdentityReport& r);
void to_json(json& j, const Condition& c);
void from_json(const json& j, Condition& c);
void to_json(json& j, const Certificate& c);
void from_json(const json& j, Certificate& c);
void to_json(json& j, const PsdReport& r);
void to_json(json& j, const WindowValue& w);
void to_json(json& j, const ConvexityVerdict& v);
void to_json(json& j, const CmVerdict& v);
void to_json(json& j, const MonotonicityClaim& c);
void to_json(json& j, const BracketResult& r);
void to_json(json& j, const PowerMeanResult& r);
void to_json(json& j, const GramResult& r);
void to_json(json& j, const LyapunovResult& r);
void to_json(json& j, const StressResult& r);

}  // namespace nabla_kit
