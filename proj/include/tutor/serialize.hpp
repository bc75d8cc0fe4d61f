#pragma once

// JSON forms of engine values, used by snapshots, event payloads and the
// HTTP API. Field order is fixed so dumps are byte-stable.

#include "tutor/assessment.hpp"
#include "tutor/event.hpp"
#include "tutor/learner.hpp"
#include "tutor/session.hpp"

namespace tutor {

Json to_json(const StyleProfile& p);
StyleProfile style_profile_from_json(const Json& j);

Json to_json(const ConceptRecord& r);
Json to_json(const LearnerModel& m);
LearnerModel learner_model_from_json(const Json& j);

Json to_json(const TestPlan& p);
TestPlan test_plan_from_json(const Json& j);

Json to_json(const Session& s);
Session session_from_json(const Json& j);

Json to_json(const Prompt& p);
Json to_json(const AssessmentOutcome& o);

}  // namespace tutor
